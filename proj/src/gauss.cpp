// Copyright 2026 The sk1 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sk1/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iterator>
#include <limits>
#include <sstream>

#include "sk1/errors.hpp"

namespace sk1 {

namespace {

// Coefficients of one pivoted elimination, in a fixed slot layout: stage k
// contributes n-1-k row coefficients and n-1-k column coefficients.
template <class T>
struct Elim {
  std::vector<std::size_t> pivots;
  std::vector<T> row_coefs;
  std::vector<T> col_coefs;
  std::vector<T> diag;
};

double magnitude(double v) { return std::fabs(v); }
Scalar magnitude(const Scalar& s) { return s.abs(); }
bool is_zero(double v) { return v == 0.0; }
bool is_zero(const Scalar& s) { return s.is_zero(); }

// Left-multiplies by c(p,k) when p != k, clears column k below the pivot with
// row operations, then row k to the right with column operations.
template <class T>
void apply_stage(SquareMatrix<T>& x, std::size_t k, std::size_t p, Elim<T>& e) {
  const std::size_t n = x.n();
  if (p != k)
    for (std::size_t j = 0; j < n; ++j) {
      T rk = x(k, j);
      x(k, j) = -x(p, j);
      x(p, j) = std::move(rk);
    }
  e.pivots.push_back(p);
  const T u = x(k, k);
  const T zero = u - u;
  e.diag.push_back(u);
  for (std::size_t i = k + 1; i < n; ++i) {
    T c = -(x(i, k) / u);
    if (!is_zero(c))
      for (std::size_t j = k + 1; j < n; ++j) x(i, j) = x(i, j) + c * x(k, j);
    x(i, k) = zero;
    e.row_coefs.push_back(std::move(c));
  }
  for (std::size_t j = k + 1; j < n; ++j) {
    e.col_coefs.push_back(-(x(k, j) / u));
    x(k, j) = zero;
  }
}

template <class T>
std::size_t max_pivot_row(const SquareMatrix<T>& x, std::size_t k) {
  std::size_t best = k;
  for (std::size_t i = k + 1; i < x.n(); ++i)
    if (magnitude(x(best, k)) < magnitude(x(i, k))) best = i;
  return best;
}

SquareMatrix<double> to_square(std::span<const double> a, std::size_t n) {
  SquareMatrix<double> x(n);
  std::copy(a.begin(), a.end(), x.data().begin());
  return x;
}

// Coefficient providers for assembly: nullopt marks a slot that is zero everywhere.
struct SlotSource {
  std::function<std::optional<RingElement>(std::size_t)> row;
  std::function<std::optional<RingElement>(std::size_t)> col;
  // (P_k, 1/P_k) or nullopt when P_k is identically one.
  std::function<std::optional<std::pair<RingElement, RingElement>>(std::size_t)> diag;
};

// X = L_1^-1 ... L_m^-1 * diag(u) * Cols^-1.
FactorList assemble(std::size_t n, const RingTag& ring, const std::vector<std::size_t>& pivots, const SlotSource& src) {
  FactorList out(n, ring);
  FactorList cols(n, ring);
  std::size_t slot = 0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (pivots[k] != k) out.append(factor_c(static_cast<int>(k + 1), static_cast<int>(pivots[k] + 1), n, ring));
    for (std::size_t i = k + 1; i < n; ++i, ++slot)
      if (auto c = src.row(slot)) out.push(static_cast<int>(i + 1), static_cast<int>(k + 1), -*c);
  }
  for (std::size_t k = 0; k + 1 < n; ++k)
    if (auto d = src.diag(k))
      out.append(factor_m(static_cast<int>(k + 1), static_cast<int>(k + 2), d->first, d->second, n).promoted(ring));
  slot = 0;
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t j = k + 1; j < n; ++j, ++slot)
      if (auto c = src.col(slot)) cols.push(static_cast<int>(k + 1), static_cast<int>(j + 1), *c);
  out.append(invert(cols));
  return out;
}

}  // namespace

FactorList factor_pointwise(const SLMatrix& a) {
  const std::size_t n = a.n();
  RingTag tag = a.tag();
  if (tag.kind != Kind::Scalar) throw ContractError("factor_pointwise needs scalar entries");
  if (!a.det_checked()) check_determinant_one(a.entries(), 1e-9);
  SquareMatrix<Scalar> x(n);
  for (std::size_t k = 0; k < x.data().size(); ++k) x.data()[k] = promote(a.entries().data()[k], tag).scalar();

  Elim<Scalar> e;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t p = max_pivot_row(x, k);
    if (x(p, k).is_zero()) throw ContractError("singular matrix: no nonzero pivot at stage " + std::to_string(k + 1));
    apply_stage(x, k, p, e);
  }
  if (n > 0) e.diag.push_back(x(n - 1, n - 1));

  std::vector<Scalar> prefix;
  Scalar acc = Scalar::one(tag.backend);
  for (std::size_t k = 0; k + 1 < n; ++k) prefix.push_back(acc = acc * e.diag[k]);
  auto nonzero = [](const Scalar& s) -> std::optional<RingElement> {
    if (s.is_zero()) return std::nullopt;
    return RingElement(s);
  };
  SlotSource src{
      [&](std::size_t s) { return nonzero(e.row_coefs[s]); },
      [&](std::size_t s) { return nonzero(e.col_coefs[s]); },
      [&](std::size_t k) -> std::optional<std::pair<RingElement, RingElement>> {
        if (prefix[k].is_one()) return std::nullopt;
        return std::make_pair(RingElement(prefix[k]), RingElement(prefix[k].inverse()));
      }};
  return assemble(n, tag, e.pivots, src);
}

std::optional<std::vector<int>> greedy_pivot_sequence(std::span<const double> a, std::size_t n, double pivot_floor) {
  SquareMatrix<double> x = to_square(a, n);
  Elim<double> e;
  std::vector<int> seq;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t p = max_pivot_row(x, k);
    if (!(std::fabs(x(p, k)) >= pivot_floor)) return std::nullopt;
    seq.push_back(static_cast<int>(p + 1));
    apply_stage(x, k, p, e);
  }
  return seq;
}

double min_pivot_for(std::span<const double> a, std::size_t n, const std::vector<int>& sequence) {
  SquareMatrix<double> x = to_square(a, n);
  Elim<double> e;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const auto p = static_cast<std::size_t>(sequence.at(k) - 1);
    const double u = std::fabs(x(p, k));
    best = std::min(best, u);
    if (u == 0.0) return 0.0;
    apply_stage(x, k, p, e);
  }
  return best;
}

PatchFactorization factor_patch(const SLMatrix& a, const GridSubset& patch, double pivot_floor,
                                const std::vector<int>& sequence) {
  const std::size_t n = a.n();
  const DomainPtr dom = patch.domain();
  if (!dom) throw ContractError("factor_patch: patch has no domain");
  const DomainPtr own = matrix_domain(a.entries());
  if (own && !same_domain(own, dom)) throw ContractError("factor_patch: matrix and patch live on different domains");
  if (!(pivot_floor > 0.0)) throw ContractError("factor_patch: pivot floor must be positive");
  if (!sequence.empty() && sequence.size() + 1 != std::max<std::size_t>(n, 1))
    throw ContractError("factor_patch: pivot sequence has the wrong length");

  std::vector<std::size_t> pts;
  for (auto p : patch.points())
    if (dom->active(p)) pts.push_back(p);
  if (pts.empty()) throw ContractError("factor_patch: empty patch");

  const MatrixField field = sample(a.entries(), dom);
  std::vector<SquareMatrix<double>> xs;
  xs.reserve(pts.size());
  for (auto p : pts) xs.push_back(to_square(field.at(p), n));
  std::vector<Elim<double>> elims(pts.size());

  PatchFactorization out{patch, {}, FactorList(n, RingTag::grid(dom)), pivot_floor};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t row = k;
    if (!sequence.empty()) {
      const int r = sequence[k];
      if (r < static_cast<int>(k + 1) || r > static_cast<int>(n))
        throw ContractError("factor_patch: pivot row " + std::to_string(r) + " invalid at stage " + std::to_string(k + 1));
      row = static_cast<std::size_t>(r - 1);
    } else {
      double best = -1.0;
      for (std::size_t r = k; r < n; ++r) {
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& x : xs) worst = std::min(worst, std::fabs(x(r, k)));
        if (worst > best) {
          best = worst;
          row = r;
        }
      }
    }
    for (std::size_t q = 0; q < pts.size(); ++q) {
      const double u = std::fabs(xs[q](row, k));
      if (!(u >= pivot_floor)) {
        std::ostringstream os;
        os << "no pivot above floor " << pivot_floor << " at stage " << (k + 1) << " (row " << (row + 1)
           << ", |pivot| = " << u << ") at " << dom->describe_point(pts[q]);
        throw ContractError(os.str());
      }
    }
    for (std::size_t q = 0; q < pts.size(); ++q) apply_stage(xs[q], k, row, elims[q]);
    out.pivot_sequence.push_back(static_cast<int>(row + 1));
  }

  auto gather = [&](auto pick, double outside) -> std::optional<RingElement> {
    std::vector<double> v(dom->size(), outside);
    bool any = false;
    for (std::size_t q = 0; q < pts.size(); ++q) {
      v[pts[q]] = pick(q);
      any = any || v[pts[q]] != outside;
    }
    if (!any) return std::nullopt;
    return RingElement(GridFunction(dom, std::move(v)));
  };
  std::vector<std::vector<double>> prefix(pts.size());
  for (std::size_t q = 0; q < pts.size(); ++q) {
    double acc = 1.0;
    for (std::size_t k = 0; k + 1 < n; ++k) prefix[q].push_back(acc *= elims[q].diag[k]);
  }
  SlotSource src{
      [&](std::size_t s) { return gather([&](std::size_t q) { return elims[q].row_coefs[s]; }, 0.0); },
      [&](std::size_t s) { return gather([&](std::size_t q) { return elims[q].col_coefs[s]; }, 0.0); },
      [&](std::size_t k) -> std::optional<std::pair<RingElement, RingElement>> {
        auto r = gather([&](std::size_t q) { return prefix[q][k]; }, 1.0);
        if (!r) return std::nullopt;
        auto r_inv = gather([&](std::size_t q) { return 1.0 / prefix[q][k]; }, 1.0);
        return std::make_pair(*r, *r_inv);
      }};
  std::vector<std::size_t> pivots;
  for (int r : out.pivot_sequence) pivots.push_back(static_cast<std::size_t>(r - 1));
  out.factors = assemble(n, RingTag::grid(dom), pivots, src);
  return out;
}

std::vector<PatchFactorization> build_patch_cover(const SLMatrix& h, const CoverOptions& opts, DomainPtr domain) {
  const std::size_t n = h.n();
  const DomainPtr own = matrix_domain(h.entries());
  if (!domain) domain = own;
  if (!domain) throw ContractError("build_patch_cover: a domain is required for a constant matrix");
  if (own && !same_domain(own, domain)) throw ContractError("build_patch_cover: matrix and domain differ");
  if (!h.det_checked()) check_determinant_one(h.entries(), 1e-9);

  const MatrixField field = sample(h.entries(), domain);
  std::vector<std::pair<std::vector<int>, GridSubset>> groups;
  for (auto p : domain->active_points()) {
    auto seq = greedy_pivot_sequence(field.at(p), n, opts.pivot_floor);
    if (!seq) {
      std::ostringstream os;
      os << "no pivot sequence stays above floor " << opts.pivot_floor << " at " << domain->describe_point(p);
      throw ContractError(os.str());
    }
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == *seq; });
    if (it == groups.end()) {
      groups.emplace_back(*seq, GridSubset(domain));
      it = std::prev(groups.end());
    }
    it->second.insert(p);
  }

  std::vector<PatchFactorization> out;
  out.reserve(groups.size());
  for (auto& [seq, members] : groups) {
    GridSubset patch = members;
    if (opts.dilation > 0) {
      const GridSubset grown = members.dilate(opts.dilation);
      for (auto q : grown.points())
        if (!members.contains(q) && min_pivot_for(field.at(q), n, seq) >= opts.pivot_floor) patch.insert(q);
    }
    out.push_back(factor_patch(h, patch, opts.pivot_floor, seq));
  }
  return out;
}

}  // namespace sk1
