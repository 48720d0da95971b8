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

#include "sk1/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "sk1/errors.hpp"
#include "sk1/ring.hpp"

namespace sk1 {

namespace {

std::vector<double> values_on(const RingElement& e, const Domain& d) { return e.sample(d); }

void require_on(const RingElement& e, const DomainPtr& d, const char* what) {
  if (e.kind() != Kind::Scalar && !same_domain(e.domain(), d))
    throw ContractError(std::string(what) + " does not live on the expected domain");
}

// Time values -> t-grid indices; values must lie in [0,1].
std::vector<int> snap_times(const RingElement& f, const DomainPtr& base, int t_res, const char* what) {
  require_on(f, base, what);
  const auto v = values_on(f, *base);
  std::vector<int> idx(base->size(), 0);
  const double last = t_res - 1;
  for (auto x : base->active_points()) {
    if (!(v[x] >= -1e-12 && v[x] <= 1.0 + 1e-12)) {
      std::ostringstream os;
      os << what << " takes the value " << v[x] << " outside [0,1] at " << base->describe_point(x);
      throw ContractError(os.str());
    }
    idx[x] = static_cast<int>(std::lround(std::clamp(v[x], 0.0, 1.0) * last));
  }
  return idx;
}

GridFunction times_of(const DomainPtr& base, const std::vector<int>& idx, int t_res) {
  std::vector<double> v(base->size(), 0.0);
  for (auto x : base->active_points()) v[x] = static_cast<double>(idx[x]) / static_cast<double>(t_res - 1);
  return GridFunction(base, std::move(v));
}

// a(x, s) for fractional t-index s, linear between grid slices.
double read_time(const std::vector<double>& a, std::size_t x, double s, int t_res) {
  const std::size_t row = x * static_cast<std::size_t>(t_res);
  const double r = std::round(s);
  if (std::fabs(s - r) < 1e-9) return a[row + static_cast<std::size_t>(r)];
  const auto k0 = static_cast<std::size_t>(std::floor(s));
  if (k0 + 1 >= static_cast<std::size_t>(t_res)) return a[row + static_cast<std::size_t>(t_res - 1)];
  const double w = s - static_cast<double>(k0);
  return (1.0 - w) * a[row + k0] + w * a[row + k0 + 1];
}

std::vector<std::vector<double>> sampled_coefficients(const FactorList& fl, const Domain& d) {
  std::vector<std::vector<double>> out;
  out.reserve(fl.size());
  for (const auto& f : fl.factors()) out.push_back(f.r.sample(d));
  return out;
}

FactorList with_coefficients(const FactorList& like, const DomainPtr& d, std::vector<std::vector<double>> coef) {
  FactorList out(like.n(), RingTag::grid(d));
  for (std::size_t k = 0; k < like.size(); ++k)
    out.push(like.factors()[k].i, like.factors()[k].j, GridFunction(d, std::move(coef[k])));
  return out;
}

void check_same_cover_domain(const std::vector<GridSubset>& cover) {
  if (cover.empty()) throw ContractError("slice_cover: empty cover");
  for (const auto& c : cover)
    if (!same_domain(c.domain(), cover.front().domain())) throw ContractError("slice_cover: cover sets on different domains");
}

// One column's membership table: in[j][t].
struct Column {
  std::vector<std::vector<bool>> in;
  int t_res;

  int run_end(std::size_t j, int from) const {
    int e = from;
    while (e + 1 < t_res && in[j][static_cast<std::size_t>(e + 1)]) ++e;
    return e;
  }
  int run_start(std::size_t j, int at) const {
    int s = at;
    while (s > 0 && in[j][static_cast<std::size_t>(s - 1)]) --s;
    return s;
  }
  bool has(std::size_t j, int t) const { return in[j][static_cast<std::size_t>(t)]; }
};

// Breakpoint indices for a fixed chain of sets, or nullopt if no choice of
// breakpoints keeps every slab inside its set in this column. Each breakpoint
// is the middle of its feasible range.
std::optional<std::vector<int>> chain_breakpoints(const Column& col, const std::vector<std::size_t>& chain) {
  const std::size_t r = chain.size();
  const int t_res = col.t_res;
  // ok[k][t]: some valid b_0..b_k ends with b_k = t.
  std::vector<std::vector<bool>> ok(r + 1, std::vector<bool>(static_cast<std::size_t>(t_res), false));
  ok[0][0] = true;
  for (std::size_t k = 1; k <= r; ++k) {
    const std::size_t j = chain[k - 1];
    bool open = false;
    for (int t = 0; t < t_res; ++t) {
      if (!col.has(j, t)) {
        open = false;
        continue;
      }
      open = open || ok[k - 1][static_cast<std::size_t>(t)];
      if (open && (k == r || col.has(chain[k], t))) ok[k][static_cast<std::size_t>(t)] = true;
    }
  }
  if (!ok[r][static_cast<std::size_t>(t_res - 1)]) return std::nullopt;

  std::vector<int> b(r + 1, 0);
  b[r] = t_res - 1;
  for (std::size_t k = r - 1; k >= 1; --k) {
    // Candidates c with ok[k][c] and [c, b[k+1]] inside chain[k].
    const std::size_t j = chain[k];
    std::vector<int> cand;
    for (int c = b[k + 1]; c >= 0 && col.has(j, c); --c)
      if (ok[k][static_cast<std::size_t>(c)]) cand.push_back(c);
    b[k] = cand[(cand.size() - 1) / 2];
  }
  return b;
}

// Greedy chain: at each step the set reaching furthest in t.
std::vector<std::size_t> greedy_chain(const Column& col, const Domain& base, std::size_t x) {
  const std::size_t sets = col.in.size();
  std::vector<std::size_t> chain;
  int best_e = -1;
  std::size_t best = 0;
  for (std::size_t j = 0; j < sets; ++j)
    if (col.has(j, 0) && col.run_end(j, 0) > best_e) {
      best_e = col.run_end(j, 0);
      best = j;
    }
  if (best_e < 0) throw ContractError("slice_cover: no cover set contains t = 0 at " + base.describe_point(x));
  chain.push_back(best);
  int e = best_e;
  while (e < col.t_res - 1) {
    int next_e = e;
    std::size_t next = sets;
    for (std::size_t j = 0; j < sets; ++j)
      if (j != chain.back() && col.has(j, e) && col.run_end(j, e) > next_e) {
        next_e = col.run_end(j, e);
        next = j;
      }
    if (next == sets) {
      std::ostringstream os;
      os << "slice_cover: no cover set overlaps the current slab beyond t index " << e << " at "
         << base.describe_point(x);
      throw ContractError(os.str());
    }
    chain.push_back(next);
    e = next_e;
  }
  return chain;
}

std::vector<std::size_t> nearest_in(const Domain& d, const GridSubset& w) {
  const auto targets = w.points();
  std::vector<std::size_t> near(d.size(), 0);
  for (auto x : d.active_points()) {
    if (w.contains(x)) {
      near[x] = x;
      continue;
    }
    double best = std::numeric_limits<double>::infinity();
    for (auto y : targets) {
      double s = 0.0;
      for (std::size_t k = 0; k < d.dims(); ++k) {
        const double diff = d.coord(x, k) - d.coord(y, k);
        s += diff * diff;
      }
      if (s < best) {
        best = s;
        near[x] = y;
      }
    }
  }
  return near;
}

}  // namespace

// ---- HomotopyMatrix -----------------------------------------------------------

HomotopyMatrix HomotopyMatrix::make(RingMatrix h, DomainPtr base, int t_res, double tol_det) {
  if (!base) throw ContractError("homotopy needs a base domain");
  if (t_res < 2) throw ContractError("homotopy needs at least two time samples");
  DomainPtr product = base->with_time(t_res);
  for (const auto& e : h.data()) require_on(e, product, "homotopy entry");
  MatrixField field = sample(h, product);
  SLMatrix sl = SLMatrix::checked(std::move(h), tol_det);
  return HomotopyMatrix(std::move(sl), std::move(base), std::move(product), t_res, std::move(field));
}

RingMatrix HomotopyMatrix::slice(int k) const {
  const std::size_t n = h_.n();
  RingMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const RingElement& e = h_(i, j);
      if (e.kind() == Kind::Scalar) {
        out(i, j) = e;
        continue;
      }
      std::vector<double> v(base_->size(), 0.0);
      for (auto x : base_->active_points()) v[x] = field_.at(index(x, k))[i * n + j];
      out(i, j) = GridFunction(base_, std::move(v));
    }
  return out;
}

// ---- slicing ------------------------------------------------------------------

SlicedCover slice_cover(const std::vector<GridSubset>& cover) {
  check_same_cover_domain(cover);
  SlicedCover out;
  out.product = cover.front().domain();
  out.base = out.product->without_time();
  out.t_res = out.product->resolution().back();
  const auto& base = *out.base;
  const int t_res = out.t_res;

  for (auto p : out.product->active_points())
    if (std::none_of(cover.begin(), cover.end(), [&](const GridSubset& c) { return c.contains(p); }))
      throw ContractError("slice_cover: cover misses " + out.product->describe_point(p));

  std::vector<Column> columns(base.size());
  for (auto x : base.active_points()) {
    Column& col = columns[x];
    col.t_res = t_res;
    col.in.assign(cover.size(), std::vector<bool>(static_cast<std::size_t>(t_res)));
    for (std::size_t j = 0; j < cover.size(); ++j)
      for (int t = 0; t < t_res; ++t)
        col.in[j][static_cast<std::size_t>(t)] = cover[j].contains(x * static_cast<std::size_t>(t_res) + static_cast<std::size_t>(t));
  }

  std::vector<std::vector<std::size_t>> chains;
  for (auto x : base.active_points()) {
    auto chain = greedy_chain(columns[x], base, x);
    if (std::find(chains.begin(), chains.end(), chain) == chains.end()) chains.push_back(std::move(chain));
  }

  std::vector<SlicedPatch> candidates;
  for (const auto& chain : chains) {
    SlicedPatch sp;
    sp.u = GridSubset(out.base);
    sp.cover_sets = chain;
    const std::size_t r = chain.size();
    sp.breakpoint_index.assign(r + 1, std::vector<int>(base.size(), 0));
    for (auto x : base.active_points()) sp.breakpoint_index[r][x] = t_res - 1;
    for (auto x : base.active_points()) {
      auto b = chain_breakpoints(columns[x], chain);
      if (!b) continue;
      sp.u.insert(x);
      for (std::size_t k = 0; k <= r; ++k) sp.breakpoint_index[k][x] = (*b)[k];
    }
    for (std::size_t k = 0; k <= r; ++k) sp.breakpoints.push_back(times_of(out.base, sp.breakpoint_index[k], t_res));
    candidates.push_back(std::move(sp));
  }

  // Keep enough chains that every column lies two grid steps inside one of
  // them; the certificate shrinks the patches twice.
  std::vector<GridSubset> deep;
  for (const auto& c : candidates) deep.push_back(c.u.interior().interior());
  std::vector<bool> keep(candidates.size(), false);
  GridSubset reached(out.base);
  for (auto x : base.active_points()) {
    if (reached.contains(x)) continue;
    std::size_t pick = candidates.size();
    for (std::size_t c = 0; c < candidates.size() && pick == candidates.size(); ++c)
      if (deep[c].contains(x)) pick = c;
    if (pick == candidates.size())
      throw ContractError("slice_cover: no chain of cover sets is valid on a two-step neighbourhood of " +
                          base.describe_point(x) + "; refine the grid or grow the cover");
    keep[pick] = true;
    reached = reached.unite(deep[pick]);
  }
  for (std::size_t c = 0; c < candidates.size(); ++c)
    if (keep[c]) out.patches.push_back(std::move(candidates[c]));
  return out;
}

RingElement clamp_coefficients(const RingElement& a, const RingElement& lo, const RingElement& hi) {
  if (a.kind() == Kind::Scalar) return a;
  const DomainPtr product = a.domain();
  const DomainPtr base = product->without_time();
  require_on(lo, base, "lower clamp");
  require_on(hi, base, "upper clamp");
  const int t_res = product->resolution().back();
  const auto av = a.sample(*product);
  const auto lv = lo.sample(*base), hv = hi.sample(*base);
  std::vector<double> out(product->size(), 0.0);
  const double last = t_res - 1;
  for (auto x : base->active_points()) {
    if (lv[x] > hv[x] || lv[x] < 0.0 || hv[x] > 1.0) {
      std::ostringstream os;
      os << "clamp bounds [" << lv[x] << ", " << hv[x] << "] invalid at " << base->describe_point(x);
      throw ContractError(os.str());
    }
    for (int k = 0; k < t_res; ++k) {
      const double t = std::clamp(static_cast<double>(k) / last, lv[x], hv[x]);
      out[x * static_cast<std::size_t>(t_res) + static_cast<std::size_t>(k)] = read_time(av, x, t * last, t_res);
    }
  }
  return GridFunction(product, std::move(out));
}

// ---- Claim 1 ------------------------------------------------------------------

FactorList glue_patch(const HomotopyMatrix& h, const SlicedPatch& patch, const std::vector<FactorList>& slab_lists,
                      double tol) {
  const std::size_t r = patch.slabs();
  if (r == 0 || slab_lists.size() != r) throw ContractError("glue_patch: one factor list per slab is required");
  const DomainPtr& base = h.base();
  const DomainPtr& prod = h.product();
  const int t_res = h.t_res();
  const std::size_t n = h.n();

  for (std::size_t k = 0; k < r; ++k) {
    if (slab_lists[k].n() != n) throw ContractError("glue_patch: slab list of the wrong size");
    const MatrixField pf = product_field(slab_lists[k], prod);
    for (auto x : patch.u.points())
      for (int idx : {patch.breakpoint_index[k][x], patch.breakpoint_index[k + 1][x]}) {
        const std::size_t p = h.index(x, idx);
        const double diff = dense::max_abs_diff(pf.at(p), h.field().at(p));
        if (!(diff <= tol)) {
          std::ostringstream os;
          os << "glue_patch: slab " << (k + 1) << " factors differ from H by " << diff << " at the slab boundary "
             << prod->describe_point(p);
          throw VerificationError(os.str());
        }
      }
  }

  FactorList out(n, RingTag::grid(prod));
  for (std::size_t k = 0; k < r; ++k) {
    const auto coef = sampled_coefficients(slab_lists[k], *prod);
    const auto& lo = patch.breakpoint_index[k];
    const auto& hi = patch.breakpoint_index[k + 1];
    std::vector<std::vector<double>> clamped(coef.size(), std::vector<double>(prod->size(), 0.0));
    std::vector<std::vector<double>> frozen(coef.size(), std::vector<double>(prod->size(), 0.0));
    for (std::size_t f = 0; f < coef.size(); ++f)
      for (auto x : base->active_points()) {
        const double at_lo = coef[f][h.index(x, lo[x])];
        for (int t = 0; t < t_res; ++t) {
          const int s = std::clamp(t, lo[x], hi[x]);
          clamped[f][h.index(x, t)] = coef[f][h.index(x, s)];
          frozen[f][h.index(x, t)] = at_lo;
        }
      }
    if (k > 0) out.append(invert(with_coefficients(slab_lists[k], prod, std::move(frozen))));
    out.append(with_coefficients(slab_lists[k], prod, std::move(clamped)));
  }
  return out;
}

// ---- Claim 2 ------------------------------------------------------------------

RingElement retraction(const RingElement& phi, const RingElement& eta) {
  DomainPtr d = phi.kind() != Kind::Scalar ? phi.domain() : eta.domain();
  auto check = [](double v, const std::string& what) {
    if (!(v >= 0.0 && v <= 1.0)) {
      std::ostringstream os;
      os << "retraction: " << what << " value " << v << " outside [0,1]";
      throw ContractError(os.str());
    }
  };
  if (!d) {
    const double a = phi.scalar().to_double(), b = eta.scalar().to_double();
    check(a, "phi");
    check(b, "eta");
    return RingElement::real(std::max(a, b));
  }
  require_on(phi, d, "phi");
  require_on(eta, d, "eta");
  const auto pv = phi.sample(*d), ev = eta.sample(*d);
  std::vector<double> out(d->size(), 0.0);
  for (auto x : d->active_points()) {
    check(pv[x], "phi at " + d->describe_point(x) + ":");
    check(ev[x], "eta at " + d->describe_point(x) + ":");
    out[x] = std::max(pv[x], ev[x]);
  }
  return GridFunction(d, std::move(out));
}

CommutatorStep commutator_step(const HomotopyMatrix& h, const FactorList& glued, const RingElement& eta,
                               const GridSubset& w, const RingElement& phi, double tol) {
  const DomainPtr& base = h.base();
  const int t_res = h.t_res();
  const std::size_t n = h.n();
  if (!same_domain(w.domain(), base)) throw ContractError("commutator_step: W lives on a different domain");
  const auto eta_idx = snap_times(eta, base, t_res, "eta");
  const auto phi_idx = snap_times(phi, base, t_res, "phi");
  std::vector<int> next_idx(base->size(), 0);
  for (auto x : base->active_points()) next_idx[x] = std::max(eta_idx[x], w.contains(x) ? phi_idx[x] : 0);

  CommutatorStep out{FactorList(n, RingTag::grid(base)), times_of(base, next_idx, t_res), 0.0};
  if (!w.empty()) {
    for (auto x : base->active_points())
      if (!w.contains(x) && phi_idx[x] != 0)
        throw ContractError("commutator_step: phi is nonzero outside W at " + base->describe_point(x));
    const auto coef = sampled_coefficients(glued, *h.product());
    const auto near = nearest_in(*base, w);
    std::vector<std::vector<double>> ext(coef.size(), std::vector<double>(base->size(), 0.0));
    std::vector<std::vector<double>> moved = ext;
    for (std::size_t f = 0; f < coef.size(); ++f)
      for (auto x : base->active_points()) {
        const std::size_t y = near[x];
        ext[f][x] = coef[f][h.index(y, eta_idx[y])];
        moved[f][x] = w.contains(x) ? coef[f][h.index(x, next_idx[x])] : ext[f][x];
      }
    out.g = concat(invert(with_coefficients(glued, base, std::move(ext))), with_coefficients(glued, base, std::move(moved)));
  }

  const MatrixField g = product_field(out.g, base);
  std::vector<double> inv(n * n), want(n * n);
  std::size_t worst = 0;
  for (auto x : base->active_points()) {
    if (!dense::inverse(h.field().at(h.index(x, eta_idx[x])), inv, n))
      throw ContractError("commutator_step: H is singular at " + base->describe_point(x));
    dense::multiply(inv, h.field().at(h.index(x, next_idx[x])), want, n);
    const double r = dense::max_abs_diff(g.at(x), want);
    if (!(r <= out.residual)) {
      out.residual = r;
      worst = x;
    }
  }
  if (!(out.residual <= tol)) {
    std::ostringstream os;
    os << "commutator_step: product(G) differs from H(x,eta)^-1 H(x,eta_next) by " << out.residual << " at "
       << base->describe_point(worst);
    throw VerificationError(os.str());
  }
  return out;
}

// ---- certificates -------------------------------------------------------------

double certificate_residual(const Certificate& c, std::size_t* worst) {
  const std::size_t n = c.a.n();
  if (c.b.n() != n) throw ContractError("certificate: A and B differ in size");
  const MatrixField af = sample(c.a, c.domain);
  const MatrixField bf = sample(c.b, c.domain);
  std::vector<MatrixField> steps;
  for (const auto& g : c.steps) {
    if (g.n() != n) throw ContractError("certificate: step of the wrong size");
    steps.push_back(product_field(g, c.domain));
  }
  const std::vector<std::size_t> pts = c.domain ? c.domain->active_points() : std::vector<std::size_t>{0};
  std::vector<double> acc(n * n), tmp(n * n);
  double res = 0.0;
  for (auto p : pts) {
    std::copy(af.at(p).begin(), af.at(p).end(), acc.begin());
    for (const auto& s : steps) {
      dense::multiply(acc, s.at(p), tmp, n);
      acc.swap(tmp);
    }
    const double r = dense::max_abs_diff(acc, bf.at(p));
    if (!(r <= res)) {
      res = r;
      if (worst) *worst = p;
    }
  }
  return res;
}

CertifyResult homotopy_certificate(const HomotopyMatrix& h, const CertifyOptions& opts) {
  const DomainPtr& base = h.base();
  const DomainPtr& prod = h.product();
  const int t_res = h.t_res();
  CertifyResult out;

  // A thin overlap between pivot regions can leave no chain that survives the
  // two shrinks; grow the patches and try again before giving up.
  const int max_res = *std::max_element(prod->resolution().begin(), prod->resolution().end());
  CoverOptions cover_opts = opts.cover;
  std::vector<PatchFactorization> cover;
  SlicedCover sliced;
  for (;;) {
    cover = build_patch_cover(h.h(), cover_opts, prod);
    std::vector<GridSubset> sets;
    for (const auto& pf : cover) sets.push_back(pf.patch);
    try {
      sliced = slice_cover(sets);
      break;
    } catch (const ContractError&) {
      if (cover_opts.dilation >= max_res) throw;
      cover_opts.dilation = std::min(max_res, std::max(1, cover_opts.dilation) * 2);
    }
  }
  out.cover_sets = cover.size();
  out.dilation = cover_opts.dilation;

  std::vector<FactorList> glued;
  std::vector<GridSubset> u;
  for (const auto& sp : sliced.patches) {
    std::vector<FactorList> lists;
    for (auto j : sp.cover_sets) lists.push_back(cover[j].factors);
    glued.push_back(glue_patch(h, sp, lists, opts.tol_recon));
    u.push_back(sp.u);
    out.slabs.push_back(sp.slabs());

    const MatrixField g = product_field(glued.back(), prod);
    double res = 0.0;
    std::size_t worst = 0;
    for (auto x : sp.u.points())
      for (int t = 0; t < t_res; ++t) {
        const std::size_t p = h.index(x, t);
        const double r = dense::max_abs_diff(g.at(p), h.field().at(p));
        if (!(r <= res)) {
          res = r;
          worst = p;
        }
      }
    out.glue_residuals.push_back(res);
    if (!(res <= opts.tol_recon)) {
      std::ostringstream os;
      os << "glued patch " << glued.size() << " differs from H by " << res << " at " << prod->describe_point(worst);
      throw VerificationError(os.str());
    }
  }

  const auto w = shrink_cover(u);
  const auto w2 = shrink_cover(w);

  RingElement eta = GridFunction::constant(base, 0.0);
  Certificate cert{base, h.slice(0), h.slice(t_res - 1), {}, opts.tol_cert};
  for (std::size_t i = 0; i < glued.size(); ++i) {
    const GridSubset outside = w[i].complement();
    RingElement phi;
    if (outside.empty())
      phi = GridFunction::constant(base, 1.0);
    else if (w2[i].empty())
      phi = GridFunction::constant(base, 0.0);
    else
      phi = separating_function(outside, w2[i]);
    auto step = commutator_step(h, glued[i], eta, w[i], phi, opts.tol_cert);
    out.step_residuals.push_back(step.residual);
    cert.steps.push_back(std::move(step.g));
    eta = std::move(step.eta_next);
  }
  const auto ev = eta.sample(*base);
  for (auto x : base->active_points())
    if (ev[x] != 1.0) throw ContractError("homotopy_certificate: time did not reach 1 at " + base->describe_point(x));

  std::size_t worst = 0;
  out.residual = certificate_residual(cert, &worst);
  if (!(out.residual <= opts.tol_cert)) {
    std::ostringstream os;
    os << "certificate residual " << out.residual << " exceeds " << opts.tol_cert << " at " << base->describe_point(worst);
    throw VerificationError(os.str());
  }
  out.certificate = std::move(cert);
  return out;
}

// ---- contractible domains -----------------------------------------------------

namespace {

// Multilinear interpolation of grid values at domain coordinates y.
double interpolate(const Domain& d, const std::vector<double>& v, const std::vector<double>& y) {
  const std::size_t dims = d.dims();
  std::vector<int> lo(dims);
  std::vector<double> w(dims);
  for (std::size_t k = 0; k < dims; ++k) {
    const double u = (d.to_unit(y[k], k) + 1.0) / 2.0 * (d.resolution()[k] - 1);
    int i = static_cast<int>(std::floor(u));
    i = std::clamp(i, 0, d.resolution()[k] - 2);
    lo[k] = i;
    w[k] = std::clamp(u - i, 0.0, 1.0);
  }
  double total = 0.0;
  std::vector<int> idx(dims);
  for (std::size_t corner = 0; corner < (std::size_t{1} << dims); ++corner) {
    double weight = 1.0;
    for (std::size_t k = 0; k < dims; ++k) {
      const bool up = (corner >> k) & 1U;
      idx[k] = lo[k] + (up ? 1 : 0);
      weight *= up ? w[k] : 1.0 - w[k];
    }
    if (weight != 0.0) total += weight * v[d.flat_index(idx)];
  }
  return total;
}

}  // namespace

ContractibleResult contractible_factorization(const SLMatrix& a, const DomainPtr& domain, const std::vector<double>& x0,
                                              int t_res, const CertifyOptions& opts) {
  if (!domain) throw ContractError("contractible_factorization needs a domain");
  if (domain->has_mask()) throw ContractError("contractible_factorization needs a full box; the domain is masked");
  const std::size_t n = a.n();
  const std::size_t dims = domain->dims();
  if (x0.size() != dims) throw ContractError("basepoint has the wrong number of coordinates");
  for (std::size_t k = 0; k < dims; ++k) {
    const double lo = domain->box()[k].lo.get_d(), hi = domain->box()[k].hi.get_d();
    if (!(x0[k] >= lo && x0[k] <= hi)) throw ContractError("basepoint lies outside the box");
  }
  for (const auto& e : a.entries().data()) require_on(e, domain, "matrix entry");
  if (!a.det_checked()) check_determinant_one(a.entries(), 1e-9);

  ContractibleResult out{FactorList(n, RingTag::grid(domain)), {}, 0.0};
  const bool constant = std::all_of(a.entries().data().begin(), a.entries().data().end(),
                                    [](const RingElement& e) { return e.kind() == Kind::Scalar; });
  if (constant) {
    out.factors = factor_pointwise(a).promoted(RingTag::grid(domain));
    out.residual = reconstruction_residual(out.factors, a.entries(), domain);
    return out;
  }

  // H(x,t) = A((1-t)x + t x0), with column 1 rescaled so det = 1 exactly up to rounding.
  const DomainPtr prod = domain->with_time(t_res);
  std::vector<std::vector<double>> grid_vals(n * n);
  for (std::size_t k = 0; k < n * n; ++k)
    if (a.entries().data()[k].kind() == Kind::Grid) grid_vals[k] = a.entries().data()[k].grid().values();
  std::vector<std::vector<double>> hv(n * n, std::vector<double>(prod->size(), 0.0));
  std::vector<double> y(dims), m(n * n);
  for (auto x : domain->active_points())
    for (int t = 0; t < t_res; ++t) {
      const double s = static_cast<double>(t) / static_cast<double>(t_res - 1);
      for (std::size_t k = 0; k < dims; ++k) y[k] = (1.0 - s) * domain->coord(x, k) + s * x0[k];
      for (std::size_t k = 0; k < n * n; ++k) {
        const RingElement& e = a.entries().data()[k];
        if (t == 0) m[k] = e.value_at(*domain, x);
        else if (e.kind() == Kind::Scalar) m[k] = e.scalar().to_double();
        else if (e.kind() == Kind::Poly) m[k] = e.poly().value_at_coords(y);
        else m[k] = interpolate(*domain, grid_vals[k], y);
      }
      const double det = dense::determinant(m, n);
      const std::size_t p = x * static_cast<std::size_t>(t_res) + static_cast<std::size_t>(t);
      for (std::size_t k = 0; k < n * n; ++k) hv[k][p] = (k % n == 0 && t > 0) ? m[k] / det : m[k];
    }
  RingMatrix hm(n);
  for (std::size_t k = 0; k < n * n; ++k) hm.data()[k] = GridFunction(prod, std::move(hv[k]));
  const auto h = HomotopyMatrix::make(std::move(hm), domain, t_res, 1e-9);
  out.certify = homotopy_certificate(h, opts);

  // B = A(x0) constant; A = B prod(G)^-1.
  const RingMatrix b = h.slice(t_res - 1);
  RingMatrix b0(n);
  const std::size_t first = domain->active_points().front();
  for (std::size_t k = 0; k < n * n; ++k) b0.data()[k] = RingElement::real(b.data()[k].value_at(*domain, first));
  out.factors = factor_pointwise(SLMatrix::checked(b0, 1e-9)).promoted(RingTag::grid(domain));
  FactorList all(n, RingTag::grid(domain));
  for (const auto& g : out.certify.certificate.steps) all.append(g);
  out.factors.append(invert(all));

  std::size_t worst = 0;
  out.residual = reconstruction_residual(out.factors, a.entries(), domain, &worst);
  if (!(out.residual <= opts.tol_recon)) {
    std::ostringstream os;
    os << "contractible factorization reconstructs A only to " << out.residual << " at " << domain->describe_point(worst);
    throw VerificationError(os.str());
  }
  return out;
}

}  // namespace sk1
