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

#include "sk1/ring.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sk1/errors.hpp"

namespace sk1 {

PositiveFunction::PositiveFunction(RingElement inner) : inner_(std::move(inner)) {
  if (inner_.kind() == Kind::Scalar) {
    if (!(inner_.scalar().to_double() > 0.0)) throw ContractError("positive function has non-positive value " + inner_.scalar().to_string());
    return;
  }
  const auto d = inner_.domain();
  auto vals = inner_.sample(*d);
  for (auto p : d->active_points())
    if (!(vals[p] > 0.0)) {
      std::ostringstream os;
      os << "positive function has value " << vals[p] << " at " << d->describe_point(p);
      throw ContractError(os.str());
    }
}

double sup_norm(const RingElement& f, const Domain& d) {
  if (f.kind() == Kind::Scalar) return std::fabs(f.scalar().to_double());
  if (!(*f.domain() == d)) throw ContractError("sup_norm: function and domain differ");
  auto vals = f.sample(d);
  double best = 0.0;
  for (auto p : d.active_points()) best = std::max(best, std::fabs(vals[p]));
  return best;
}

namespace {

// Rows: active points. Columns: tensor Chebyshev basis up to `deg`, laid out
// exactly like ChebPoly's dense coefficient vector.
Eigen::MatrixXd chebyshev_design(const Domain& d, const std::vector<int>& deg) {
  const auto& pts = d.active_points();
  std::size_t cols = 1;
  for (int k : deg) cols *= static_cast<std::size_t>(k + 1);
  Eigen::MatrixXd V(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(cols));
  ChebPoly<double> shape(deg, std::vector<double>(cols, 0.0));
  std::vector<int> idx(deg.size());
  std::vector<std::vector<double>> table(deg.size());
  for (std::size_t r = 0; r < pts.size(); ++r) {
    for (std::size_t k = 0; k < deg.size(); ++k) {
      const double s = d.unit_coord(pts[r], k);
      auto& row = table[k];
      row.assign(static_cast<std::size_t>(deg[k] + 1), 1.0);
      if (deg[k] >= 1) row[1] = s;
      for (int m = 2; m <= deg[k]; ++m) row[m] = 2.0 * s * row[m - 1] - row[m - 2];
    }
    for (std::size_t c = 0; c < cols; ++c) {
      shape.decode(c, idx);
      double v = 1.0;
      for (std::size_t k = 0; k < deg.size(); ++k) v *= table[k][static_cast<std::size_t>(idx[k])];
      V(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
  }
  return V;
}

// Largest value of |fit - target| - eps over rows; negative means the bound holds.
double worst_excess(const Eigen::MatrixXd& V, const Eigen::VectorXd& coef, const Eigen::VectorXd& target,
                    const Eigen::VectorXd& eps, Eigen::Index* where) {
  Eigen::VectorXd fit = V * coef;
  double worst = -std::numeric_limits<double>::infinity();
  for (Eigen::Index r = 0; r < fit.size(); ++r) {
    double excess = std::fabs(fit[r] - target[r]) - eps[r];
    if (excess > worst) {
      worst = excess;
      if (where) *where = r;
    }
  }
  return worst;
}

// Lawson iteration: reweighted least squares drifting towards the weighted
// minimax fit, so a low degree is kept whenever one meets the bound.
bool lawson_fit(const Eigen::MatrixXd& V, const Eigen::VectorXd& target, const Eigen::VectorXd& bound,
                Eigen::VectorXd& coef, int iterations) {
  Eigen::VectorXd w = Eigen::VectorXd::Ones(target.size());
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXd r = ((V * coef - target).array().abs() / bound.array()).matrix();
    w = (w.array() * r.array()).matrix();
    const double total = w.sum();
    if (!(total > 0.0)) return false;
    w /= total;
    const Eigen::VectorXd sw = w.array().sqrt().matrix();
    coef = (sw.asDiagonal() * V).completeOrthogonalDecomposition().solve((sw.array() * target.array()).matrix());
    if (worst_excess(V, coef, target, bound, nullptr) < 0.0) return true;
  }
  return false;
}

}  // namespace

PolyFunction approximate_smooth(const RingElement& f, const PositiveFunction& eps, const SmoothingOptions& opts) {
  if (f.kind() == Kind::Poly) return f.poly();
  if (f.kind() == Kind::Scalar) throw ContractError("approximate_smooth needs a function; scalars are already smooth");
  const DomainPtr dom = f.domain();
  if (eps.inner().kind() != Kind::Scalar && !same_domain(eps.inner().domain(), dom))
    throw ContractError("approximate_smooth: function and tolerance live on different domains");

  const auto& pts = dom->active_points();
  const auto fvals = f.sample(*dom);
  const auto evals = eps.inner().sample(*dom);
  Eigen::VectorXd target(static_cast<Eigen::Index>(pts.size())), bound(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t r = 0; r < pts.size(); ++r) {
    target[static_cast<Eigen::Index>(r)] = fvals[pts[r]];
    bound[static_cast<Eigen::Index>(r)] = evals[pts[r]];
  }

  const std::size_t D = dom->dims();
  auto capped = [&](int level) {
    std::vector<int> deg(D);
    for (std::size_t k = 0; k < D; ++k) deg[k] = std::max(0, std::min({level, opts.max_degree, dom->resolution()[k] - 1}));
    return deg;
  };
  std::vector<int> levels;
  const auto cap = capped(std::numeric_limits<int>::max());
  const int cap_level = *std::max_element(cap.begin(), cap.end());
  for (int level = std::max(0, opts.start_degree); level < cap_level; level = std::max(1, level * 2)) levels.push_back(level);
  levels.push_back(cap_level);

  double last_excess = 0.0;
  Eigen::Index last_where = 0;
  for (int level : levels) {
    const auto deg = capped(level);
    Eigen::MatrixXd V = chebyshev_design(*dom, deg);
    Eigen::VectorXd coef = V.completeOrthogonalDecomposition().solve(target);
    Eigen::Index where = 0;
    last_excess = worst_excess(V, coef, target, bound, &where);
    last_where = where;
    if (!(last_excess < 0.0) && !lawson_fit(V, target, bound, coef, 40)) continue;

    // Prune trailing Chebyshev slices while the bound still holds.
    ChebPoly<double> shape(deg, std::vector<double>(static_cast<std::size_t>(coef.size()), 0.0));
    std::vector<int> kept = deg;
    std::vector<int> idx(D);
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t k = 0; k < D; ++k) {
        if (kept[k] == 0) continue;
        Eigen::VectorXd trial = coef;
        for (Eigen::Index c = 0; c < trial.size(); ++c) {
          shape.decode(static_cast<std::size_t>(c), idx);
          if (idx[k] >= kept[k]) trial[c] = 0.0;
        }
        if (worst_excess(V, trial, target, bound, nullptr) < 0.0) {
          coef = trial;
          --kept[k];
          progress = true;
        }
      }
    }
    std::vector<double> c(coef.data(), coef.data() + coef.size());
    ChebPoly<double> g(deg, std::move(c));
    g.trim();
    return PolyFunction(dom, std::move(g));
  }
  std::ostringstream os;
  os << "approximate_smooth: degree cap " << cap_level << " reached; error exceeds tolerance by " << last_excess
     << " at " << dom->describe_point(pts[static_cast<std::size_t>(last_where)]);
  throw ContractError(os.str());
}

GridFunction separating_function(const GridSubset& x, const GridSubset& y) {
  if (!same_domain(x.domain(), y.domain())) throw ContractError("separating_function: subsets on different domains");
  const auto dom = x.domain();
  if (x.empty() || y.empty()) throw ContractError("separating_function: X and Y must be nonempty");
  for (auto p : dom->active_points())
    if (x.contains(p) && y.contains(p))
      throw ContractError("separating_function: X and Y intersect at " + dom->describe_point(p));

  const auto xs = x.points();
  const auto ys = y.points();
  auto dist_to = [&](std::size_t p, const std::vector<std::size_t>& set) {
    double best = std::numeric_limits<double>::infinity();
    for (auto q : set) {
      double s = 0.0;
      for (std::size_t k = 0; k < dom->dims(); ++k) {
        double diff = dom->coord(p, k) - dom->coord(q, k);
        s += diff * diff;
      }
      best = std::min(best, s);
    }
    return std::sqrt(best);
  };
  std::vector<double> vals(dom->size(), 0.0);
  for (auto p : dom->active_points()) {
    if (x.contains(p)) continue;
    if (y.contains(p)) {
      vals[p] = 1.0;
      continue;
    }
    const double dx = dist_to(p, xs);
    const double dy = dist_to(p, ys);
    vals[p] = dx / (dx + dy);
  }
  return GridFunction(dom, std::move(vals));
}

std::vector<GridSubset> shrink_cover(const std::vector<GridSubset>& cover) {
  if (cover.empty()) throw ContractError("shrink_cover: empty cover");
  const auto dom = cover.front().domain();
  for (const auto& u : cover)
    if (!same_domain(u.domain(), dom)) throw ContractError("shrink_cover: cover sets on different domains");
  for (auto p : dom->active_points()) {
    bool covered = std::any_of(cover.begin(), cover.end(), [&](const GridSubset& u) { return u.contains(p); });
    if (!covered) throw ContractError("shrink_cover: input does not cover " + dom->describe_point(p));
  }
  std::vector<GridSubset> out;
  out.reserve(cover.size());
  for (const auto& u : cover) out.push_back(u.interior());
  for (auto p : dom->active_points()) {
    bool covered = std::any_of(out.begin(), out.end(), [&](const GridSubset& v) { return v.contains(p); });
    if (!covered)
      throw ContractError("shrink_cover: no shrinkage exists at this resolution; " + dom->describe_point(p) +
                          " lies within one grid step of every cover set's boundary");
  }
  return out;
}

}  // namespace sk1
