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

#include "sk1/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sk1/errors.hpp"

namespace sk1 {

namespace {

DomainPtr common_domain(const RingMatrix& a, const FactorList* f) {
  DomainPtr d = matrix_domain(a);
  if (f) {
    for (const auto& e : f->factors()) {
      if (e.r.kind() == Kind::Scalar) continue;
      if (!d) d = e.r.domain();
      if (!same_domain(d, e.r.domain())) throw ContractError("matrix and factor list live on different domains");
    }
  }
  return d;
}

// Pointwise inverse of a sampled matrix; throws when singular somewhere.
MatrixField inverse_field(const MatrixField& a, const DomainPtr& d) {
  const std::size_t n = a.n();
  MatrixField inv(n, d);
  const std::vector<std::size_t> pts = d ? d->active_points() : std::vector<std::size_t>{0};
  for (auto p : pts)
    if (!dense::inverse(a.at(p), inv.at(p), n))
      throw ContractError("matrix is singular" + (d ? " at " + d->describe_point(p) : std::string()));
  return inv;
}

std::vector<std::size_t> points_of(const DomainPtr& d) { return d ? d->active_points() : std::vector<std::size_t>{0}; }

RingElement pointwise(const DomainPtr& d, std::vector<double> v) {
  if (!d) return RingElement::real(v[0]);
  return GridFunction(d, std::move(v));
}

std::string where(const DomainPtr& d, std::size_t p) { return d ? " at " + d->describe_point(p) : std::string(); }

}  // namespace

ApproxBudget budget_from_delta(std::size_t n, std::size_t k, const PositiveFunction& delta) {
  if (n < 2) throw ContractError("approximation budget needs n >= 2");
  if (k == 0) throw ContractError("approximation budget needs K >= 1 factors");
  const DomainPtr d = delta.inner().domain();
  const auto dv = d ? delta.inner().sample(*d) : std::vector<double>{delta.inner().scalar().to_double()};
  std::vector<double> eps(dv.size(), 0.0);
  const double nn = static_cast<double>(n), kk = static_cast<double>(k);
  for (auto p : points_of(d)) {
    const double bound = (nn - 1.0) * std::pow(2.0, kk - 1.0) * std::pow(nn, kk) * kk * std::pow(dv[p], kk);
    eps[p] = 0.5 / bound;
  }
  return {n, k, delta, PositiveFunction(pointwise(d, std::move(eps)))};
}

double budget_slack(const ApproxBudget& b) {
  DomainPtr d = b.delta.inner().domain();
  if (!d) d = b.epsilon.inner().domain();
  const auto dv = d ? b.delta.inner().sample(*d) : std::vector<double>{b.delta.inner().scalar().to_double()};
  const auto ev = d ? b.epsilon.inner().sample(*d) : std::vector<double>{b.epsilon.inner().scalar().to_double()};
  const double nn = static_cast<double>(b.n), kk = static_cast<double>(b.k);
  double worst = 0.0;
  for (auto p : points_of(d))
    worst = std::max(worst, (nn - 1.0) * std::pow(2.0, kk - 1.0) * std::pow(nn, kk) * kk * std::pow(dv[p], kk) * ev[p]);
  return worst;
}

ApproxBudget make_budget(const SLMatrix& a, const FactorList& f, double margin) {
  const std::size_t n = a.n();
  if (f.n() != n) throw ContractError("make_budget: factor list and matrix sizes differ");
  if (f.empty()) throw ContractError("make_budget: K = 0 (empty factor list) is rejected");
  if (!(margin > 0.0)) throw ContractError("make_budget: margin must be positive");
  const DomainPtr d = common_domain(a.entries(), &f);
  const MatrixField inv = inverse_field(sample(a.entries(), d), d);
  const auto pts = points_of(d);
  std::vector<double> delta(d ? d->size() : 1, 0.0);
  for (auto p : pts) {
    double m = 1.0;
    for (double v : inv.at(p)) m = std::max(m, std::fabs(v));
    delta[p] = m;
  }
  for (const auto& e : f.factors()) {
    const auto c = d ? e.r.sample(*d) : std::vector<double>{e.r.scalar().to_double()};
    for (auto p : pts) delta[p] = std::max(delta[p], std::fabs(c[p]));
  }
  for (auto p : pts) delta[p] *= 1.0 + margin;
  return budget_from_delta(n, f.size(), PositiveFunction(pointwise(d, std::move(delta))));
}

LiftResult smooth_lift(const SLMatrix& a, const FactorList& f, const LiftOptions& opts) {
  const std::size_t n = a.n();
  if (f.n() != n) throw ContractError("smooth_lift: factor list and matrix sizes differ");
  const DomainPtr d = common_domain(a.entries(), &f);
  check_determinant_one(a.entries(), opts.tol_det);
  std::size_t worst = 0;
  LiftResult out{FactorList(n, RingTag::exact_scalar()), FactorList(n, RingTag::exact_scalar()),
                 FactorList(n, RingTag::exact_scalar()), make_budget(a, f, opts.margin), 0.0, 0.0, 0.0};
  out.input_residual = reconstruction_residual(f, a.entries(), d);

  std::vector<ElementaryFactor> smooth;
  RingTag tag = a.tag();
  for (const auto& e : f.factors()) {
    RingElement c = e.r;
    if (c.kind() == Kind::Grid) c = approximate_smooth(c, out.budget.epsilon, opts.smoothing);
    tag = widen(tag, tag_of(c));
    smooth.push_back({e.i, e.j, std::move(c)});
  }
  if (tag.kind == Kind::Grid) tag = RingTag::poly(d, Backend::Float);
  out.smoothed = FactorList(n, tag, std::move(smooth));

  // E = A^-1 prod(e'), with A^-1 = adj(A) for det(A) = 1.
  const RingMatrix a_t = promote(a.entries(), tag);
  const RingMatrix e = multiply(adjugate(a_t), product(out.smoothed));
  const MatrixField ef = sample(e, d);
  const double limit = 1.0 / static_cast<double>(n - 1);
  for (auto p : points_of(d)) {
    auto m = ef.at(p);
    double dist = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) dist = std::max(dist, std::fabs(m[i * n + j] - (i == j ? 1.0 : 0.0)));
    if (dist > out.e_distance) {
      out.e_distance = dist;
      worst = p;
    }
  }
  if (!(out.e_distance < limit)) {
    std::ostringstream os;
    os << "smooth_lift: |I - E| = " << out.e_distance << " >= 1/(n-1)" << where(d, worst)
       << "; the input factorization is too loose for the approximation budget";
    throw ContractError(os.str());
  }
  const auto near = factor_near_identity(NearIdentityInput::make(e, opts.tol_det));
  out.correction = invert(near.factors).promoted(tag);
  out.factors = concat(out.smoothed, out.correction);

  out.residual = reconstruction_residual(out.factors, a.entries(), d, &worst);
  if (!(out.residual <= opts.tol_recon)) {
    std::ostringstream os;
    os << "smooth_lift: lifted factors reconstruct A only to " << out.residual << where(d, worst);
    throw VerificationError(os.str());
  }
  return out;
}

RepresentativeResult smooth_representative(const SLMatrix& a, const LiftOptions& opts) {
  const std::size_t n = a.n();
  if (n < 2) throw ContractError("smooth_representative needs n >= 2");
  check_determinant_one(a.entries(), opts.tol_det);
  const DomainPtr d = matrix_domain(a.entries());
  const bool smooth = std::all_of(a.entries().data().begin(), a.entries().data().end(),
                                  [](const RingElement& e) { return e.smooth_class(); });
  if (!d || smooth) {
    RepresentativeResult r{a.entries(), FactorList(n, a.tag()), PositiveFunction(), 0.0, 0.0, 0.0, 0};
    return r;
  }

  const MatrixField af = sample(a.entries(), d);
  const MatrixField inv = inverse_field(af, d);
  const auto pts = d->active_points();
  std::vector<double> eps(d->size(), 0.0);
  const double nn = static_cast<double>(n);
  for (auto p : pts) {
    double m = 1.0;
    for (double v : inv.at(p)) m = std::max(m, std::fabs(v));
    eps[p] = 0.5 / (nn * (nn - 1.0) * (1.0 + opts.margin) * m);
  }

  const RingTag tag = RingTag::poly(d, Backend::Float);
  RepresentativeResult out{RingMatrix(n), FactorList(n, tag), PositiveFunction(GridFunction(d, eps)), 0.0, 0.0, 0.0, 0};
  double scale = 0.5;
  for (;;) {
    ++out.attempts;
    std::vector<double> fit_eps = eps;
    for (auto& v : fit_eps) v *= scale;
    const PositiveFunction fit(GridFunction(d, fit_eps));
    RingMatrix bt(n);
    for (std::size_t k = 0; k < n * n; ++k) {
      const RingElement& e = a.entries().data()[k];
      bt.data()[k] = e.kind() == Kind::Grid ? RingElement(approximate_smooth(e, fit, opts.smoothing)) : promote(e, tag);
    }
    const RingElement det = determinant(bt);
    const RingElement det_inv = det.inverse();
    RingMatrix b = bt;
    for (std::size_t i = 0; i < n; ++i) b(i, 0) = bt(i, 0) * det_inv;

    const MatrixField bf = sample(b, d);
    const auto dv = det_inv.sample(*d);
    bool ok = true;
    out.distance = out.scale_distance = 0.0;
    for (auto p : pts) {
      const double dist = dense::max_abs_diff(bf.at(p), af.at(p));
      out.distance = std::max(out.distance, dist);
      out.scale_distance = std::max(out.scale_distance, std::fabs(dv[p] - 1.0));
      ok = ok && dist < eps[p];
    }
    if (ok) {
      out.b = std::move(b);
      break;
    }
    if (out.attempts >= 30) throw ContractError("smooth_representative: could not bring B within epsilon of A");
    scale /= 2.0;
  }
  check_determinant_one(out.b, opts.tol_det);

  // E = A^-1 B pointwise.
  const MatrixField bf = sample(out.b, d);
  std::vector<std::vector<double>> ev(n * n, std::vector<double>(d->size(), 0.0));
  std::vector<double> prod(n * n);
  for (auto p : pts) {
    dense::multiply(inv.at(p), bf.at(p), prod, n);
    for (std::size_t k = 0; k < n * n; ++k) ev[k][p] = prod[k];
  }
  RingMatrix e(n);
  for (std::size_t k = 0; k < n * n; ++k) e.data()[k] = GridFunction(d, std::move(ev[k]));
  out.e = factor_near_identity(NearIdentityInput::make(e, opts.tol_det)).factors;

  const MatrixField pe = product_field(out.e, d);
  std::size_t worst = 0;
  for (auto p : pts) {
    dense::multiply(af.at(p), pe.at(p), prod, n);
    const double r = dense::max_abs_diff(prod, bf.at(p));
    if (r > out.residual) {
      out.residual = r;
      worst = p;
    }
  }
  if (!(out.residual <= opts.tol_recon)) {
    std::ostringstream os;
    os << "smooth_representative: A product(E) differs from B by " << out.residual << " at " << d->describe_point(worst);
    throw VerificationError(os.str());
  }
  return out;
}

}  // namespace sk1
