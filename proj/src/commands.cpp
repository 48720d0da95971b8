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

#include "sk1/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "sk1/errors.hpp"
#include "sk1/gauss.hpp"
#include "sk1/lifting.hpp"
#include "sk1/near_identity.hpp"

namespace sk1 {

namespace {

bool exact_element(const RingElement& e) {
  if (e.kind() == Kind::Grid) return false;
  return e.backend() == Backend::Exact;
}

Rational exact_at(const RingElement& e, std::size_t p) {
  if (e.kind() == Kind::Scalar) return e.scalar().rational();
  return e.poly().exact_value_at(p);
}

template <class T>
void dense_mul(const std::vector<T>& a, const std::vector<T>& b, std::vector<T>& out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      T s = 0;
      for (std::size_t k = 0; k < n; ++k) s += a[i * n + k] * b[k * n + j];
      out[i * n + j] = s;
    }
}

// acc * E(i,j;r) as a full product.
template <class T>
void times_elementary(std::vector<T>& acc, std::vector<T>& tmp, std::vector<T>& e, int i, int j, const T& r,
                      std::size_t n) {
  std::fill(e.begin(), e.end(), T(0));
  for (std::size_t k = 0; k < n; ++k) e[k * n + k] = 1;
  e[static_cast<std::size_t>(i - 1) * n + static_cast<std::size_t>(j - 1)] += r;
  dense_mul(acc, e, tmp, n);
  acc.swap(tmp);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Contract: return "contract";
    case ErrorKind::Verification: return "verification";
  }
  return "internal";
}

double min_over(const RingElement& f, const DomainPtr& d) {
  if (f.kind() == Kind::Scalar || !d) return f.kind() == Kind::Scalar ? f.scalar().to_double() : 0.0;
  const auto v = f.sample(*d);
  double m = std::numeric_limits<double>::infinity();
  for (auto p : d->active_points()) m = std::min(m, v[p]);
  return m;
}

bool all_smooth(const FactorList& fl) {
  for (const auto& f : fl.factors())
    if (!f.r.smooth_class()) return false;
  return true;
}

Certificate one_step(const DomainPtr& d, const RingMatrix& target, const FactorList& fl, double tol) {
  return Certificate{d, identity_matrix(target.n(), RingTag::exact_scalar()), target, {fl}, tol};
}

const RingMatrix& need_matrix(const Problem& p) {
  if (!p.matrix) throw ParseError("problem: this mode needs \"matrix\"");
  return *p.matrix;
}

json stages_json(const EliminationTrace& t) {
  json out = json::array();
  for (const auto& s : t.stages) {
    json limit = std::isfinite(s.residual_limit) ? json(s.residual_limit) : json(nullptr);
    out.push_back({{"stage", s.stage}, {"min_pivot", s.min_pivot}, {"residual", s.residual}, {"residual_limit", limit}});
  }
  return out;
}

// Fills report fields and the certificate; `tol` is the bound for the final
// independent check.
struct Outcome {
  json fields = json::object();
  Certificate certificate;
  double tol = 1e-9;
};

Outcome do_factor(const Problem& p, const std::string& mode) {
  const RingMatrix& a = need_matrix(p);
  Outcome o;
  o.tol = p.params.tol_recon;
  const DomainPtr d = matrix_domain(a) ? matrix_domain(a) : p.domain;
  if (mode == "near-identity") {
    auto res = factor_near_identity(NearIdentityInput::make(a, p.params.tol_det));
    o.fields["factor_count"] = res.factors.size();
    o.fields["factor_bound"] = factor_count_bound(a.n());
    o.fields["stages"] = stages_json(res.trace);
    o.fields["stage_bounds_hold"] = res.trace.bounds_hold();
    o.certificate = one_step(d, a, res.factors, p.params.tol_recon);
  } else if (mode == "gauss") {
    const SLMatrix m = SLMatrix::checked(a, p.params.tol_det);
    FactorList fl(a.n(), RingTag::exact_scalar());
    if (!matrix_domain(a)) {
      fl = factor_pointwise(m);
    } else {
      auto pf = factor_patch(m, GridSubset::all(matrix_domain(a)), p.params.pivot_floor);
      o.fields["pivot_sequence"] = pf.pivot_sequence;
      fl = std::move(pf.factors);
    }
    o.fields["factor_count"] = fl.size();
    o.certificate = one_step(d, a, fl, p.params.tol_recon);
  } else {
    throw ParseError("factor: unknown mode \"" + mode + "\" (near-identity, gauss)");
  }
  o.fields["residual"] = reconstruction_residual(o.certificate.steps[0], a, d);
  return o;
}

LiftOptions lift_options(const Params& p) {
  LiftOptions o;
  o.tol_recon = p.tol_recon;
  o.tol_det = p.tol_det;
  o.margin = p.margin;
  o.smoothing.max_degree = p.max_degree;
  return o;
}

Outcome do_lift(const Problem& p, const std::string& mode) {
  const RingMatrix& a = need_matrix(p);
  Outcome o;
  o.tol = p.params.tol_recon;
  const DomainPtr d = matrix_domain(a) ? matrix_domain(a) : p.domain;
  if (mode == "smooth-lift") {
    if (!p.factors) throw ParseError("lift: smooth-lift needs \"factors\" (the continuous factorization F)");
    auto res = smooth_lift(SLMatrix::checked(a, p.params.tol_det), *p.factors, lift_options(p.params));
    o.fields["factor_count"] = res.factors.size();
    o.fields["input_factor_count"] = p.factors->size();
    o.fields["correction_factor_count"] = res.correction.size();
    o.fields["epsilon_min"] = min_over(res.budget.epsilon.inner(), d);
    o.fields["budget_slack"] = budget_slack(res.budget);
    o.fields["e_distance"] = res.e_distance;
    o.fields["e_limit"] = 1.0 / static_cast<double>(a.n() - 1);
    o.fields["input_residual"] = res.input_residual;
    o.fields["residual"] = res.residual;
    o.fields["smooth"] = all_smooth(res.factors);
    o.certificate = one_step(d, a, res.factors, p.params.tol_recon);
  } else if (mode == "representative") {
    auto res = smooth_representative(SLMatrix::checked(a, p.params.tol_det), lift_options(p.params));
    o.fields["factor_count"] = res.e.size();
    o.fields["distance"] = res.distance;
    o.fields["scale_distance"] = res.scale_distance;
    o.fields["residual"] = res.residual;
    o.fields["attempts"] = res.attempts;
    o.fields["smooth"] = std::all_of(res.b.data().begin(), res.b.data().end(),
                                     [](const RingElement& e) { return e.smooth_class(); });
    o.certificate = Certificate{d, a, res.b, {res.e}, p.params.tol_recon};
  } else {
    throw ParseError("lift: unknown mode \"" + mode + "\" (smooth-lift, representative)");
  }
  return o;
}

CertifyOptions certify_options(const Params& p) {
  CertifyOptions o;
  o.cover.pivot_floor = p.pivot_floor;
  o.cover.dilation = p.dilation;
  o.tol_recon = p.tol_recon;
  o.tol_cert = p.tol_cert;
  return o;
}

json certify_fields(const CertifyResult& r) {
  std::size_t total = 0;
  for (const auto& g : r.certificate.steps) total += g.size();
  return {{"cover_sets", r.cover_sets},         {"dilation", r.dilation},         {"patches", r.slabs.size()},
          {"slabs", r.slabs},                   {"glue_residuals", r.glue_residuals},
          {"step_residuals", r.step_residuals}, {"steps", r.certificate.steps.size()},
          {"factor_count", total},              {"certificate_residual", r.residual}};
}

Outcome do_certify(const Problem& p, const std::string& mode) {
  Outcome o;
  o.tol = p.params.tol_cert;
  if (mode == "homotopy") {
    if (!p.homotopy) throw ParseError("certify: homotopy mode needs \"homotopy\"");
    const auto h = HomotopyMatrix::make(*p.homotopy, p.domain, p.params.t_res, p.params.tol_det);
    auto res = homotopy_certificate(h, certify_options(p.params));
    o.fields = certify_fields(res);
    o.fields["t_res"] = p.params.t_res;
    // Identity steps: every step multiplies out to I (expected for constant homotopies).
    bool identity = true;
    for (const auto& g : res.certificate.steps) {
      const auto f = product_field(g, p.domain);
      for (auto x : p.domain->active_points())
        for (std::size_t i = 0; i < h.n(); ++i)
          for (std::size_t k = 0; k < h.n(); ++k)
            if (std::fabs(f.at(x)[i * h.n() + k] - (i == k ? 1.0 : 0.0)) > p.params.tol_cert) identity = false;
    }
    o.fields["identity_steps"] = identity;
    o.certificate = std::move(res.certificate);
  } else if (mode == "contractible") {
    const RingMatrix& a = need_matrix(p);
    if (!p.domain) throw ParseError("certify: contractible mode needs a domain");
    std::vector<double> x0 = p.basepoint;
    if (x0.empty())
      for (const auto& b : p.domain->box()) x0.push_back(b.lo.get_d());
    auto res = contractible_factorization(SLMatrix::checked(a, p.params.tol_det), p.domain, x0, p.params.t_res,
                                          certify_options(p.params));
    o.fields = certify_fields(res.certify);
    o.fields["factor_count"] = res.factors.size();
    o.fields["basepoint"] = x0;
    o.fields["residual"] = res.residual;
    o.tol = p.params.tol_recon;
    o.certificate = one_step(p.domain, a, res.factors, p.params.tol_recon);
  } else {
    throw ParseError("certify: unknown mode \"" + mode + "\" (homotopy, contractible)");
  }
  return o;
}

void require_passes(const IndependentCheck& chk, const Certificate& c, double tol) {
  const bool ok = chk.exact ? chk.residual == 0.0 : chk.residual <= tol;
  if (ok) return;
  std::string where = chk.worst_point && c.domain ? " at " + c.domain->describe_point(*chk.worst_point) : "";
  throw VerificationError("independent re-multiplication differs from B by " + std::to_string(chk.residual) +
                          (chk.exact ? " (exact arithmetic)" : "") + where);
}

json check_json(const IndependentCheck& chk, const Certificate& c) {
  json out{{"residual", chk.residual}, {"exact", chk.exact}, {"factor_count", chk.factor_count}};
  if (chk.worst_point && c.domain) out["worst_point"] = c.domain->describe_point(*chk.worst_point);
  return out;
}

std::string default_mode(const std::string& command) {
  if (command == "factor") return "gauss";
  if (command == "lift") return "smooth-lift";
  if (command == "certify") return "homotopy";
  return {};
}

}  // namespace

IndependentCheck check_certificate(const Certificate& c) {
  const std::size_t n = c.a.n();
  if (c.b.n() != n) throw ContractError("certificate: A and B differ in size");
  IndependentCheck out;
  bool exact = std::all_of(c.a.data().begin(), c.a.data().end(), exact_element) &&
               std::all_of(c.b.data().begin(), c.b.data().end(), exact_element);
  for (const auto& g : c.steps) {
    if (g.n() != n) throw ContractError("certificate: step of the wrong size");
    out.factor_count += g.size();
    for (const auto& f : g.factors()) exact = exact && exact_element(f.r);
  }
  out.exact = exact;
  const std::vector<std::size_t> pts = c.domain ? c.domain->active_points() : std::vector<std::size_t>{0};
  auto check_domain = [&](const RingElement& e) {
    if (e.kind() != Kind::Scalar && !same_domain(e.domain(), c.domain))
      throw ContractError("certificate: an entry lives on a different domain");
  };
  for (const auto& e : c.a.data()) check_domain(e);
  for (const auto& e : c.b.data()) check_domain(e);
  for (const auto& g : c.steps)
    for (const auto& f : g.factors()) check_domain(f.r);

  if (exact) {
    std::vector<Rational> acc(n * n), tmp(n * n), e(n * n);
    for (auto p : pts) {
      for (std::size_t k = 0; k < n * n; ++k) acc[k] = exact_at(c.a.data()[k], p);
      for (const auto& g : c.steps)
        for (const auto& f : g.factors()) times_elementary(acc, tmp, e, f.i, f.j, exact_at(f.r, p), n);
      for (std::size_t k = 0; k < n * n; ++k) {
        const Rational diff = abs(acc[k] - exact_at(c.b.data()[k], p));
        if (sgn(diff) != 0 && diff.get_d() >= out.residual) {
          out.residual = std::max(diff.get_d(), std::numeric_limits<double>::min());
          out.worst_point = p;
        }
      }
    }
    return out;
  }

  // Each coefficient is evaluated once per point through RingElement::value_at.
  std::vector<double> acc(n * n), tmp(n * n), e(n * n);
  const Domain* d = c.domain.get();
  auto value = [d](const RingElement& r, std::size_t p) {
    if (r.kind() == Kind::Scalar) return r.scalar().to_double();
    return r.value_at(*d, p);
  };
  for (auto p : pts) {
    for (std::size_t k = 0; k < n * n; ++k) acc[k] = value(c.a.data()[k], p);
    for (const auto& g : c.steps)
      for (const auto& f : g.factors()) times_elementary(acc, tmp, e, f.i, f.j, value(f.r, p), n);
    for (std::size_t k = 0; k < n * n; ++k) {
      const double diff = std::fabs(acc[k] - value(c.b.data()[k], p));
      if (!(diff <= out.residual)) {
        out.residual = std::isnan(diff) ? std::numeric_limits<double>::infinity() : diff;
        out.worst_point = p;
      }
    }
  }
  return out;
}

CommandOutput run_command(const std::string& command, const std::string& input, const std::string& mode,
                          const json& overrides) {
  const auto t0 = std::chrono::steady_clock::now();
  CommandOutput out;
  out.report = {{"version", kFormatVersion}, {"command", command}};
  try {
    json j;
    try {
      j = json::parse(input);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
      if (command == "verify") {
        const Certificate c = certificate_from_json(j);
        double tol = c.tol_cert;
        if (overrides.contains("tol_cert")) tol = overrides.at("tol_cert").get<double>();
        const auto chk = check_certificate(c);
        out.report["check"] = check_json(chk, c);
        out.report["steps"] = c.steps.size();
        out.report["tol_cert"] = tol;
        require_passes(chk, c, tol);
      } else {
        if (command != "factor" && command != "lift" && command != "certify")
          throw ParseError("unknown command \"" + command + "\"");
        if (j.is_object() && !overrides.empty()) {
          json params = j.value("params", json::object());
          if (!params.is_object()) throw ParseError("params: expected an object");
          params.update(overrides);
          j["params"] = params;
        }
        Problem p = problem_from_json(j);
        const std::string m = !mode.empty() ? mode : !p.mode.empty() ? p.mode : default_mode(command);
        out.report["mode"] = m;
        out.report["n"] = p.n;
        out.report["params"] = params_to_json(p.params);
        Outcome o = command == "factor" ? do_factor(p, m) : command == "lift" ? do_lift(p, m) : do_certify(p, m);
        out.report.update(o.fields);
        const auto chk = check_certificate(o.certificate);
        out.report["check"] = check_json(chk, o.certificate);
        if (chk.exact) out.report["residual"] = chk.residual;
        out.certificate = certificate_to_json(o.certificate);
        require_passes(chk, o.certificate, o.tol);
      }
    } catch (const json::exception& e) {
      throw ParseError(std::string("malformed input: ") + e.what());
    }
    out.report["status"] = "ok";
    out.exit_code = 0;
  } catch (const Error& e) {
    out.report["status"] = "fail";
    out.report["error"] = {{"kind", kind_name(e.kind())}, {"message", e.what()}};
    out.exit_code = static_cast<int>(e.kind());
    out.certificate.reset();
  } catch (const std::exception& e) {
    out.report["status"] = "fail";
    out.report["error"] = {{"kind", "internal"}, {"message", e.what()}};
    out.exit_code = 1;
    out.certificate.reset();
  }
  out.report["exit_code"] = out.exit_code;
  out.report["elapsed_seconds"] = seconds_since(t0);
  return out;
}

}  // namespace sk1
