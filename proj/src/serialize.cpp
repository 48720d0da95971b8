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

#include "sk1/serialize.hpp"

#include <algorithm>
#include <cmath>

#include "sk1/errors.hpp"

namespace sk1 {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where + ": missing \"" + key + "\"");
  return j.at(key);
}

Rational rational_of(const json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number()) return Rational(j.get<double>());
  bad(where + ": expected a number or a rational string");
}

Scalar scalar_of(const json& j, const std::string& where) {
  if (j.is_string()) return Scalar(parse_rational(j.get<std::string>()));
  if (j.is_number()) return Scalar(j.get<double>());
  bad(where + ": expected a number or a rational string");
}

json scalar_json(const Scalar& s) {
  if (s.is_exact()) return format_rational(s.rational());
  return s.to_double();
}

std::vector<int> ints_of(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where + ": expected an array of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) bad(where + ": expected an array of integers");
    out.push_back(v.get<int>());
  }
  return out;
}

bool all_strings(const json& arr) {
  for (const auto& v : arr)
    if (!v.is_string()) return false;
  return true;
}

template <class T>
ChebPoly<T> cheb_of(const json& j, std::size_t dims, const std::string& where) {
  auto deg = ints_of(field(j, "degree", where), where + ".degree");
  if (deg.size() != dims) bad(where + ": degree has " + std::to_string(deg.size()) + " entries, domain has " + std::to_string(dims));
  const json& c = field(j, "coeffs", where);
  if (!c.is_array()) bad(where + ".coeffs: expected an array");
  std::vector<T> coeffs;
  for (const auto& v : c) {
    if constexpr (std::is_same_v<T, Rational>)
      coeffs.push_back(rational_of(v, where));
    else
      coeffs.push_back(scalar_of(v, where).to_double());
  }
  try {
    return ChebPoly<T>(std::move(deg), std::move(coeffs));
  } catch (const std::invalid_argument& e) {
    bad(where + ": " + e.what());
  }
}

template <class T>
json cheb_json(const ChebPoly<T>& p) {
  json c = json::array();
  for (const auto& v : p.coeffs()) {
    if constexpr (std::is_same_v<T, Rational>)
      c.push_back(format_rational(v));
    else
      c.push_back(v);
  }
  return {{"degree", p.degree()}, {"coeffs", std::move(c)}};
}

template <class T>
PolyFrac<T> frac_of(const json& j, std::size_t dims, const std::string& where) {
  PolyFrac<T> f{cheb_of<T>(j.at("cheb"), dims, where + ".cheb"), {}};
  if (j.contains("den")) {
    if (!j.at("den").is_array()) bad(where + ".den: expected an array");
    for (const auto& d : j.at("den")) f.den.push_back(cheb_of<T>(d, dims, where + ".den"));
  }
  return f;
}

bool cheb_is_exact(const json& j) {
  if (!j.contains("cheb") || !j.at("cheb").is_object() || !j.at("cheb").contains("coeffs")) return false;
  if (!all_strings(j.at("cheb").at("coeffs"))) return false;
  if (j.contains("den"))
    for (const auto& d : j.at("den"))
      if (!d.contains("coeffs") || !all_strings(d.at("coeffs"))) return false;
  return true;
}

}  // namespace

DomainPtr domain_from_json(const json& j) {
  if (j.is_null()) return nullptr;
  const json& box = field(j, "box", "domain");
  if (!box.is_array() || box.empty()) bad("domain.box: expected a non-empty array of [lo, hi] pairs");
  std::vector<Interval> iv;
  for (const auto& b : box) {
    if (!b.is_array() || b.size() != 2) bad("domain.box: expected [lo, hi] pairs");
    iv.push_back({rational_of(b[0], "domain.box"), rational_of(b[1], "domain.box")});
  }
  auto res = ints_of(field(j, "resolution", "domain"), "domain.resolution");
  if (res.size() != iv.size()) bad("domain: box and resolution differ in dimension");
  std::optional<std::vector<bool>> mask;
  if (j.contains("mask") && !j.at("mask").is_null()) {
    const json& m = j.at("mask");
    if (!m.is_array()) bad("domain.mask: expected an array of booleans");
    std::vector<bool> v;
    for (const auto& b : m) {
      if (b.is_boolean()) v.push_back(b.get<bool>());
      else if (b.is_number_integer()) v.push_back(b.get<int>() != 0);
      else bad("domain.mask: expected booleans");
    }
    mask = std::move(v);
  }
  try {
    return make_domain(std::move(iv), std::move(res), std::move(mask));
  } catch (const ContractError& e) {
    bad(std::string("domain: ") + e.what());
  }
}

json domain_to_json(const DomainPtr& d) {
  if (!d) return nullptr;
  json box = json::array();
  for (const auto& b : d->box()) box.push_back({format_rational(b.lo), format_rational(b.hi)});
  json out{{"box", std::move(box)}, {"resolution", d->resolution()}};
  if (d->has_mask()) {
    json m = json::array();
    for (bool b : *d->mask()) m.push_back(b);
    out["mask"] = std::move(m);
  }
  return out;
}

RingElement element_from_json(const json& j, const DomainPtr& d) {
  if (j.is_string() || j.is_number()) return scalar_of(j, "entry");
  if (!j.is_object()) bad("entry: expected a scalar, {\"poly\": ...}, {\"cheb\": ...} or {\"grid\": ...}");
  if (j.contains("grid")) {
    if (!d) bad("grid entry without a domain");
    const json& g = j.at("grid");
    if (!g.is_array() || g.size() != d->size())
      bad("grid entry: expected " + std::to_string(d->size()) + " values in row-major order");
    std::vector<double> v;
    v.reserve(g.size());
    for (const auto& x : g) {
      if (x.is_null()) v.push_back(0.0);
      else if (x.is_number()) v.push_back(x.get<double>());
      else bad("grid entry: values must be numbers");
    }
    return GridFunction(d, std::move(v));
  }
  if (j.contains("poly")) {
    if (!d) bad("polynomial entry without a domain");
    const json& terms = j.at("poly");
    if (!terms.is_array()) bad("poly entry: expected an array of {\"c\", \"e\"} terms");
    bool exact = true;
    for (const auto& t : terms) exact = exact && field(t, "c", "poly term").is_string();
    std::vector<std::pair<Scalar, std::vector<int>>> out;
    for (const auto& t : terms) {
      auto e = ints_of(field(t, "e", "poly term"), "poly term exponents");
      if (e.size() != d->dims()) bad("poly term: exponent count does not match the domain dimension");
      Scalar c = scalar_of(t.at("c"), "poly term");
      out.push_back({exact ? c : c.to_float(), std::move(e)});
    }
    return PolyFunction::from_monomials(d, exact ? Backend::Exact : Backend::Float, out);
  }
  if (j.contains("cheb")) {
    if (!d) bad("polynomial entry without a domain");
    if (cheb_is_exact(j)) return PolyFunction(d, frac_of<Rational>(j, d->dims(), "entry"));
    return PolyFunction(d, frac_of<double>(j, d->dims(), "entry"));
  }
  bad("entry: unknown object form");
}

json element_to_json(const RingElement& e) {
  switch (e.kind()) {
    case Kind::Scalar:
      return scalar_json(e.scalar());
    case Kind::Grid:
      return {{"grid", e.grid().values()}};
    case Kind::Poly: {
      const auto& p = e.poly();
      json out;
      auto emit = [&out](const auto& frac) {
        out["cheb"] = cheb_json(frac.num);
        if (!frac.den.empty()) {
          json den = json::array();
          for (const auto& q : frac.den) den.push_back(cheb_json(q));
          out["den"] = std::move(den);
        }
      };
      if (p.backend() == Backend::Exact) emit(p.exact());
      else emit(p.flt());
      return out;
    }
  }
  return nullptr;
}

RingMatrix matrix_from_json(const json& j, const DomainPtr& d, std::size_t n) {
  if (j.is_object() && j.contains("factors")) return product(factors_from_json(j.at("factors"), d, n));
  if (!j.is_array() || j.size() != n) bad("matrix: expected " + std::to_string(n) + " rows");
  RingMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) bad("matrix row " + std::to_string(i + 1) + ": expected " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = element_from_json(j[i][k], d);
  }
  return m;
}

json matrix_to_json(const RingMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.n(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.n(); ++k) row.push_back(element_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

FactorList factors_from_json(const json& j, const DomainPtr& d, std::size_t n) {
  if (!j.is_array()) bad("factors: expected an array of {\"i\", \"j\", \"r\"}");
  std::vector<ElementaryFactor> fs;
  RingTag tag = RingTag::exact_scalar();
  for (const auto& f : j) {
    const json& i = field(f, "i", "factor");
    const json& k = field(f, "j", "factor");
    if (!i.is_number_integer() || !k.is_number_integer()) bad("factor: i and j must be integers");
    ElementaryFactor e{i.get<int>(), k.get<int>(), element_from_json(field(f, "r", "factor"), d)};
    tag = fs.empty() ? tag_of(e.r) : widen(tag, tag_of(e.r));
    fs.push_back(std::move(e));
  }
  try {
    return FactorList(n, tag, std::move(fs));
  } catch (const ContractError& e) {
    bad(std::string("factors: ") + e.what());
  }
}

json factors_to_json(const FactorList& fl) {
  json out = json::array();
  for (const auto& f : fl.factors()) out.push_back({{"i", f.i}, {"j", f.j}, {"r", element_to_json(f.r)}});
  return out;
}

void merge_params(Params& p, const json& j) {
  if (j.is_null()) return;
  if (!j.is_object()) bad("params: expected an object");
  auto num = [&](const char* key, double& dst) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number()) bad(std::string("params.") + key + ": expected a number");
    dst = j.at(key).get<double>();
  };
  auto integer = [&](const char* key, int& dst) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number_integer()) bad(std::string("params.") + key + ": expected an integer");
    dst = j.at(key).get<int>();
  };
  num("tol_recon", p.tol_recon);
  num("tol_det", p.tol_det);
  num("tol_cert", p.tol_cert);
  num("pivot_floor", p.pivot_floor);
  num("margin", p.margin);
  integer("max_degree", p.max_degree);
  integer("t_res", p.t_res);
  integer("dilation", p.dilation);
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) bad("params.seed: expected a non-negative integer");
    p.seed = j.at("seed").get<std::uint64_t>();
  }
}

json params_to_json(const Params& p) {
  json out{{"tol_recon", p.tol_recon}, {"tol_det", p.tol_det},       {"tol_cert", p.tol_cert},
           {"pivot_floor", p.pivot_floor}, {"margin", p.margin},   {"max_degree", p.max_degree},
           {"t_res", p.t_res},           {"dilation", p.dilation}};
  if (p.seed) out["seed"] = *p.seed;
  return out;
}

Problem problem_from_json(const json& j) {
  if (!j.is_object()) bad("problem: expected a JSON object");
  Problem p;
  const json& v = field(j, "version", "problem");
  if (!v.is_number_integer()) bad("problem.version: expected an integer");
  p.version = v.get<int>();
  if (p.version != kFormatVersion) bad("problem.version " + std::to_string(p.version) + " is not supported");
  if (j.contains("mode")) p.mode = j.at("mode").get<std::string>();
  if (j.contains("params")) merge_params(p.params, j.at("params"));
  p.domain = j.contains("domain") ? domain_from_json(j.at("domain")) : nullptr;

  // n: declared, or the row count of whichever matrix is given.
  // A matrix given as {"factors": [...]} has n = the largest factor index.
  auto rows_of = [](const json& m) -> std::size_t {
    if (m.is_array()) return m.size();
    std::size_t n = 0;
    if (m.is_object() && m.contains("factors") && m.at("factors").is_array())
      for (const auto& f : m.at("factors"))
        for (const char* key : {"i", "j"})
          if (f.is_object() && f.contains(key) && f.at(key).is_number_unsigned())
            n = std::max(n, f.at(key).get<std::size_t>());
    return n;
  };
  if (j.contains("n")) {
    if (!j.at("n").is_number_unsigned()) bad("problem.n: expected a positive integer");
    p.n = j.at("n").get<std::size_t>();
  } else if (j.contains("matrix")) {
    p.n = rows_of(j.at("matrix"));
  } else if (j.contains("homotopy") && j.at("homotopy").contains("matrix")) {
    p.n = rows_of(j.at("homotopy").at("matrix"));
  }
  if (p.n == 0) bad("problem: cannot determine n; declare \"n\" or give a matrix");

  if (j.contains("matrix")) p.matrix = matrix_from_json(j.at("matrix"), p.domain, p.n);
  if (j.contains("factors")) p.factors = factors_from_json(j.at("factors"), p.domain, p.n);
  if (j.contains("homotopy")) {
    const json& h = j.at("homotopy");
    if (h.contains("t_res")) {
      if (!h.at("t_res").is_number_integer()) bad("homotopy.t_res: expected an integer");
      p.params.t_res = h.at("t_res").get<int>();
    }
    if (!p.domain) bad("homotopy: a domain is required");
    if (p.params.t_res < 2) bad("homotopy.t_res: at least 2 time samples are required");
    p.homotopy = matrix_from_json(field(h, "matrix", "homotopy"), p.domain->with_time(p.params.t_res), p.n);
  }
  if (j.contains("basepoint")) {
    const json& b = j.at("basepoint");
    if (!b.is_array()) bad("basepoint: expected an array of numbers");
    for (const auto& x : b) p.basepoint.push_back(rational_of(x, "basepoint").get_d());
  }
  return p;
}

Certificate certificate_from_json(const json& j) {
  if (!j.is_object()) bad("certificate: expected a JSON object");
  const json& v = field(j, "version", "certificate");
  if (!v.is_number_integer() || v.get<int>() != kFormatVersion) bad("certificate.version: unsupported");
  Certificate c;
  c.domain = j.contains("domain") ? domain_from_json(j.at("domain")) : nullptr;
  const json& n = field(j, "n", "certificate");
  if (!n.is_number_unsigned() || n.get<std::size_t>() == 0) bad("certificate.n: expected a positive integer");
  const std::size_t size = n.get<std::size_t>();
  c.a = matrix_from_json(field(j, "a", "certificate"), c.domain, size);
  c.b = matrix_from_json(field(j, "b", "certificate"), c.domain, size);
  const json& steps = field(j, "steps", "certificate");
  if (!steps.is_array()) bad("certificate.steps: expected an array of factor lists");
  for (const auto& s : steps) c.steps.push_back(factors_from_json(s, c.domain, size));
  if (j.contains("tol_cert")) c.tol_cert = j.at("tol_cert").get<double>();
  return c;
}

json certificate_to_json(const Certificate& c) {
  json steps = json::array();
  for (const auto& s : c.steps) steps.push_back(factors_to_json(s));
  return {{"version", kFormatVersion}, {"kind", "certificate"}, {"n", c.a.n()},
          {"domain", domain_to_json(c.domain)}, {"a", matrix_to_json(c.a)}, {"b", matrix_to_json(c.b)},
          {"steps", std::move(steps)}, {"tol_cert", c.tol_cert}};
}

}  // namespace sk1
