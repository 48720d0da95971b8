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

#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "sk1/sk1.h"

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(SK1_TEST_DATA) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  sk1_status status;
  nlohmann::json report;
  std::string certificate;
  std::string error;
};

Run run(const char* command, const std::string& input, const char* mode = nullptr, const sk1_options* opts = nullptr) {
  sk1_report* r = nullptr;
  const sk1_status st = sk1_run(command, input.c_str(), mode, opts, &r);
  REQUIRE(r != nullptr);
  CHECK(sk1_report_status(r) == st);
  Run out{st, nlohmann::json::parse(sk1_report_json(r)), sk1_report_certificate(r) ? sk1_report_certificate(r) : "",
          sk1_report_error(r)};
  sk1_report_free(r);
  return out;
}

}  // namespace

TEST_CASE("argument errors") {
  sk1_report* r = reinterpret_cast<sk1_report*>(1);
  CHECK(sk1_run(nullptr, "{}", nullptr, nullptr, &r) == SK1_ERR_ARGUMENT);
  CHECK(r == nullptr);
  CHECK(sk1_run("factor", "{}", nullptr, nullptr, nullptr) == SK1_ERR_ARGUMENT);
  sk1_options* o = sk1_options_new();
  CHECK(sk1_options_set_double(o, "tol_recon", 1e-8) == SK1_OK);
  CHECK(sk1_options_set_double(o, "no_such_option", 1.0) == SK1_ERR_ARGUMENT);
  CHECK(sk1_options_set_double(o, "tol_det", -1.0) == SK1_ERR_ARGUMENT);
  CHECK(sk1_options_set_int(o, "t_res", 17) == SK1_OK);
  CHECK(sk1_options_set_int(o, "seed", -3) == SK1_ERR_ARGUMENT);
  sk1_options_free(o);
  CHECK(std::string(sk1_status_name(SK1_ERR_VERIFY)) == "verification failure");
}

TEST_CASE("factor through the C interface") {
  auto ok = run("factor", slurp("factor_near_identity.json"));
  CHECK(ok.status == SK1_OK);
  CHECK(ok.report["factor_count"].get<int>() <= 8);
  CHECK(ok.report["check"]["exact"] == true);
  CHECK(!ok.certificate.empty());

  auto gauss = run("factor", slurp("factor_gauss_identity.json"));
  CHECK(gauss.status == SK1_OK);
  CHECK(gauss.report["factor_count"] == 0);

  auto bad = run("factor", slurp("factor_bound_violation.json"));
  CHECK(bad.status == SK1_ERR_CONTRACT);
  CHECK(bad.error.find("entry (1,1)") != std::string::npos);
  CHECK(bad.certificate.empty());

  CHECK(run("factor", "{\"version\": 1, \"matrix\": [[").status == SK1_ERR_PARSE);
  CHECK(run("factor", "{\"version\": 7, \"matrix\": [[\"1\"]]}").status == SK1_ERR_PARSE);
  CHECK(run("factor", slurp("factor_near_identity.json"), "no-such-mode").status == SK1_ERR_PARSE);
}

TEST_CASE("certificates round-trip through verify") {
  for (const char* file : {"factor_near_identity.json", "factor_gauss_rotation.json"}) {
    auto r = run("factor", slurp(file));
    REQUIRE(r.status == SK1_OK);
    CHECK(run("verify", r.certificate).status == SK1_OK);
  }
  for (const char* file : {"lift_polynomial.json", "lift_noisy.json"}) {
    auto r = run("lift", slurp(file));
    REQUIRE(r.status == SK1_OK);
    CHECK(r.report["smooth"] == true);
    CHECK(run("verify", r.certificate).status == SK1_OK);
  }
  for (const char* file : {"certify_constant.json", "certify_shear.json", "certify_contractible.json"}) {
    auto r = run("certify", slurp(file));
    REQUIRE(r.status == SK1_OK);
    CHECK(run("verify", r.certificate).status == SK1_OK);
  }
}

TEST_CASE("verify catches a corrupted coefficient") {
  auto r = run("certify", slurp("certify_shear.json"));
  REQUIRE(r.status == SK1_OK);
  auto cert = nlohmann::json::parse(r.certificate);
  auto& steps = cert["steps"];
  bool changed = false;
  for (auto& step : steps)
    for (auto& f : step)
      if (!changed && f["r"].is_object() && f["r"].contains("grid")) {
        f["r"]["grid"][4] = f["r"]["grid"][4].get<double>() + 1e-3;
        changed = true;
      }
  REQUIRE(changed);
  auto v = run("verify", cert.dump());
  CHECK(v.status == SK1_ERR_VERIFY);
  CHECK(v.error.find("grid index (4)") != std::string::npos);
}

TEST_CASE("reports are deterministic apart from timing") {
  sk1_options* o = sk1_options_new();
  sk1_options_set_int(o, "seed", 11);
  auto a = run("certify", slurp("certify_shear.json"), nullptr, o);
  auto b = run("certify", slurp("certify_shear.json"), nullptr, o);
  sk1_options_free(o);
  a.report.erase("elapsed_seconds");
  b.report.erase("elapsed_seconds");
  CHECK(a.report.dump() == b.report.dump());
  CHECK(a.certificate == b.certificate);
  CHECK(a.report["params"]["seed"] == 11);
}
