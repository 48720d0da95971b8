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

#include "sk1/sk1.h"

#include <cstring>
#include <new>
#include <string>

#include "sk1/commands.hpp"

struct sk1_options {
  sk1::json values = sk1::json::object();
};

struct sk1_report {
  sk1_status status = SK1_OK;
  std::string json;
  std::string certificate;
  bool has_certificate = false;
  std::string error;
};

namespace {

bool one_of(const char* name, std::initializer_list<const char*> names) {
  for (const char* n : names)
    if (std::strcmp(name, n) == 0) return true;
  return false;
}

}  // namespace

extern "C" {

const char* sk1_version(void) { return "1.0.0"; }

const char* sk1_status_name(sk1_status status) {
  switch (status) {
    case SK1_OK: return "ok";
    case SK1_ERR_INTERNAL: return "internal error";
    case SK1_ERR_PARSE: return "parse error";
    case SK1_ERR_CONTRACT: return "contract violation";
    case SK1_ERR_VERIFY: return "verification failure";
    case SK1_ERR_ARGUMENT: return "invalid argument";
  }
  return "unknown status";
}

sk1_options* sk1_options_new(void) { return new (std::nothrow) sk1_options; }

void sk1_options_free(sk1_options* opts) { delete opts; }

sk1_status sk1_options_set_double(sk1_options* opts, const char* name, double value) {
  if (!opts || !name) return SK1_ERR_ARGUMENT;
  if (!one_of(name, {"tol_recon", "tol_det", "tol_cert", "pivot_floor", "margin"})) return SK1_ERR_ARGUMENT;
  if (!(value > 0.0)) return SK1_ERR_ARGUMENT;
  opts->values[name] = value;
  return SK1_OK;
}

sk1_status sk1_options_set_int(sk1_options* opts, const char* name, long long value) {
  if (!opts || !name) return SK1_ERR_ARGUMENT;
  if (std::strcmp(name, "seed") == 0) {
    if (value < 0) return SK1_ERR_ARGUMENT;
    opts->values["seed"] = static_cast<unsigned long long>(value);
    return SK1_OK;
  }
  if (!one_of(name, {"max_degree", "t_res", "dilation"})) return SK1_ERR_ARGUMENT;
  if (value < 0 || value > 1000000) return SK1_ERR_ARGUMENT;
  opts->values[name] = static_cast<int>(value);
  return SK1_OK;
}

sk1_status sk1_run(const char* command, const char* input_json, const char* mode, const sk1_options* opts,
                   sk1_report** out) {
  if (!out) return SK1_ERR_ARGUMENT;
  *out = nullptr;
  if (!command || !input_json) return SK1_ERR_ARGUMENT;
  auto* r = new (std::nothrow) sk1_report;
  if (!r) return SK1_ERR_INTERNAL;
  try {
    auto res = sk1::run_command(command, input_json, mode ? mode : "", opts ? opts->values : sk1::json::object());
    r->status = static_cast<sk1_status>(res.exit_code);
    r->json = res.report.dump(2);
    if (res.certificate) {
      r->certificate = res.certificate->dump();
      r->has_certificate = true;
    }
    if (res.report.contains("error")) r->error = res.report["error"].value("message", "");
  } catch (const std::exception& e) {
    r->status = SK1_ERR_INTERNAL;
    r->error = e.what();
    r->json = "{\"status\":\"fail\",\"exit_code\":1}";
  }
  *out = r;
  return r->status;
}

sk1_status sk1_report_status(const sk1_report* report) { return report ? report->status : SK1_ERR_ARGUMENT; }

const char* sk1_report_json(const sk1_report* report) { return report ? report->json.c_str() : nullptr; }

const char* sk1_report_certificate(const sk1_report* report) {
  return report && report->has_certificate ? report->certificate.c_str() : nullptr;
}

const char* sk1_report_error(const sk1_report* report) { return report ? report->error.c_str() : nullptr; }

void sk1_report_free(sk1_report* report) { delete report; }

}  // extern "C"
