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

// sk1: factor, lift, certify and verify from JSON files. Talks to the
// library through the C interface only.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unistd.h>

#include "CLI11.hpp"
#include "sk1/sk1.h"

namespace {

namespace fs = std::filesystem;

struct Flags {
  std::string input;
  std::string mode;
  std::string certificate_out;
  std::string report_out;
  std::optional<double> tol_recon, tol_det, tol_cert, pivot_floor;
  std::optional<int> max_degree, t_res;
  std::optional<long long> seed;
  bool quiet = false;
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Write to a sibling temporary file, then rename over the target.
bool write_atomically(const std::string& path, const std::string& text) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << text << '\n';
    out.flush();
    if (!out) return false;
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    return false;
  }
  return true;
}

using OptionsPtr = std::unique_ptr<sk1_options, decltype(&sk1_options_free)>;
using ReportPtr = std::unique_ptr<sk1_report, decltype(&sk1_report_free)>;

bool apply(sk1_options* o, const Flags& f) {
  bool ok = true;
  auto d = [&](const char* name, const std::optional<double>& v) {
    if (v && sk1_options_set_double(o, name, *v) != SK1_OK) {
      std::cerr << "sk1: invalid value for " << name << "\n";
      ok = false;
    }
  };
  auto i = [&](const char* name, const std::optional<long long>& v) {
    if (v && sk1_options_set_int(o, name, *v) != SK1_OK) {
      std::cerr << "sk1: invalid value for " << name << "\n";
      ok = false;
    }
  };
  d("tol_recon", f.tol_recon);
  d("tol_det", f.tol_det);
  d("tol_cert", f.tol_cert);
  d("pivot_floor", f.pivot_floor);
  i("max_degree", f.max_degree ? std::optional<long long>(*f.max_degree) : std::nullopt);
  i("t_res", f.t_res ? std::optional<long long>(*f.t_res) : std::nullopt);
  i("seed", f.seed);
  return ok;
}

int run(const std::string& command, const Flags& f) {
  const auto text = read_file(f.input);
  if (!text) {
    std::cerr << "sk1: cannot read " << f.input << "\n";
    return SK1_ERR_PARSE;
  }
  OptionsPtr opts(sk1_options_new(), &sk1_options_free);
  if (!opts || !apply(opts.get(), f)) return SK1_ERR_PARSE;

  sk1_report* raw = nullptr;
  sk1_run(command.c_str(), text->c_str(), f.mode.empty() ? nullptr : f.mode.c_str(), opts.get(), &raw);
  if (!raw) {
    std::cerr << "sk1: internal error\n";
    return SK1_ERR_INTERNAL;
  }
  ReportPtr report(raw, &sk1_report_free);
  const auto status = sk1_report_status(report.get());

  if (status != SK1_OK) std::cerr << "sk1: " << sk1_status_name(status) << ": " << sk1_report_error(report.get()) << "\n";
  if (!f.quiet) std::cout << sk1_report_json(report.get()) << "\n";
  if (!f.report_out.empty() && !write_atomically(f.report_out, sk1_report_json(report.get()))) {
    std::cerr << "sk1: cannot write " << f.report_out << "\n";
    return SK1_ERR_INTERNAL;
  }
  if (!f.certificate_out.empty()) {
    const char* cert = sk1_report_certificate(report.get());
    if (cert && !write_atomically(f.certificate_out, cert)) {
      std::cerr << "sk1: cannot write " << f.certificate_out << "\n";
      return SK1_ERR_INTERNAL;
    }
  }
  return status;
}

void add_common(CLI::App* sub, Flags& f, bool problem) {
  sub->add_option("file", f.input, problem ? "Problem file (JSON)" : "Certificate file (JSON)")->required();
  sub->add_option("--report", f.report_out, "Also write the report to this file");
  sub->add_flag("--quiet", f.quiet, "Do not print the report on standard output");
  sub->add_option("--tol-cert", f.tol_cert, "Certificate tolerance (default 1e-9)");
  if (!problem) return;
  sub->add_option("--mode", f.mode, "Algorithm; overrides the file's \"mode\"");
  sub->add_option("--certificate", f.certificate_out, "Write the certificate to this file");
  sub->add_option("--tol-recon", f.tol_recon, "Reconstruction tolerance (default 1e-9)");
  sub->add_option("--tol-det", f.tol_det, "Determinant tolerance (default 1e-9)");
  sub->add_option("--pivot-floor", f.pivot_floor, "Smallest admissible pivot (default 1e-3)");
  sub->add_option("--max-degree", f.max_degree, "Polynomial degree cap (default 64)");
  sub->add_option("--t-res", f.t_res, "Time samples of a homotopy (default 64)");
  sub->add_option("--seed", f.seed, "Seed echoed in the report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elementary factorizations of special-linear matrices over function rings, with certificates"};
  app.set_version_flag("--version", std::string(sk1_version()));
  app.require_subcommand(1);

  Flags f;
  auto* factor = app.add_subcommand("factor", "Factor a matrix (modes: gauss, near-identity)");
  auto* lift = app.add_subcommand("lift", "Smooth a continuous factorization (modes: smooth-lift, representative)");
  auto* certify = app.add_subcommand("certify", "Homotopy certificate (modes: homotopy, contractible)");
  auto* verify = app.add_subcommand("verify", "Re-multiply a certificate independently");
  for (auto* s : {factor, lift, certify}) add_common(s, f, true);
  add_common(verify, f, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : SK1_ERR_PARSE;
  }
  for (auto* s : {factor, lift, certify, verify})
    if (s->parsed()) return run(s->get_name(), f);
  return SK1_ERR_PARSE;
}
