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

/* C interface to the sk1 library. All strings are UTF-8 JSON or plain
 * NUL-terminated text. Handles are opaque; every *_new has a matching
 * *_free, and strings returned by a handle live as long as the handle. */

#ifndef SK1_SK1_H
#define SK1_SK1_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SK1_API __declspec(dllexport)
#else
#define SK1_API __attribute__((visibility("default")))
#endif

/* Values match the CLI exit codes. */
typedef enum sk1_status {
  SK1_OK = 0,
  SK1_ERR_INTERNAL = 1,
  SK1_ERR_PARSE = 2,
  SK1_ERR_CONTRACT = 3,
  SK1_ERR_VERIFY = 4,
  SK1_ERR_ARGUMENT = 5
} sk1_status;

typedef struct sk1_options sk1_options;
typedef struct sk1_report sk1_report;

SK1_API const char* sk1_version(void);
SK1_API const char* sk1_status_name(sk1_status status);

/* Parameter overrides applied on top of a problem file's "params". */
SK1_API sk1_options* sk1_options_new(void);
SK1_API void sk1_options_free(sk1_options* opts);
/* Names: tol_recon, tol_det, tol_cert, pivot_floor, margin. */
SK1_API sk1_status sk1_options_set_double(sk1_options* opts, const char* name, double value);
/* Names: max_degree, t_res, dilation, seed. */
SK1_API sk1_status sk1_options_set_int(sk1_options* opts, const char* name, long long value);

/* Runs "factor", "lift", "certify" or "verify" on JSON text. mode may be
 * NULL. On return *out holds a report (also for failures, unless the
 * arguments themselves are invalid); the return value equals its status. */
SK1_API sk1_status sk1_run(const char* command, const char* input_json, const char* mode, const sk1_options* opts,
                           sk1_report** out);

SK1_API sk1_status sk1_report_status(const sk1_report* report);
SK1_API const char* sk1_report_json(const sk1_report* report);
/* Certificate JSON for successful runs, NULL otherwise. */
SK1_API const char* sk1_report_certificate(const sk1_report* report);
/* Error message, or "" when the run succeeded. */
SK1_API const char* sk1_report_error(const sk1_report* report);
SK1_API void sk1_report_free(sk1_report* report);

#ifdef __cplusplus
}
#endif

#endif /* SK1_SK1_H */
