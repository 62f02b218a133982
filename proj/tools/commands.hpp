/*
 * Copyright 2026 The parastat Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PARASTAT_TOOLS_COMMANDS_HPP
#define PARASTAT_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "parastat/fock_oracle.hpp"
#include "parastat/hbt.hpp"

// Command logic behind the parastat executable, kept out of main() so that the
// tests can drive it with in-memory streams.

namespace parastat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitPartialFailure = 2;
inline constexpr int kExitBadInput = 3;

/// Means below this are clamped (the thermal state needs <N> > 0).
inline constexpr double kMinMean = 1e-9;

struct SweepConfig {
    std::vector<int> p_list;
    std::vector<double> mean_list;
    std::vector<int> orders;
    std::vector<hbt::Method> methods;
    double c_bar = 1.0;
    double rel_tol = 1e-10; ///< quadrature tolerance
    unsigned threads = 0;   ///< 0: hardware concurrency
};

struct SweepRow {
    int p = 1;
    double mean_n = 0.0;
    int order = 1;
    hbt::Method method = hbt::Method::kClosedForm;
    double value = 0.0;
    double err_est = 0.0;
    std::optional<double> lambda_p; ///< order 2 rows only
    std::string status;             ///< "ok", "skipped: ...", or "error: ..."

    bool failed() const { return status.rfind("error", 0) == 0; }
};

/// Rows ordered by p, mean, order, then method name. Lists are sorted and
/// deduplicated first. Points run in parallel; the output does not depend on
/// the thread count.
std::vector<SweepRow> run_sweep(SweepConfig config);

/// Largest relative spread between two methods at the same (p, mean, order),
/// over rows with status ok. Zero when no point has two methods.
double max_pairwise_spread(const std::vector<SweepRow>& rows);

/// Header p,mean_n,order,method,value,err_est,lambda_p,status.
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_sweep_json(const std::vector<SweepRow>& rows, std::ostream& out);

struct VerifyCheck {
    std::string suite;
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyOptions {
    std::vector<std::string> suites; ///< empty: all
    double rel_tol = 1e-10;
    /// Negative control: feed a ladder with one coefficient off by 1% through
    /// the oracle. Every check that touches the oracle must then fail.
    bool wrong_ladder = false;
};

/// Suite names: algebra, special-fn, coherent, hbt, oracle.
const std::vector<std::string>& verify_suite_names();
std::vector<VerifyCheck> run_verify(const VerifyOptions& options);

/// Full command line, argv[0] included. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace parastat::cli

#endif // PARASTAT_TOOLS_COMMANDS_HPP
