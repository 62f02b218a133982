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

#ifndef PARASTAT_HBT_HPP
#define PARASTAT_HBT_HPP

#include <optional>
#include <string>
#include <string_view>

#include "parastat/special_fn.hpp"
#include "parastat/types.hpp"

// Zero-delay intensity correlations G^(n)(0) of a single paraboson mode in the
// maximum-entropy state rho = (1 + <N>)^{-1} (<N> / (1 + <N>))^N.
//
// Notation: mean_n is the mean occupation <N>. Correlation orders are written
// n = 2k (even) or n = 2k + 1 (odd); k is called `pair` in the code so that it
// never collides with the mean occupation. Every G carries a factor c_bar^n.

namespace parastat::hbt {

class ThermalState {
public:
    /// Throws std::domain_error unless mean_n > 0 and c_bar > 0.
    ThermalState(double mean_n, ParaOrder p, double c_bar = 1.0);

    double mean_n() const noexcept { return mean_n_; }
    ParaOrder p() const noexcept { return p_; }
    double c_bar() const noexcept { return c_bar_; }
    /// r = 1 + 1/<N>
    double r() const noexcept { return 1.0 + 1.0 / mean_n_; }
    /// q = <N> / (1 + <N>) = 1/r
    double q() const noexcept { return mean_n_ / (1.0 + mean_n_); }

private:
    double mean_n_;
    ParaOrder p_;
    double c_bar_;
};

enum class Method { kClosedForm, kHypergeometric, kQuadrature, kFockOracle };

std::string_view to_string(Method method);
/// Accepts closed-form | hypergeometric | quadrature | fock-oracle.
Method method_from_string(std::string_view name);

struct ParityParts {
    double even = 0.0; ///< contribution of the even-occupation part of rho
    double odd = 0.0;
};

struct CorrelationValue {
    int order = 1;
    double value = 0.0;
    Method method = Method::kClosedForm;
    double err_est = 0.0;
    std::optional<ParityParts> parity_parts;
};

/// P(n) = q^n / (1 + <N>).
double thermal_pmf(Occupation n, const ThermalState& state);

/// Weight function of the diagonal coherent-state representation,
/// (r^{p/2} / <N>) K_nu(r x) / K_nu(x), nu = (p-2)/2 (even) or p/2 (odd).
double phi_max_s(double x, const ThermalState& state, Parity branch);

/// Trace of the even or odd part of rho, int_0^inf mu_s(x) Phi_s(x) dx by
/// quadrature. Equals the summed thermal weight of that sector.
special::QuadratureResult parity_trace(const ThermalState& state, Parity branch,
                                       const special::QuadratureSpec& spec = {});

/// G^(1)..G^(4) from their closed forms.
CorrelationValue g_closed(int order, const ThermalState& state);

/// lambda_p = G^(2) / (G^(1))^2 = 2 (1 + 2<N>) / (p + 2<N>).
double lambda_p(const ThermalState& state);

/// The bracket shared by G^(3) and G^(4): (a p^2 + b p + c) / (3 (1 + 2<N>)^3).
double higher_order_bracket(const ThermalState& state);

enum class ParityFilter { kEven, kOdd, kBoth };

/// G^(n) for any n >= 1 through 2F1(.; .; .; r^{-2}). The value holds the
/// selected parity part(s); parity_parts always holds both.
CorrelationValue g_hypergeometric(int order, const ThermalState& state, ParityFilter filter = ParityFilter::kBoth);

/// G^(n) from the K_nu(r x) I_nu'(x) integral representations, n <= 8.
CorrelationValue g_quadrature(int order, const ThermalState& state, const special::QuadratureSpec& spec = {});

/// Leading (terms = 1) or leading + first subleading (terms = 2) powers of p in
/// the large-p expansion of G^(n), n <= 8. Parity parts and their sum.
CorrelationValue g_p_expansion(int order, const ThermalState& state, int terms);

/// The printed total line of the large-p expansion (as opposed to the sum of
/// the two parity lines); the two agree identically.
double g_p_expansion_total(int order, const ThermalState& state, int terms);

/// Dispatch to one evaluation route. Orders above 4 are rejected for the
/// closed form.
CorrelationValue g_by_method(int order, const ThermalState& state, Method method,
                             const special::QuadratureSpec& spec = {});

struct RecursionCheck {
    double lhs = 0.0; ///< G^(n_e)
    double rhs = 0.0; ///< n_e c_bar <N> G^(n_e - 1)
    double rel_diff = 0.0;
};

/// G^(n_e) against n_e c_bar <N> G^(n_e - 1) for n_e in {2, 4, 6}.
RecursionCheck g_recursion_check(int even_order, const ThermalState& state, Method method,
                                 const special::QuadratureSpec& spec = {});

} // namespace parastat::hbt

#endif // PARASTAT_HBT_HPP
