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

#include "parastat/hbt.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "parastat/fock_oracle.hpp"

namespace parastat::hbt {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxQuadratureOrder = 8;
constexpr int kMaxExpansionOrder = 8;

void check_order(int order, const char* where)
{
    if (order < 1)
        throw std::domain_error(std::string(where) + ": correlation order must be >= 1");
}

double factorial(int k)
{
    double f = 1.0;
    for (int i = 2; i <= k; ++i)
        f *= i;
    return f;
}

// One parity part of G^(n) in hypergeometric form:
//   2^n / (<N> r^{r_power}) * Gamma(g1) Gamma(g2) / Gamma(g3) * 2F1(a, b; c; r^{-2})
struct HypergeometricBranch {
    int r_power;
    double g1, g2, g3;
    double a, b, c;
};

struct BranchValue {
    double value;
    double err_est;
};

BranchValue evaluate_branch(int order, const ThermalState& state, const HypergeometricBranch& br)
{
    const double r = state.r();
    const double z = state.q() * state.q(); // r^{-2}
    const special::Hyp2F1Result f = special::hyp2f1(br.a, br.b, br.c, z);
    const double log_prefactor = order * std::log(2.0) - std::log(state.mean_n()) - br.r_power * std::log(r)
                                 + special::log_gamma(br.g1) + special::log_gamma(br.g2) - special::log_gamma(br.g3);
    const double prefactor = std::exp(log_prefactor);
    const double value = prefactor * f.value;
    // log-gamma and exp each contribute ~|log_prefactor| ulps
    const double rounding = (std::abs(log_prefactor) + 8.0) * kEps * std::abs(value);
    return {value, prefactor * f.err_est + rounding};
}

double relative_difference(double lhs, double rhs)
{
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

} // namespace

ThermalState::ThermalState(double mean_n, ParaOrder p, double c_bar) : mean_n_(mean_n), p_(p), c_bar_(c_bar)
{
    if (!(mean_n > 0.0) || !std::isfinite(mean_n))
        throw std::domain_error("ThermalState: mean occupation must be finite and > 0");
    if (!(c_bar > 0.0) || !std::isfinite(c_bar))
        throw std::domain_error("ThermalState: c_bar must be finite and > 0");
}

std::string_view to_string(Method method)
{
    switch (method) {
    case Method::kClosedForm:
        return "closed-form";
    case Method::kHypergeometric:
        return "hypergeometric";
    case Method::kQuadrature:
        return "quadrature";
    case Method::kFockOracle:
        return "fock-oracle";
    }
    return "unknown";
}

Method method_from_string(std::string_view name)
{
    for (Method m : {Method::kClosedForm, Method::kHypergeometric, Method::kQuadrature, Method::kFockOracle})
        if (to_string(m) == name)
            return m;
    throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

double thermal_pmf(Occupation n, const ThermalState& state)
{
    return std::pow(state.q(), static_cast<double>(n.value())) / (1.0 + state.mean_n());
}

double phi_max_s(double x, const ThermalState& state, Parity branch)
{
    if (!(x > 0.0))
        throw std::domain_error("phi_max_s: x must be > 0");
    const ParaOrder p = state.p();
    const special::BesselOrder nu = (branch == Parity::kEven) ? special::even_order(p) : special::odd_order(p);
    const double r = state.r();
    // K_nu(r x) / K_nu(x) = (e^{rx} K_nu(rx)) / (e^x K_nu(x)) * e^{-(r-1) x}
    const double ratio = special::bessel_k_scaled(nu, r * x) / special::bessel_k_scaled(nu, x)
                         * std::exp(-(r - 1.0) * x);
    return std::pow(r, p.half()) / state.mean_n() * ratio;
}

special::QuadratureResult parity_trace(const ThermalState& state, Parity branch, const special::QuadratureSpec& spec)
{
    const ParaOrder p = state.p();
    const special::BesselOrder nu = (branch == Parity::kEven) ? special::even_order(p) : special::odd_order(p);
    const special::Integrand integrand = [&state, branch, nu](double x) {
        // mu_s(x) Phi_s(x) with mu_s(x) = x K_nu(x) I_nu(x)
        const double measure = x * special::bessel_k_scaled(nu, x) * special::bessel_i_scaled(nu, x);
        return measure * phi_max_s(x, state, branch);
    };
    return special::integrate_semi_infinite(integrand, spec);
}

double lambda_p(const ThermalState& state)
{
    const double m = state.mean_n();
    return 2.0 * (1.0 + 2.0 * m) / (state.p().real() + 2.0 * m);
}

double higher_order_bracket(const ThermalState& state)
{
    const double m = state.mean_n();
    const double p = state.p().real();
    const double a = 1.0 + 2.0 * m;
    const double b = 2.0 * (1.0 + 4.0 * m + 6.0 * m * m);
    const double c = 8.0 * m * (1.0 + 3.0 * m + 3.0 * m * m);
    return (a * p * p + b * p + c) / (3.0 * a * a * a);
}

CorrelationValue g_closed(int order, const ThermalState& state)
{
    if (order < 1 || order > 4)
        throw std::domain_error("g_closed: closed forms exist for orders 1..4 only");
    const double m = state.mean_n();
    const double scaled_mean = state.c_bar() * m;
    const double first_bracket = (state.p().real() + 2.0 * m) / (1.0 + 2.0 * m);
    double value = 0.0;
    switch (order) {
    case 1:
        value = scaled_mean * first_bracket;
        break;
    case 2:
        value = 2.0 * scaled_mean * scaled_mean * first_bracket;
        break;
    case 3:
        value = 6.0 * std::pow(scaled_mean, 3) * higher_order_bracket(state);
        break;
    default:
        value = 24.0 * std::pow(scaled_mean, 4) * higher_order_bracket(state);
        break;
    }
    return {order, value, Method::kClosedForm, 16.0 * kEps * std::abs(value), std::nullopt};
}

CorrelationValue g_hypergeometric(int order, const ThermalState& state, ParityFilter filter)
{
    check_order(order, "g_hypergeometric");
    const double h = state.p().half();
    const double n = order;
    HypergeometricBranch even_branch{};
    HypergeometricBranch odd_branch{};
    if (order % 2 == 1) {
        even_branch = {order + 2, h + 0.5 * n + 0.5, 0.5 * n + 1.5, h + 1.0, h + 0.5 * n + 0.5, 0.5 * n + 1.5, h + 1.0};
        odd_branch = {order + 1, h + 0.5 * n + 0.5, 0.5 * n + 0.5, h, h + 0.5 * n + 0.5, 0.5 * n + 0.5, h};
    } else {
        even_branch = {order + 1, h + 0.5 * n, 0.5 * n + 1.0, h, h + 0.5 * n, 0.5 * n + 1.0, h};
        odd_branch = {order + 2, h + 0.5 * n + 1.0, 0.5 * n + 1.0, h + 1.0, h + 0.5 * n + 1.0, 0.5 * n + 1.0, h + 1.0};
    }
    const BranchValue even = evaluate_branch(order, state, even_branch);
    const BranchValue odd = evaluate_branch(order, state, odd_branch);

    const double scale = std::pow(state.c_bar(), order);
    CorrelationValue result;
    result.order = order;
    result.method = Method::kHypergeometric;
    result.parity_parts = ParityParts{scale * even.value, scale * odd.value};
    switch (filter) {
    case ParityFilter::kEven:
        result.value = scale * even.value;
        result.err_est = scale * even.err_est;
        break;
    case ParityFilter::kOdd:
        result.value = scale * odd.value;
        result.err_est = scale * odd.err_est;
        break;
    case ParityFilter::kBoth:
        result.value = scale * (even.value + odd.value);
        result.err_est = scale * (even.err_est + odd.err_est);
        break;
    }
    return result;
}

CorrelationValue g_quadrature(int order, const ThermalState& state, const special::QuadratureSpec& spec)
{
    check_order(order, "g_quadrature");
    if (order > kMaxQuadratureOrder)
        throw std::domain_error("g_quadrature: order must be <= 8");
    const ParaOrder p = state.p();
    const special::BesselOrder k_low = special::even_order(p); // p/2 - 1
    const special::BesselOrder k_high = special::odd_order(p); // p/2
    const double r = state.r();
    const double power = order + 1.0;

    // int_0^inf x^{n+1} K_{nu_k}(r x) I_{nu_i}(x) dx, with x = s u so that the
    // integrand decays on a unit scale in u even when <N> is tiny.
    const double s = std::min(1.0, state.mean_n());
    const double jacobian = std::pow(s, power + 1.0);
    // The absolute floor is taken relative to the natural size n! <N>^n of G.
    const double prefactor_unit = std::pow(r, p.half()) / state.mean_n();
    special::QuadratureSpec scaled = spec;
    scaled.abs_tol = spec.abs_tol * factorial(order) * std::pow(state.mean_n(), order) / (prefactor_unit * jacobian);
    const auto integral = [&](special::BesselOrder nu_k, special::BesselOrder nu_i) {
        const special::Integrand f = [=](double u) {
            const double x = s * u;
            // e^{-(r-1) x} collects the exponentials of both scaled Bessel factors
            return std::exp(power * std::log(u) - (r - 1.0) * x) * special::bessel_k_scaled(nu_k, r * x)
                   * special::bessel_i_scaled(nu_i, x);
        };
        special::QuadratureResult q = special::integrate_semi_infinite(f, scaled);
        q.value *= jacobian;
        q.err_est *= jacobian;
        return q;
    };

    special::QuadratureResult even;
    special::QuadratureResult odd;
    if (order % 2 == 1) {
        even = integral(k_low, k_high);
        odd = integral(k_high, k_low);
    } else {
        even = integral(k_low, k_low);
        odd = integral(k_high, k_high);
    }
    const double prefactor = std::pow(r, p.half()) / state.mean_n() * std::pow(state.c_bar(), order);
    CorrelationValue result;
    result.order = order;
    result.method = Method::kQuadrature;
    result.parity_parts = ParityParts{prefactor * even.value, prefactor * odd.value};
    result.value = prefactor * (even.value + odd.value);
    result.err_est = prefactor * (even.err_est + odd.err_est);
    return result;
}

double g_p_expansion_total(int order, const ThermalState& state, int terms)
{
    check_order(order, "g_p_expansion_total");
    if (order > kMaxExpansionOrder)
        throw std::domain_error("g_p_expansion_total: order must be <= 8");
    if (terms != 1 && terms != 2)
        throw std::domain_error("g_p_expansion_total: terms must be 1 or 2");
    const double m = state.mean_n();
    const double p = state.p().real();
    const double a = 1.0 + 2.0 * m;
    const int pair = order / 2;
    const double k = pair;
    const double base = std::pow(2.0, k) * factorial(pair);
    double value = 0.0;
    if (order % 2 == 1) {
        // n = 2k+1
        const double prefactor = base * std::pow(m, 2.0 * k + 1.0) / std::pow(a, k + 2.0);
        double bracket = std::pow(p, k + 1.0) * a;
        if (terms == 2)
            bracket += std::pow(p, k) * (k + 1.0) * (k + 2.0 * (k + 1.0) * m + 2.0 * (k + 2.0) * m * m);
        value = prefactor * bracket;
    } else {
        // n = 2k
        const double prefactor = base * std::pow(m, 2.0 * k) / std::pow(a, k + 1.0);
        double bracket = std::pow(p, k) * a;
        if (terms == 2)
            bracket += std::pow(p, k - 1.0) * k * (k - 1.0 + 2.0 * k * m + 2.0 * (k + 1.0) * m * m);
        value = prefactor * bracket;
    }
    return value * std::pow(state.c_bar(), order);
}

CorrelationValue g_p_expansion(int order, const ThermalState& state, int terms)
{
    check_order(order, "g_p_expansion");
    if (order > kMaxExpansionOrder)
        throw std::domain_error("g_p_expansion: order must be <= 8");
    if (terms != 1 && terms != 2)
        throw std::domain_error("g_p_expansion: terms must be 1 or 2");
    const double m = state.mean_n();
    const double p = state.p().real();
    const double a = 1.0 + 2.0 * m;
    const int pair = order / 2;
    const double k = pair;
    const double base = std::pow(2.0, k) * factorial(pair);
    double even = 0.0;
    double odd = 0.0;
    if (order % 2 == 1) {
        // n = 2k+1; the odd part starts one power of p below the even part
        const double prefactor = base * std::pow(m, 2.0 * k + 1.0) / std::pow(a, k + 2.0);
        even = std::pow(p, k + 1.0) * a;
        if (terms == 2) {
            even += std::pow(p, k) * (k + 1.0) * (k + 2.0 * k * m + 2.0 * (k + 1.0) * m * m);
            odd = std::pow(p, k) * (k + 1.0) * (2.0 * m + 2.0 * m * m);
        }
        even *= prefactor;
        odd *= prefactor;
    } else {
        // n = 2k
        const double denom = std::pow(a, k + 2.0);
        even = std::pow(p, k) * a;
        odd = std::pow(p, k) * a;
        if (terms == 2) {
            even += std::pow(p, k - 1.0) * k * (k + 1.0 + 2.0 * (k + 1.0) * m + 2.0 * (k + 1.0) * m * m);
            odd += std::pow(p, k - 1.0) * k * (k - 1.0 + 2.0 * (k - 1.0) * m + 2.0 * (k + 1.0) * m * m);
        }
        even *= base * std::pow(m, 2.0 * k + 1.0) / denom;
        odd *= base * std::pow(m, 2.0 * k) * (1.0 + m) / denom;
    }
    const double scale = std::pow(state.c_bar(), order);
    CorrelationValue result;
    result.order = order;
    result.method = Method::kClosedForm;
    result.parity_parts = ParityParts{scale * even, scale * odd};
    result.value = scale * (even + odd);
    // truncation of the p-series is not bounded here; report rounding only
    result.err_est = 16.0 * kEps * std::abs(result.value);
    return result;
}

CorrelationValue g_by_method(int order, const ThermalState& state, Method method, const special::QuadratureSpec& spec)
{
    switch (method) {
    case Method::kClosedForm:
        return g_closed(order, state);
    case Method::kHypergeometric:
        return g_hypergeometric(order, state);
    case Method::kQuadrature:
        return g_quadrature(order, state, spec);
    case Method::kFockOracle:
        return fock::thermal_g(order, state);
    }
    throw std::invalid_argument("g_by_method: unknown method");
}

RecursionCheck g_recursion_check(int even_order, const ThermalState& state, Method method,
                                 const special::QuadratureSpec& spec)
{
    if (even_order != 2 && even_order != 4 && even_order != 6)
        throw std::domain_error("g_recursion_check: order must be 2, 4 or 6");
    const CorrelationValue upper = g_by_method(even_order, state, method, spec);
    const CorrelationValue lower = g_by_method(even_order - 1, state, method, spec);
    RecursionCheck check;
    check.lhs = upper.value;
    check.rhs = even_order * state.c_bar() * state.mean_n() * lower.value;
    check.rel_diff = relative_difference(check.lhs, check.rhs);
    return check;
}

} // namespace parastat::hbt
