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

#include "parastat/coherent.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "parastat/para_algebra.hpp"

namespace parastat::coherent {

namespace {

using special::BesselOrder;

constexpr long kGuardTerms = 10;
constexpr long kMaxIntegralOrder = 30;

void check_intensity(double x, const char* where)
{
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::domain_error(std::string(where) + ": x = |alpha|^2 must be finite and >= 0");
}

double log_p_exp(double x, ParaOrder p)
{
    const special::PExpParts<double> logs = special::log_p_exp_parts(x, p);
    if (x == 0.0)
        return 0.0;
    return logs.even + std::log1p(std::exp(logs.odd - logs.even));
}

double log_weight(long n, ParaOrder p)
{
    return std::log(static_cast<double>(algebra::ladder_up_coeff_sq(Occupation{n}, p)));
}

double to_double(const algebra::BigInt& value)
{
    return value.convert_to<double>();
}

} // namespace

ModeSplit mode_split(double x, ParaOrder p)
{
    check_intensity(x, "mode_split");
    if (x == 0.0)
        return {1.0, 0.0, 1.0};
    if (p.value() == 1) {
        // cosh/sinh split: the Bessel difference below cancels completely here
        const double d = std::exp(-2.0 * x);
        return {0.5 * (1.0 + d), -0.5 * std::expm1(-2.0 * x), d};
    }
    const special::PExpParts<double> logs = special::log_p_exp_parts(x, p);
    // P_o / P_e = e_o / e_e
    const double odd_over_even = std::exp(logs.odd - logs.even);
    ModeSplit split;
    split.p_even = 1.0 / (1.0 + odd_over_even);
    split.p_odd = odd_over_even / (1.0 + odd_over_even);
    // (I_{(p-2)/2} - I_{p/2}) / (I_{(p-2)/2} + I_{p/2})
    const double i_even = special::bessel_i_scaled(special::even_order(p), x);
    const double i_odd = special::bessel_i_scaled(special::odd_order(p), x);
    split.d = (i_even - i_odd) / (i_even + i_odd);
    return split;
}

double p_poisson_pmf(Occupation n, double x, ParaOrder p)
{
    check_intensity(x, "p_poisson_pmf");
    if (x == 0.0)
        return n.value() == 0 ? 1.0 : 0.0;
    const double log_pmf = static_cast<double>(n.value()) * std::log(x) - algebra::log_p_factorial(n, p)
                           - log_p_exp(x, p);
    return std::exp(log_pmf);
}

long p_poisson_cutoff(double x, ParaOrder p, double tail_tol)
{
    check_intensity(x, "p_poisson_cutoff");
    if (x == 0.0)
        return kGuardTerms;
    // Walk log P(n) upward. Past the mode the ratios x / c_n^2 decrease, so the
    // tail beyond n is at most P(n+1) / (1 - x / c_{n+1}^2).
    double log_pmf = -log_p_exp(x, p);
    const double log_x = std::log(x);
    for (long n = 0;; ++n) {
        const double log_next = log_pmf + log_x - log_weight(n, p);
        const double rho = x / static_cast<double>(algebra::ladder_up_coeff_sq(Occupation{n + 1}, p));
        if (rho < 1.0 && static_cast<double>(n) > x) {
            const double tail = std::exp(log_next) / (1.0 - rho);
            if (tail < tail_tol)
                return n + kGuardTerms;
        }
        log_pmf = log_next;
    }
}

std::vector<double> p_poisson_table(double x, ParaOrder p)
{
    const long cutoff = p_poisson_cutoff(x, p);
    std::vector<double> table(static_cast<std::size_t>(cutoff) + 1, 0.0);
    if (x == 0.0) {
        table[0] = 1.0;
        return table;
    }
    const double log_x = std::log(x);
    double log_pmf = -log_p_exp(x, p);
    for (long n = 0; n <= cutoff; ++n) {
        table[static_cast<std::size_t>(n)] = std::exp(log_pmf);
        log_pmf += log_x - log_weight(n, p);
    }
    return table;
}

double p_poisson_asymptotic(Occupation n, double x, ParaOrder p, Regime regime)
{
    check_intensity(x, "p_poisson_asymptotic");
    const double log_factorial = algebra::log_p_factorial(n, p);
    const double nd = static_cast<double>(n.value());
    if (regime == Regime::kSmall) {
        if (x > 0.1)
            throw std::domain_error("p_poisson_asymptotic: small-x regime requires x <= 0.1");
        const double leading = (n.value() == 0) ? 1.0 : std::exp(nd * std::log(x) - log_factorial);
        return leading * (1.0 - x / p.real());
    }
    if (x < std::max(10.0, p.real()))
        throw std::domain_error("p_poisson_asymptotic: large-x regime requires x >= max(10, p)");
    // 1/e_p(x) ~ sqrt(pi) x^{(p-1)/2} e^{-x} / (2^{(p-1)/2} Gamma(p/2))
    const double shift = 0.5 * (p.real() - 1.0);
    const double log_value = 0.5 * std::log(std::numbers::pi) - shift * std::log(2.0) - special::log_gamma(p.half())
                             + (nd + shift) * std::log(x) - x - log_factorial;
    return std::exp(log_value);
}

MomentPair coherent_moments(double x, ParaOrder p)
{
    check_intensity(x, "coherent_moments");
    const double d = mode_split(x, p).d;
    const double s = 1.0 - p.real();
    MomentPair m;
    m.mean = x + 0.5 * s - 0.5 * d * s;
    m.variance = x + d * s * x + 0.25 * s * s - 0.25 * d * d * s * s;
    return m;
}

MomentPair coherent_moments_large_x(double x, ParaOrder p)
{
    check_intensity(x, "coherent_moments_large_x");
    const double s = 1.0 - p.real();
    return {x + 0.5 * s, x + 0.5 * s * s};
}

MomentPair coherent_moments_direct(double x, ParaOrder p)
{
    const std::vector<double> table = p_poisson_table(x, p);
    double mean = 0.0;
    for (std::size_t n = 0; n < table.size(); ++n)
        mean += static_cast<double>(n) * table[n];
    double variance = 0.0;
    for (std::size_t n = 0; n < table.size(); ++n) {
        const double dev = static_cast<double>(n) - mean;
        variance += dev * dev * table[n];
    }
    return {mean, variance};
}

double p_gaussian_pdf(double n, double x, ParaOrder p, MomentSource source)
{
    const MomentPair m = (source == MomentSource::kExact) ? coherent_moments(x, p) : coherent_moments_large_x(x, p);
    if (!(m.variance > 0.0))
        throw std::domain_error("p_gaussian_pdf: variance must be positive (x too small)");
    const double sigma = std::sqrt(m.variance);
    const double y = (n - m.mean) / sigma;
    return std::exp(-0.5 * y * y) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

double p_gaussian_correction(Occupation n, double x, ParaOrder p)
{
    check_intensity(x, "p_gaussian_correction");
    if (x < 10.0)
        throw std::domain_error("p_gaussian_correction: requires x >= 10");
    const MomentPair m = coherent_moments_large_x(x, p);
    const double sigma = std::sqrt(m.variance);
    const double y = (static_cast<double>(n.value()) - m.mean) / sigma;
    const double pv = p.real();
    const double y2 = y * y;
    const double first = 0.5 * y - y * y2 / 6.0;
    const double constant = n.is_even() ? (1.0 / 12.0 + 0.25 * pv) : (-5.0 / 12.0 + 0.75 * pv);
    const double second = constant - 0.25 * pv * pv - y2 * (0.125 + 0.5 * pv - 0.25 * pv * pv)
                          + y2 * y2 / 6.0 - y2 * y2 * y2 / 72.0;
    const double gaussian = std::exp(-0.5 * y2) / (sigma * std::sqrt(2.0 * std::numbers::pi));
    return gaussian * (1.0 - first / sigma - second / m.variance);
}

OverlapParts overlap_parts(CoherentAmplitude alpha, CoherentAmplitude beta, ParaOrder p)
{
    const double xa = alpha.intensity();
    const double xb = beta.intensity();
    const special::PExpParts<double> ea = special::p_exp_parts(xa, p);
    const special::PExpParts<double> eb = special::p_exp_parts(xb, p);
    const special::PExpParts<std::complex<double>> mixed =
        special::p_exp_parts(std::conj(alpha.alpha()) * beta.alpha(), p);

    // sqrt(P_e(a) P_e(b)) <alpha_e|beta_e> with P_e = e_e / e_p and
    // <alpha_e|beta_e> = e_e(a* b) / sqrt(e_e(|a|^2) e_e(|b|^2)); the sector
    // normalizations cancel, which also covers the empty odd sector at alpha = 0.
    const double norm = std::sqrt(ea.total() * eb.total());
    OverlapParts parts;
    parts.even = mixed.even / norm;
    parts.odd = mixed.odd / norm;
    parts.cross = {0.0, 0.0};
    return parts;
}

std::complex<double> overlap(CoherentAmplitude alpha, CoherentAmplitude beta, ParaOrder p)
{
    return overlap_parts(alpha, beta, p).total();
}

ParityNorms parity_component_norms(CoherentAmplitude alpha, ParaOrder p)
{
    const ModeSplit split = mode_split(alpha.intensity(), p);
    return {std::sqrt(2.0 * split.p_even), std::sqrt(2.0 * split.p_odd)};
}

IntegralValue gamma_generalized(Occupation n, ParaOrder p, const special::QuadratureSpec& spec)
{
    if (n.value() > kMaxIntegralOrder)
        throw std::domain_error("gamma_generalized: n must be <= 30");
    const BesselOrder nu = n.is_even() ? special::even_order(p) : special::odd_order(p);
    const double power = p.half() + static_cast<double>(n.value());
    const special::Integrand integrand = [nu, power](double t) {
        // t^{p/2+n} K_nu(t), with the exponential folded in to avoid overflow
        return std::exp(power * std::log(t) - t) * special::bessel_k_scaled(nu, t);
    };
    const special::QuadratureResult q = special::integrate_semi_infinite(integrand, spec);
    const double prefactor = std::pow(2.0, 1.0 - p.half()) / special::gamma_fn(p.half());
    return {prefactor * q.value, prefactor * q.err_est};
}

IntegralValue completeness_diagonal(Occupation n, ParaOrder p, const special::QuadratureSpec& spec)
{
    if (n.value() > kMaxIntegralOrder)
        throw std::domain_error("completeness_diagonal: n must be <= 30");
    // Angular integration of |<n|alpha_s>|^2 against mu_s(|alpha|^2) d^2alpha / pi
    // leaves int_0^inf mu_s(x) x^n / ((n)_p! e_s(x)) dx, s the sector of n.
    const bool even = n.is_even();
    const BesselOrder nu = even ? special::even_order(p) : special::odd_order(p);
    const double nd = static_cast<double>(n.value());
    const special::Integrand integrand = [=](double x) {
        const special::PExpParts<double> logs = special::log_p_exp_parts(x, p);
        const double log_sector = even ? logs.even : logs.odd;
        // mu_s(x) = x K_nu(x) I_nu(x) = x (e^x K_nu)(e^{-x} I_nu)
        const double measure = x * special::bessel_k_scaled(nu, x) * special::bessel_i_scaled(nu, x);
        return measure * std::exp(nd * std::log(x) - log_sector);
    };
    const special::QuadratureResult q = special::integrate_semi_infinite(integrand, spec);
    const double factorial = to_double(algebra::p_factorial(n, p));
    return {q.value / factorial, q.err_est / factorial};
}

} // namespace parastat::coherent
