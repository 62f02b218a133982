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

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "parastat/special_fn.hpp"
#include "special_detail.hpp"

namespace parastat::special {

namespace {

constexpr double kLanczosG = 671.0 / 128.0;
constexpr std::array<double, 14> kLanczosCoeff = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
    0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5};
constexpr double kLanczosC0 = 0.999999999999997092;
constexpr double kSqrtTwoPi = 2.5066282746310005024;

double lanczos_sum(double x)
{
    double ser = kLanczosC0;
    double y = x;
    for (double c : kLanczosCoeff)
        ser += c / ++y;
    return ser;
}

// ---------------------------------------------------------------------------
// I_nu

// Switch from the power series to the large-argument expansion. The Hankel
// expansion drops a relative e^{-2x} piece, so x must be well above 10.
double asymptotic_threshold(double nu)
{
    return std::max(25.0, 2.0 * nu * nu);
}

double bessel_i_series_scaled(double nu, double x)
{
    // sum_m (x/2)^{2m+nu} / (m! Gamma(m+nu+1)), times e^{-x}; every term is positive
    const double quarter_x2 = 0.25 * x * x;
    double term = std::exp(nu * std::log(0.5 * x) - log_gamma(nu + 1.0) - x);
    double sum = term;
    for (int m = 1; m < 100000; ++m) {
        term *= quarter_x2 / (static_cast<double>(m) * (m + nu));
        sum += term;
        if (term < 1e-17 * sum && m > 0.5 * x)
            break;
    }
    return sum;
}

double bessel_i_asymptotic_scaled(double nu, double x)
{
    // e^{-x} I_nu(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k a_k(nu) / x^k
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    double last = 1.0;
    for (int k = 1; k < 500; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (8.0 * k * x);
        if (term == 0.0)
            break;
        if (std::abs(term) > std::abs(last))
            break;
        sum += term;
        last = term;
        if (std::abs(term) < 1e-17 * std::abs(sum))
            break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

// ---------------------------------------------------------------------------
// K_nu

// e^x K_{n+1/2}(x) = sqrt(pi/2x) sum_{k=0}^n (n+k)! / (k! (n-k)!) (2x)^{-k}
double bessel_k_half_integer_scaled(int n, double x)
{
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= n; ++k) {
        term *= static_cast<double>((n + k) * (n - k + 1)) / (k * 2.0 * x);
        sum += term;
    }
    return std::sqrt(std::numbers::pi / (2.0 * x)) * sum;
}

struct KPair {
    double k0;
    double k1;
};

// K_0, K_1 by their ascending series, x <= 2.
KPair bessel_k01_series(double x)
{
    const double quarter_x2 = 0.25 * x * x;
    const double log_half_x = std::log(0.5 * x);
    const double i0 = bessel_i_series_scaled(0.0, x) * std::exp(x);
    const double i1 = bessel_i_series_scaled(1.0, x) * std::exp(x);

    // K_0 = -(ln(x/2) + gamma) I_0 + sum_{k>=1} H_k (x^2/4)^k / (k!)^2
    double k0_sum = 0.0;
    double term = 1.0;
    double harmonic = 0.0;
    for (int k = 1; k < 200; ++k) {
        term *= quarter_x2 / (static_cast<double>(k) * k);
        harmonic += 1.0 / k;
        k0_sum += harmonic * term;
        if (harmonic * term < 1e-18 * std::abs(k0_sum))
            break;
    }
    const double k0 = -(log_half_x + std::numbers::egamma) * i0 + k0_sum;

    // K_1 = 1/x + ln(x/2) I_1 - (x/4) sum_{k>=0} (psi(k+1) + psi(k+2)) (x^2/4)^k / (k! (k+1)!)
    double k1_sum = 0.0;
    term = 1.0;
    double psi_k1 = -std::numbers::egamma;      // psi(k+1)
    double psi_k2 = 1.0 - std::numbers::egamma; // psi(k+2)
    for (int k = 0; k < 200; ++k) {
        if (k > 0) {
            term *= quarter_x2 / (static_cast<double>(k) * (k + 1));
            psi_k1 += 1.0 / k;
            psi_k2 += 1.0 / (k + 1);
        }
        const double contrib = (psi_k1 + psi_k2) * term;
        k1_sum += contrib;
        if (k > 2 && std::abs(contrib) < 1e-18 * std::abs(k1_sum))
            break;
    }
    const double k1 = 1.0 / x + log_half_x * i1 - 0.25 * x * k1_sum;
    return {k0, k1};
}

// e^x K_0, e^x K_1 by Steed's continued fraction, x > 2.
KPair bessel_k01_cf_scaled(double x)
{
    constexpr double kEps = 1e-16;
    constexpr int kMaxIter = 100000;
    const double a1 = 0.25;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    int i = 2;
    for (; i <= kMaxIter; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps)
            break;
    }
    if (i > kMaxIter)
        throw ConvergenceError("bessel_k: continued fraction did not converge", 0.0,
                               std::numeric_limits<double>::infinity());
    h *= a1;
    const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
    const double k1 = k0 * (x + 0.5 - h) / x;
    return {k0, k1};
}

void check_k_argument(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("bessel_k: argument must be > 0, got " + std::to_string(x));
}

} // namespace

// ---------------------------------------------------------------------------

BesselOrder BesselOrder::from_twice(int twice)
{
    if (twice < -1)
        throw std::domain_error("BesselOrder: 2*nu must be >= -1, got " + std::to_string(twice));
    BesselOrder order;
    order.twice_ = twice;
    return order;
}

BesselOrder::BesselOrder(double nu)
{
    const double twice = 2.0 * nu;
    if (twice != std::round(twice) || twice < -1.0)
        throw std::domain_error("BesselOrder: nu must be k/2 with integer k >= -1");
    twice_ = static_cast<int>(twice);
}

double log_gamma(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("log_gamma: argument must be > 0");
    const double tmp = x + kLanczosG;
    return (x + 0.5) * std::log(tmp) - tmp + std::log(kSqrtTwoPi * lanczos_sum(x) / x);
}

double gamma_fn(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("gamma_fn: argument must be > 0, got " + std::to_string(x));
    if (x > 171.6)
        throw std::overflow_error("gamma_fn: result overflows for x = " + std::to_string(x));
    // Gamma(x) = sqrt(2 pi) * t^{x+1/2} e^{-t} * S(x) / x, t = x + g; the power is
    // split in two so that neither half overflows before the exponential.
    const double t = x + kLanczosG;
    const double half_power = std::pow(t, 0.5 * (x + 0.5));
    return half_power * (half_power * std::exp(-t)) * kSqrtTwoPi * lanczos_sum(x) / x;
}

namespace detail {

double gamma_any(double x)
{
    if (x > 0.0)
        return gamma_fn(x);
    if (x == std::floor(x))
        throw std::domain_error("gamma: pole at non-positive integer");
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
}

double rgamma_any(double x)
{
    if (x <= 0.0 && x == std::floor(x))
        return 0.0;
    return 1.0 / gamma_any(x);
}

} // namespace detail

double bessel_i_scaled(BesselOrder nu, double x)
{
    if (!(x >= 0.0))
        throw std::domain_error("bessel_i: argument must be >= 0");
    if (x == 0.0) {
        if (nu.twice() == 0)
            return 1.0;
        if (nu.twice() > 0)
            return 0.0;
        throw std::domain_error("bessel_i: I_{-1/2} diverges at x = 0");
    }
    const double v = nu.value();
    if (x >= asymptotic_threshold(v))
        return bessel_i_asymptotic_scaled(v, x);
    return bessel_i_series_scaled(v, x);
}

double bessel_i(BesselOrder nu, double x)
{
    if (x > 709.0)
        throw std::overflow_error("bessel_i: I_nu(x) overflows for x = " + std::to_string(x));
    const double scaled = bessel_i_scaled(nu, x);
    if (x == 0.0)
        return scaled;
    return scaled * std::exp(x);
}

double bessel_k_scaled(BesselOrder nu, double x)
{
    check_k_argument(x);
    if (nu.is_half_integer()) {
        // K_{-1/2} = K_{1/2}
        const int n = std::abs(nu.twice()) / 2;
        return bessel_k_half_integer_scaled(n, x);
    }
    KPair pair;
    if (x <= 2.0) {
        pair = bessel_k01_series(x);
        pair.k0 *= std::exp(x);
        pair.k1 *= std::exp(x);
    } else {
        pair = bessel_k01_cf_scaled(x);
    }
    const int order = nu.twice() / 2;
    if (order == 0)
        return pair.k0;
    // upward recurrence K_{k+1} = K_{k-1} + (2k/x) K_k is stable for K
    double prev = pair.k0;
    double cur = pair.k1;
    for (int k = 1; k < order; ++k) {
        const double next = prev + (2.0 * k / x) * cur;
        prev = cur;
        cur = next;
    }
    return cur;
}

double bessel_k(BesselOrder nu, double x)
{
    check_k_argument(x);
    const double scaled = bessel_k_scaled(nu, x);
    if (!std::isfinite(scaled))
        throw std::overflow_error("bessel_k: K_nu(x) overflows for x = " + std::to_string(x));
    return scaled * std::exp(-x);
}

} // namespace parastat::special
