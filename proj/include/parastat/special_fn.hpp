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

#ifndef PARASTAT_SPECIAL_FN_HPP
#define PARASTAT_SPECIAL_FN_HPP

#include <complex>
#include <functional>

#include "parastat/error.hpp"
#include "parastat/types.hpp"

namespace parastat::special {

/// Order of a modified Bessel function restricted to nu = k/2, k >= -1.
class BesselOrder {
public:
    /// nu = twice / 2.
    static BesselOrder from_twice(int twice);
    /// Throws std::domain_error unless 2*nu is an integer >= -1.
    explicit BesselOrder(double nu);

    double value() const noexcept { return 0.5 * twice_; }
    int twice() const noexcept { return twice_; }
    bool is_half_integer() const noexcept { return twice_ % 2 != 0; }
    BesselOrder next() const { return from_twice(twice_ + 2); }

private:
    BesselOrder() = default;
    int twice_ = 0;
};

/// Order (p-2)/2, which pairs with the even occupation sector.
inline BesselOrder even_order(ParaOrder p) { return BesselOrder::from_twice(p.value() - 2); }
/// Order p/2, which pairs with the odd occupation sector.
inline BesselOrder odd_order(ParaOrder p) { return BesselOrder::from_twice(p.value()); }

// ---------------------------------------------------------------------------
// Gamma

/// Gamma(x) for x > 0 (Lanczos). Throws std::domain_error for x <= 0 and
/// std::overflow_error once the result leaves double range.
double gamma_fn(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

// ---------------------------------------------------------------------------
// Modified Bessel functions

double bessel_i(BesselOrder nu, double x);
/// exp(-x) I_nu(x); finite for all x >= 0 (except nu = -1/2 at x = 0).
double bessel_i_scaled(BesselOrder nu, double x);

double bessel_k(BesselOrder nu, double x);
/// exp(x) K_nu(x).
double bessel_k_scaled(BesselOrder nu, double x);

// ---------------------------------------------------------------------------
// Gauss hypergeometric function

enum class Hyp2F1Method { kDirectSeries, kEulerTerminating, kConnection };

struct Hyp2F1Result {
    double value = 0.0;
    double err_est = 0.0;
    long terms = 0;
    Hyp2F1Method method = Hyp2F1Method::kDirectSeries;
};

/// 2F1(a, b; c; z) for real parameters and 0 <= z < 1.
///
/// Plain series for z <= 0.9. Above that, the Euler transform
/// (1-z)^(c-a-b) 2F1(c-a, c-b; c; z) is used when it terminates, the z -> 1-z
/// connection formula when c-a-b is not an integer, and otherwise the plain
/// series with a larger budget. Throws ConvergenceError (with the partial
/// sum and a tail bound) when the budget runs out.
Hyp2F1Result hyp2f1(double a, double b, double c, double z, long max_terms = 2'000'000);

// ---------------------------------------------------------------------------
// p-exponential  e_p(x) = sum_n x^n / (n)_p!

template <class T>
struct PExpParts {
    T even{};
    T odd{};
    T total() const { return even + odd; }
};

/// Even and odd parts of e_p by direct series. Negative real arguments use
/// the parity symmetries e_{e,o}(-x) = +-e_{e,o}(x).
PExpParts<double> p_exp_parts(double x, ParaOrder p);
PExpParts<std::complex<double>> p_exp_parts(std::complex<double> z, ParaOrder p);

double p_exp(double x, ParaOrder p);
double p_exp_even(double x, ParaOrder p);
double p_exp_odd(double x, ParaOrder p);
std::complex<double> p_exp(std::complex<double> z, ParaOrder p);

/// e_{e,o}(x) from modified Bessel functions, x > 0.
PExpParts<double> p_exp_parts_bessel(double x, ParaOrder p);

/// log e_{e,o}(x) for x >= 0, valid well past the range where e_p overflows.
PExpParts<double> log_p_exp_parts(double x, ParaOrder p);

/// Largest |argument| accepted by the p-exponential series.
inline constexpr double kPExpMaxArgument = 700.0;

// ---------------------------------------------------------------------------
// Quadrature on (0, inf)

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_refinements = 10;

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double err_est = 0.0;
    int levels = 0;
    long evaluations = 0;
};

using Integrand = std::function<double(double)>;

/// Double-exponential (exp-sinh) quadrature of f over (0, inf). Deterministic.
/// Throws QuadratureError with the best value if the tolerance is not met,
/// and std::domain_error if f returns a non-finite value.
QuadratureResult integrate_semi_infinite(const Integrand& f, const QuadratureSpec& spec = {});

} // namespace parastat::special

#endif // PARASTAT_SPECIAL_FN_HPP
