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

#include <cmath>
#include <limits>
#include <string>

#include "parastat/para_algebra.hpp"
#include "parastat/special_fn.hpp"

namespace parastat::special {

namespace {

void check_argument(double magnitude)
{
    if (!(magnitude <= kPExpMaxArgument))
        throw std::overflow_error("p_exp: |x| = " + std::to_string(magnitude) + " exceeds the overflow guard "
                                  + std::to_string(kPExpMaxArgument));
}

// sum_n z^n / (n)_p!, split by the parity of n. Each step multiplies by
// z / (n + p) from even n and z / (n + 1) from odd n.
template <class T>
PExpParts<T> series(T z, ParaOrder p)
{
    const double magnitude = std::abs(z);
    check_argument(magnitude);
    PExpParts<T> parts;
    T term = T(1.0);
    parts.even = term;
    double abs_total = 1.0;
    for (long n = 0;; ++n) {
        term *= z / static_cast<double>(algebra::ladder_up_coeff_sq(Occupation{n}, p));
        const double size = std::abs(term);
        if (n % 2 == 0)
            parts.odd += term;
        else
            parts.even += term;
        abs_total += size;
        if (n + 1 > magnitude && size <= 1e-17 * abs_total)
            break;
    }
    return parts;
}

} // namespace

PExpParts<double> p_exp_parts(double x, ParaOrder p)
{
    if (x >= 0.0)
        return series(x, p);
    PExpParts<double> parts = series(-x, p);
    parts.odd = -parts.odd;
    return parts;
}

PExpParts<std::complex<double>> p_exp_parts(std::complex<double> z, ParaOrder p)
{
    return series(z, p);
}

double p_exp(double x, ParaOrder p) { return p_exp_parts(x, p).total(); }
double p_exp_even(double x, ParaOrder p) { return p_exp_parts(x, p).even; }
double p_exp_odd(double x, ParaOrder p) { return p_exp_parts(x, p).odd; }

std::complex<double> p_exp(std::complex<double> z, ParaOrder p)
{
    return p_exp_parts(z, p).total();
}

PExpParts<double> p_exp_parts_bessel(double x, ParaOrder p)
{
    if (!(x > 0.0))
        throw std::domain_error("p_exp_parts_bessel: x must be > 0");
    check_argument(x);
    // e_e = (x/2)^{(2-p)/2} Gamma(p/2) I_{(p-2)/2}(x), e_o the same with I_{p/2}
    const double prefactor = std::pow(0.5 * x, 1.0 - p.half()) * gamma_fn(p.half());
    return {prefactor * bessel_i(even_order(p), x), prefactor * bessel_i(odd_order(p), x)};
}

PExpParts<double> log_p_exp_parts(double x, ParaOrder p)
{
    if (!(x >= 0.0))
        throw std::domain_error("log_p_exp_parts: x must be >= 0");
    if (x <= 50.0) {
        const PExpParts<double> parts = series(x, p);
        return {std::log(parts.even), std::log(parts.odd)};
    }
    const double log_prefactor = (1.0 - p.half()) * std::log(0.5 * x) + log_gamma(p.half()) + x;
    return {log_prefactor + std::log(bessel_i_scaled(even_order(p), x)),
            log_prefactor + std::log(bessel_i_scaled(odd_order(p), x))};
}

} // namespace parastat::special
