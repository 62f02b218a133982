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

#include "parastat/special_fn.hpp"
#include "special_detail.hpp"

namespace parastat::special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kDirectLimit = 0.9;

bool is_nonpositive_integer(double v)
{
    return v <= 0.0 && v == std::floor(v);
}

bool is_integer(double v)
{
    return v == std::floor(v);
}

// sum_m (a)_m (b)_m / ((c)_m m!) z^m with a ratio-test tail bound.
Hyp2F1Result direct_series(double a, double b, double c, double z, long max_terms)
{
    double term = 1.0;
    double sum = 1.0;
    double abs_sum = 1.0;
    for (long m = 0; m < max_terms; ++m) {
        const double ratio = (a + m) * (b + m) / ((c + m) * (m + 1.0)) * z;
        term *= ratio;
        if (term == 0.0) // a or b is a non-positive integer: the series terminated
            return {sum, 4.0 * kEps * abs_sum, m + 1, Hyp2F1Method::kDirectSeries};
        sum += term;
        abs_sum += std::abs(term);
        // Once the term ratio is below one and monotone toward z, the rest of
        // the series is dominated by a geometric series with ratio rho.
        const double next_ratio = std::abs((a + m + 1) * (b + m + 1) / ((c + m + 1) * (m + 2.0)) * z);
        const double rho = std::max(next_ratio, z);
        if (rho < 1.0) {
            const double tail = std::abs(term) * rho / (1.0 - rho);
            if (tail <= 0.5 * kEps * std::abs(sum))
                return {sum, tail + 4.0 * kEps * abs_sum, m + 1, Hyp2F1Method::kDirectSeries};
        }
    }
    const double rho = z;
    const double tail = std::abs(term) * rho / (1.0 - rho);
    throw ConvergenceError("hyp2f1: series did not converge within " + std::to_string(max_terms) + " terms",
                           sum, tail);
}

} // namespace

Hyp2F1Result hyp2f1(double a, double b, double c, double z, long max_terms)
{
    if (is_nonpositive_integer(c))
        throw std::domain_error("hyp2f1: c must not be a non-positive integer");
    if (!(z >= 0.0 && z < 1.0))
        throw std::domain_error("hyp2f1: z must lie in [0, 1)");
    if (max_terms < 1)
        throw std::domain_error("hyp2f1: max_terms must be positive");
    if (z == 0.0)
        return {1.0, 0.0, 0, Hyp2F1Method::kDirectSeries};
    if (z <= kDirectLimit || is_nonpositive_integer(a) || is_nonpositive_integer(b))
        return direct_series(a, b, c, z, max_terms);

    // Euler: 2F1(a,b;c;z) = (1-z)^{c-a-b} 2F1(c-a, c-b; c; z), a polynomial
    // when c-a or c-b is a non-positive integer.
    if (is_nonpositive_integer(c - a) || is_nonpositive_integer(c - b)) {
        Hyp2F1Result poly = direct_series(c - a, c - b, c, z, max_terms);
        const double factor = std::pow(1.0 - z, c - a - b);
        poly.value *= factor;
        poly.err_est *= factor;
        poly.method = Hyp2F1Method::kEulerTerminating;
        return poly;
    }

    const double s = c - a - b;
    if (!is_integer(s)) {
        // 2F1(a,b;c;z) = A1 2F1(a, b; 1-s; 1-z) + A2 (1-z)^s 2F1(c-a, c-b; 1+s; 1-z)
        using detail::gamma_any;
        using detail::rgamma_any;
        const double w = 1.0 - z;
        const double gc = gamma_any(c);
        const double coeff1 = gc * gamma_any(s) * rgamma_any(c - a) * rgamma_any(c - b);
        const double coeff2 = gc * gamma_any(-s) * rgamma_any(a) * rgamma_any(b);
        const Hyp2F1Result f1 = direct_series(a, b, 1.0 - s, w, max_terms);
        const Hyp2F1Result f2 = direct_series(c - a, c - b, 1.0 + s, w, max_terms);
        const double ws = std::pow(w, s);
        const double term1 = coeff1 * f1.value;
        const double term2 = coeff2 * ws * f2.value;
        const double value = term1 + term2;
        // gamma products carry a few ulps each; cancellation between the two
        // branches shows up through the magnitudes
        const double err = std::abs(coeff1) * f1.err_est + std::abs(coeff2 * ws) * f2.err_est
                           + 32.0 * kEps * (std::abs(term1) + std::abs(term2));
        return {value, err, f1.terms + f2.terms, Hyp2F1Method::kConnection};
    }

    return direct_series(a, b, c, z, max_terms);
}

} // namespace parastat::special
