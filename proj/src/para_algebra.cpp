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

#include "parastat/para_algebra.hpp"

#include <cmath>
#include <string>

namespace parastat::algebra {

long ladder_up_coeff_sq(Occupation n, ParaOrder p)
{
    return n.is_even() ? n.value() + p.value() : n.value() + 1;
}

BigInt p_factorial(Occupation n, ParaOrder p)
{
    BigInt result = 1;
    for (long k = 0; k < n.value(); ++k)
        result *= ladder_up_coeff_sq(Occupation{k}, p);
    return result;
}

double p_factorial_gamma(Occupation n, ParaOrder p)
{
    // (2N)_p!   = 2^N N! * 2^N     Gamma(N + p/2)     / Gamma(p/2)
    // (2N+1)_p! = 2^N N! * 2^(N+1) Gamma(N + 1 + p/2) / Gamma(p/2)
    const double N = static_cast<double>(n.pair_index());
    const double h = p.half();
    double log_value = 0.0;
    if (n.is_even())
        log_value = 2.0 * N * std::log(2.0) + std::lgamma(N + 1.0) + std::lgamma(N + h) - std::lgamma(h);
    else
        log_value = (2.0 * N + 1.0) * std::log(2.0) + std::lgamma(N + 1.0) + std::lgamma(N + 1.0 + h)
                    - std::lgamma(h);
    return std::exp(log_value);
}

double log_p_factorial(Occupation n, ParaOrder p)
{
    double sum = 0.0;
    for (long k = 0; k < n.value(); ++k)
        sum += std::log(static_cast<double>(ladder_up_coeff_sq(Occupation{k}, p)));
    return sum;
}

BigInt pf_factorial(Occupation n, ParaOrder p)
{
    if (n.value() > p.value())
        throw std::domain_error("pf_factorial: n = " + std::to_string(n.value())
                                + " lies outside the parafermion band 0..p = " + std::to_string(p.value()));
    // product of bi-factors {k (p - k + 1)}, k = 1..n
    BigInt result = 1;
    for (long k = 1; k <= n.value(); ++k)
        result *= BigInt(k) * BigInt(p.value() - k + 1);
    return result;
}

double ladder_up_coeff(Occupation n, ParaOrder p)
{
    return std::sqrt(static_cast<double>(ladder_up_coeff_sq(n, p)));
}

double ladder_down_coeff(Occupation n, ParaOrder p)
{
    if (n.value() == 0)
        return 0.0;
    return ladder_up_coeff(Occupation{n.value() - 1}, p);
}

double pb_transition_prob(const TransitionSpec& spec, ParaOrder p, double A)
{
    if (spec.species != Species::kParaboson)
        throw std::domain_error("pb_transition_prob: only paraboson transitions are defined");
    if (!(A > 0.0))
        throw std::domain_error("pb_transition_prob: transition constant A must be positive");
    const long n = spec.n_initial.value();
    if (spec.direction == Direction::kEmission)
        return static_cast<double>(ladder_up_coeff_sq(spec.n_initial, p)) * A;
    if (n == 0)
        return 0.0;
    return static_cast<double>(ladder_up_coeff_sq(Occupation{n - 1}, p)) * A;
}

double pf_transition_ratio(Occupation n_initial, ParaOrder p)
{
    const long n = n_initial.value();
    const long pv = p.value();
    if (n < 1 || n > pv - 1)
        throw std::domain_error("pf_transition_ratio: n_initial must lie in 1..p-1");
    return static_cast<double>((n + 1) * (pv - n)) / static_cast<double>(n * (pv - n + 1));
}

double pf_midband_ratio(ParaOrder p)
{
    const long pv = p.value();
    if (pv < 2)
        throw std::domain_error("pf_midband_ratio: needs p >= 2");
    // emission bi-factor (m + 1)(p - m) from the lower mid-band state m,
    // against p for the end-of-band step 0 -> 1
    const long m = pv / 2;
    return static_cast<double>((m + 1) * (pv - m)) / static_cast<double>(pv);
}

} // namespace parastat::algebra
