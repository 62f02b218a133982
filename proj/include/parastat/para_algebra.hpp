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

#ifndef PARASTAT_PARA_ALGEBRA_HPP
#define PARASTAT_PARA_ALGEBRA_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include "parastat/types.hpp"

// Exact combinatorics of single-mode parabosons and parafermions.
//
// Paraboson number states are |n> = (a†)^n |0> / sqrt((n)_p!), where the
// p-factorial multiplies n factors: each step from an even occupation adds
// (n + p), each step from an odd occupation adds (n + 1). Parafermions live
// in the band 0 <= n <= p with the bi-factorial {n}_p! = n! p! / (p - n)!.

namespace parastat::algebra {

using BigInt = boost::multiprecision::cpp_int;

/// (n)_p! by the explicit product. Exact for any n.
BigInt p_factorial(Occupation n, ParaOrder p);

/// (n)_p! evaluated through Gamma functions; floating point, for cross-checks.
double p_factorial_gamma(Occupation n, ParaOrder p);

/// log (n)_p! as a sum of logs of the integer factors.
double log_p_factorial(Occupation n, ParaOrder p);

/// {n}_p! = n! p!/(p-n)!. Throws std::domain_error when n > p.
BigInt pf_factorial(Occupation n, ParaOrder p);

/// Squared ladder coefficient |c|^2 of a†|n> = c|n+1>: n + p (n even), n + 1 (n odd).
long ladder_up_coeff_sq(Occupation n, ParaOrder p);

/// c in a†|n> = c|n+1>.
double ladder_up_coeff(Occupation n, ParaOrder p);

/// c in a|n> = c|n-1>; zero on the vacuum.
double ladder_down_coeff(Occupation n, ParaOrder p);

enum class Species { kParaboson, kParafermion };
enum class Direction { kEmission, kAbsorption };

struct TransitionSpec {
    Species species = Species::kParaboson;
    Occupation n_initial{0};
    Direction direction = Direction::kEmission;
};

/// Single-quantum emission/absorption probability from a paraboson number
/// state, in units of the dynamics-dependent constant A.
double pb_transition_prob(const TransitionSpec& spec, ParaOrder p, double A = 1.0);

/// Parafermion emission over absorption ratio from n_initial, 1 <= n < p.
double pf_transition_ratio(Occupation n_initial, ParaOrder p);

/// Statistics-only rate ratio, mid-band transition over end-of-band transition.
double pf_midband_ratio(ParaOrder p);

} // namespace parastat::algebra

#endif // PARASTAT_PARA_ALGEBRA_HPP
