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

#ifndef PARASTAT_FOCK_ORACLE_HPP
#define PARASTAT_FOCK_ORACLE_HPP

#include <functional>

#include <Eigen/Dense>

#include "parastat/coherent.hpp"
#include "parastat/hbt.hpp"
#include "parastat/types.hpp"

// Brute-force reference built on a truncated number basis |0>..|n_max>.
// Nothing here uses Bessel functions, hypergeometric series or quadrature.

namespace parastat::fock {

struct TruncatedBasis {
    long cutoff; ///< n_max, the highest number state kept
    ParaOrder p;

    long dimension() const { return cutoff + 1; }
};

/// Coefficient c in a†|n> = c|n+1>. Replaceable so that a deliberately wrong
/// ladder can be fed through the oracle as a negative control.
using LadderUpFn = std::function<double(Occupation, ParaOrder)>;

LadderUpFn default_ladder();

struct LadderMatrices {
    Eigen::MatrixXd a;
    Eigen::MatrixXd a_dag;
    Eigen::MatrixXd n_op;
};

/// a, a† and N on the truncated basis. Requires cutoff >= 2.
LadderMatrices build_ladder(const TruncatedBasis& basis, const LadderUpFn& ladder = default_ladder());

/// Basis size needed for |alpha>: p-Poisson tail below 1e-14, plus ten.
long coherent_cutoff(double x, ParaOrder p);

/// Amplitudes alpha^n / sqrt((n)_p! e_p(|alpha|^2)) for n = 0..cutoff.
/// Throws TruncationError if the basis is too small for the 1e-12 tail.
Eigen::VectorXcd coherent_vector(coherent::CoherentAmplitude alpha, const TruncatedBasis& basis);

/// Even and odd parity projections of v.
Eigen::VectorXcd even_part(const Eigen::VectorXcd& v);
Eigen::VectorXcd odd_part(const Eigen::VectorXcd& v);

/// |<n|alpha>|^2 read off the state vector.
double poisson_from_overlap(Occupation n, coherent::CoherentAmplitude alpha, const TruncatedBasis& basis);

struct ThermalSumInfo {
    long cutoff = 0;
    double tail_bound = 0.0; ///< bound on the neglected part of the trace
};

/// G^(n) = c_bar^n sum_m P(m) (m)_p! / (m - n)_p!, the normally ordered trace
/// Tr[rho (a†)^n a^n]. The cutoff is extended until the neglected tail is
/// below 1e-14 of the partial sum. err_est = tail bound + summation rounding.
/// Throws TruncationError when more than 5e7 terms would be needed (<N> of
/// order 1e6 and above).
hbt::CorrelationValue thermal_g(int order, const hbt::ThermalState& state, ThermalSumInfo* info = nullptr,
                                const LadderUpFn& ladder = default_ladder());

/// Same trace at a fixed cutoff; err_est is the tail bound for that cutoff.
hbt::CorrelationValue thermal_g_at_cutoff(int order, const hbt::ThermalState& state, long cutoff,
                                          const LadderUpFn& ladder = default_ladder());

/// Tr[rho (a†)^n a^n] by explicit matrix products on a small basis.
hbt::CorrelationValue thermal_g_matrix(int order, const hbt::ThermalState& state, long cutoff,
                                       const LadderUpFn& ladder = default_ladder());

/// Starting cutoff max(4n, ceil(log(1e-14)/log q) + 2p) for thermal traces.
long thermal_cutoff_heuristic(int order, const hbt::ThermalState& state);

} // namespace parastat::fock

#endif // PARASTAT_FOCK_ORACLE_HPP
