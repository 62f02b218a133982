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

#ifndef PARASTAT_COHERENT_HPP
#define PARASTAT_COHERENT_HPP

#include <complex>
#include <vector>

#include "parastat/special_fn.hpp"
#include "parastat/types.hpp"

// Paraboson coherent states |alpha>, a|alpha> = alpha|alpha>.
//
// Every scalar statistic depends only on x = |alpha|^2; the complex amplitude
// is kept for overlaps. The number distribution is the p-Poisson law
// P_p(n, x) = x^n / ((n)_p! e_p(x)).

namespace parastat::coherent {

class CoherentAmplitude {
public:
    CoherentAmplitude(std::complex<double> alpha) : alpha_(alpha) {} // NOLINT(google-explicit-constructor)
    CoherentAmplitude(double re, double im) : alpha_(re, im) {}

    std::complex<double> alpha() const noexcept { return alpha_; }
    double intensity() const noexcept { return std::norm(alpha_); }

private:
    std::complex<double> alpha_;
};

/// Probabilities of the even and odd occupation sectors.
struct ModeSplit {
    double p_even = 1.0;
    double p_odd = 0.0;
    /// p_even - p_odd, evaluated from the Bessel ratio so it stays accurate
    /// when both probabilities approach 1/2.
    double d = 1.0;
};

ModeSplit mode_split(double x, ParaOrder p);

/// P_p(n, x).
double p_poisson_pmf(Occupation n, double x, ParaOrder p);

/// P_p(n, x) for n = 0..cutoff, with cutoff chosen so that the neglected tail
/// is below 1e-16 (plus ten guard terms).
std::vector<double> p_poisson_table(double x, ParaOrder p);

/// Smallest cutoff at which the neglected p-Poisson mass is below tail_tol.
long p_poisson_cutoff(double x, ParaOrder p, double tail_tol = 1e-16);

enum class Regime { kSmall, kLarge };

/// Leading asymptotic form of P_p(n, x) for x -> 0 (x <= 0.1) or x >> 1
/// (x >= max(10, p)). Throws std::domain_error outside the regime.
///
/// Large x: sqrt(pi) / (2^{(p-1)/2} Gamma(p/2)) x^{n + (p-1)/2} e^{-x} / (n)_p!.
double p_poisson_asymptotic(Occupation n, double x, ParaOrder p, Regime regime);

struct MomentPair {
    double mean = 0.0;
    double variance = 0.0;
};

/// Mean and variance of N on |alpha> from the sector imbalance d:
///   mean     = x + (1-p)/2 - d (1-p)/2
///   variance = x + d (1-p) x + (1-p)^2/4 - d^2 (1-p)^2/4
MomentPair coherent_moments(double x, ParaOrder p);

/// Large-x forms mean ~ x + (1-p)/2, variance ~ x + (1-p)^2/2. These are the
/// parameters about which the p-Gaussian series below is expanded.
MomentPair coherent_moments_large_x(double x, ParaOrder p);

/// Mean and variance summed directly over the p-Poisson table.
MomentPair coherent_moments_direct(double x, ParaOrder p);

enum class MomentSource { kExact, kLargeX };

/// Normal density with the coherent-state mean and standard deviation.
double p_gaussian_pdf(double n, double x, ParaOrder p, MomentSource source = MomentSource::kExact);

/// Stirling/Edgeworth series through sigma^{-2} about the large-x parameters.
/// The sigma^{-2} constant differs between even and odd n. Requires x >= 10.
double p_gaussian_correction(Occupation n, double x, ParaOrder p);

/// <alpha|beta>, assembled from the even and odd sector overlaps.
struct OverlapParts {
    std::complex<double> even{};  ///< sqrt(P_e(a) P_e(b)) <alpha_e|beta_e>
    std::complex<double> odd{};   ///< sqrt(P_o(a) P_o(b)) <alpha_o|beta_o>
    std::complex<double> cross{}; ///< <alpha_e|beta_o>, identically zero
    std::complex<double> total() const { return even + odd; }
};

OverlapParts overlap_parts(CoherentAmplitude alpha, CoherentAmplitude beta, ParaOrder p);
std::complex<double> overlap(CoherentAmplitude alpha, CoherentAmplitude beta, ParaOrder p);

struct ParityNorms {
    double even_norm = 0.0; ///< sqrt(2 P_e)
    double odd_norm = 0.0;  ///< sqrt(2 P_o)
};

/// Normalizations of |alpha_+-> = sqrt(2 P_{e,o}) |alpha_{e,o}>.
ParityNorms parity_component_norms(CoherentAmplitude alpha, ParaOrder p);

struct IntegralValue {
    double value = 0.0;
    double err_est = 0.0;
};

/// (n)_p! from its K-Bessel integral representation:
///   2^{(2-p)/2} / Gamma(p/2) * int_0^inf K_nu(t) t^{p/2 + n} dt,
/// nu = (p-2)/2 for even n and p/2 for odd n. Requires n <= 30.
IntegralValue gamma_generalized(Occupation n, ParaOrder p, const special::QuadratureSpec& spec = {});

/// <n| I |n> for the resolution of identity over |alpha_{e,o}> with measures
/// mu_{e,o}(x) = x K_nu(x) I_nu(x), integrated radially. Requires n <= 30.
IntegralValue completeness_diagonal(Occupation n, ParaOrder p, const special::QuadratureSpec& spec = {});

} // namespace parastat::coherent

#endif // PARASTAT_COHERENT_HPP
