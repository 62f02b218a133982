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

#include "parastat/fock_oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "parastat/error.hpp"
#include "parastat/para_algebra.hpp"
#include "parastat/special_fn.hpp"

namespace parastat::fock {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTraceTailTol = 1e-14;
constexpr double kCoherentTailTol = 1e-12;
constexpr long kMaxThermalCutoff = 50'000'000;

// Neumaier-compensated running sum
class CompensatedSum {
public:
    void add(double v)
    {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Bound on sum_{m > cutoff} (1-q) q^m (m)_p!/(m-n)_p!, using (m)_p!/(m-n)_p! <= (m+p)^n.
double thermal_tail_bound(int order, const hbt::ThermalState& state, long cutoff)
{
    const double q = state.q();
    const double pv = state.p().real();
    const double first = static_cast<double>(cutoff + 1);
    const double rho = q * std::pow((first + 1.0 + pv) / (first + pv), order);
    if (rho >= 1.0)
        return std::numeric_limits<double>::infinity();
    const double log_term = std::log1p(-q) + first * std::log(q) + order * std::log(first + pv);
    return std::exp(log_term) / (1.0 - rho);
}

// (m)_p! / (m - n)_p! = prod_{k=m-n}^{m-1} c_k^2
double factorial_ratio(long m, int order, ParaOrder p, const LadderUpFn& ladder)
{
    double ratio = 1.0;
    for (long k = m - order; k < m; ++k) {
        const double c = ladder(Occupation{k}, p);
        ratio *= c * c;
    }
    return ratio;
}

void check_order(int order)
{
    if (order < 1)
        throw std::domain_error("thermal_g: correlation order must be >= 1");
}

struct TraceSums {
    CompensatedSum even;
    CompensatedSum odd;
};

void accumulate(TraceSums& sums, long m, int order, const hbt::ThermalState& state, const LadderUpFn& ladder)
{
    const double q = state.q();
    const double weight = (1.0 - q) * std::pow(q, static_cast<double>(m));
    const double term = weight * factorial_ratio(m, order, state.p(), ladder);
    if (m % 2 == 0)
        sums.even.add(term);
    else
        sums.odd.add(term);
}

hbt::CorrelationValue finish(int order, const hbt::ThermalState& state, const TraceSums& sums, double tail)
{
    const double scale = std::pow(state.c_bar(), order);
    const double total = sums.even.value() + sums.odd.value();
    hbt::CorrelationValue result;
    result.order = order;
    result.method = hbt::Method::kFockOracle;
    result.value = scale * total;
    result.parity_parts = hbt::ParityParts{scale * sums.even.value(), scale * sums.odd.value()};
    result.err_est = scale * (tail + (order + 4.0) * kEps * total);
    return result;
}

} // namespace

LadderUpFn default_ladder()
{
    return [](Occupation n, ParaOrder p) { return algebra::ladder_up_coeff(n, p); };
}

LadderMatrices build_ladder(const TruncatedBasis& basis, const LadderUpFn& ladder)
{
    if (basis.cutoff < 2)
        throw std::domain_error("build_ladder: cutoff must be >= 2");
    const Eigen::Index dim = basis.dimension();
    LadderMatrices m;
    m.a_dag = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index n = 0; n + 1 < dim; ++n)
        m.a_dag(n + 1, n) = ladder(Occupation{static_cast<long>(n)}, basis.p);
    m.a = m.a_dag.transpose();
    m.n_op = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index n = 0; n < dim; ++n)
        m.n_op(n, n) = static_cast<double>(n);
    return m;
}

long coherent_cutoff(double x, ParaOrder p)
{
    return coherent::p_poisson_cutoff(x, p, 1e-14);
}

Eigen::VectorXcd coherent_vector(coherent::CoherentAmplitude alpha, const TruncatedBasis& basis)
{
    const double x = alpha.intensity();
    const long required = coherent::p_poisson_cutoff(x, basis.p, kCoherentTailTol) - 10;
    if (basis.cutoff < required)
        throw TruncationError("coherent_vector: cutoff " + std::to_string(basis.cutoff) + " < " + std::to_string(required)
                                  + " needed for a 1e-12 tail",
                              0.0, 1.0);
    Eigen::VectorXcd v(basis.dimension());
    std::complex<double> amp = 1.0 / std::sqrt(special::p_exp(x, basis.p));
    for (Eigen::Index n = 0; n < v.size(); ++n) {
        v(n) = amp;
        amp *= alpha.alpha() / algebra::ladder_up_coeff(Occupation{static_cast<long>(n)}, basis.p);
    }
    return v;
}

Eigen::VectorXcd even_part(const Eigen::VectorXcd& v)
{
    Eigen::VectorXcd out = v;
    for (Eigen::Index n = 1; n < out.size(); n += 2)
        out(n) = 0.0;
    return out;
}

Eigen::VectorXcd odd_part(const Eigen::VectorXcd& v)
{
    Eigen::VectorXcd out = v;
    for (Eigen::Index n = 0; n < out.size(); n += 2)
        out(n) = 0.0;
    return out;
}

double poisson_from_overlap(Occupation n, coherent::CoherentAmplitude alpha, const TruncatedBasis& basis)
{
    if (n.value() > basis.cutoff)
        throw std::domain_error("poisson_from_overlap: n lies above the basis cutoff");
    const Eigen::VectorXcd v = coherent_vector(alpha, basis);
    return std::norm(v(n.value()));
}

long thermal_cutoff_heuristic(int order, const hbt::ThermalState& state)
{
    const double geometric = std::ceil(std::log(1e-14) / std::log(state.q()));
    return std::max<long>(4L * order, static_cast<long>(geometric) + 2L * state.p().value());
}

hbt::CorrelationValue thermal_g_at_cutoff(int order, const hbt::ThermalState& state, long cutoff,
                                          const LadderUpFn& ladder)
{
    check_order(order);
    TraceSums sums;
    for (long m = order; m <= cutoff; ++m)
        accumulate(sums, m, order, state, ladder);
    return finish(order, state, sums, thermal_tail_bound(order, state, cutoff));
}

hbt::CorrelationValue thermal_g(int order, const hbt::ThermalState& state, ThermalSumInfo* info,
                                const LadderUpFn& ladder)
{
    check_order(order);
    const long start = thermal_cutoff_heuristic(order, state);
    if (start > kMaxThermalCutoff)
        throw TruncationError("thermal_g: mean occupation needs a cutoff above " + std::to_string(kMaxThermalCutoff),
                              std::nan(""), std::numeric_limits<double>::infinity());
    TraceSums sums;
    long m = order;
    for (; m <= start; ++m)
        accumulate(sums, m, order, state, ladder);
    long cutoff = std::max(start, static_cast<long>(order) - 1);
    double tail = thermal_tail_bound(order, state, cutoff);
    while (!(tail <= kTraceTailTol * (sums.even.value() + sums.odd.value()))) {
        if (cutoff >= kMaxThermalCutoff)
            throw TruncationError("thermal_g: tail bound not reached within the cutoff budget",
                                  finish(order, state, sums, tail).value, tail);
        accumulate(sums, ++cutoff, order, state, ladder);
        tail = thermal_tail_bound(order, state, cutoff);
    }
    if (info != nullptr)
        *info = {cutoff, std::pow(state.c_bar(), order) * tail};
    return finish(order, state, sums, tail);
}

hbt::CorrelationValue thermal_g_matrix(int order, const hbt::ThermalState& state, long cutoff,
                                       const LadderUpFn& ladder)
{
    check_order(order);
    const LadderMatrices m = build_ladder(TruncatedBasis{cutoff, state.p()}, ladder);
    Eigen::MatrixXd lowered = Eigen::MatrixXd::Identity(m.a.rows(), m.a.cols());
    for (int k = 0; k < order; ++k)
        lowered = m.a * lowered;
    // (a†)^n a^n = (a^n)^T a^n for the real ladder matrices
    const Eigen::MatrixXd normal_ordered = lowered.transpose() * lowered;
    const double q = state.q();
    TraceSums sums;
    for (Eigen::Index i = 0; i < normal_ordered.rows(); ++i) {
        const double term = (1.0 - q) * std::pow(q, static_cast<double>(i)) * normal_ordered(i, i);
        if (i % 2 == 0)
            sums.even.add(term);
        else
            sums.odd.add(term);
    }
    hbt::CorrelationValue result = finish(order, state, sums, thermal_tail_bound(order, state, cutoff));
    return result;
}

} // namespace parastat::fock
