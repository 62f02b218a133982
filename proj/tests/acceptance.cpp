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

// Acceptance report: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Each line carries the worst observed error against its
// threshold so that a failure can be read without rerunning anything.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "parastat/coherent.hpp"
#include "parastat/fock_oracle.hpp"
#include "parastat/hbt.hpp"
#include "parastat/para_algebra.hpp"

using namespace parastat;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double rel_diff(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

template <class... Args>
std::string fmt(const char* pattern, Args... args)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

const int kOrders[] = {1, 2, 3, 4};
const double kGridMeans[] = {0.1, 0.5, 1.0, 2.0, 10.0};
const hbt::Method kAllMethods[] = {hbt::Method::kClosedForm, hbt::Method::kHypergeometric, hbt::Method::kQuadrature,
                                   hbt::Method::kFockOracle};

Outcome bosonic_reduction()
{
    double worst_lambda = 0.0;
    for (double mean : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        const hbt::ThermalState s(mean, ParaOrder{1});
        worst_lambda = std::max(worst_lambda, rel_diff(hbt::lambda_p(s), 2.0));
        for (hbt::Method m : {hbt::Method::kClosedForm, hbt::Method::kHypergeometric, hbt::Method::kFockOracle}) {
            const double g1 = hbt::g_by_method(1, s, m).value;
            const double g2 = hbt::g_by_method(2, s, m).value;
            worst_lambda = std::max(worst_lambda, rel_diff(g2 / (g1 * g1), 2.0));
        }
    }
    double worst_pmf = 0.0;
    for (double x : {0.1, 0.5, 1.0, 5.0, 10.0, 20.0}) {
        const std::vector<double> table = coherent::p_poisson_table(x, ParaOrder{1});
        for (std::size_t n = 0; n < table.size(); ++n) {
            const double nd = static_cast<double>(n);
            const double poisson = std::exp(nd * std::log(x) - x - std::lgamma(nd + 1.0));
            worst_pmf = std::max(worst_pmf, std::abs(table[n] - poisson));
        }
    }
    return {worst_lambda < 1e-12 && worst_pmf < 1e-12,
            fmt("lambda_1 rel err %.2e, Poisson pmf abs err %.2e (tol 1e-12)", worst_lambda, worst_pmf)};
}

Outcome sub_bosonic_limit()
{
    double worst = 0.0;
    for (int p = 2; p <= 5; ++p) {
        const hbt::ThermalState s(1e-6, ParaOrder{p});
        worst = std::max(worst, rel_diff(hbt::lambda_p(s), 2.0 / p));
        const double g1 = fock::thermal_g(1, s).value;
        worst = std::max(worst, rel_diff(fock::thermal_g(2, s).value / (g1 * g1), 2.0 / p));
    }
    return {worst < 1e-4, fmt("lambda_p vs 2/p rel err %.2e (tol %.0e)", worst, 1e-4)};
}

Outcome four_way_agreement()
{
    double analytic = 0.0;
    double quad = 0.0;
    double oracle_excess = 0.0; // |oracle - closed| / (recorded bound), must stay <= 1
    for (int p = 1; p <= 5; ++p)
        for (double mean : kGridMeans)
            for (int n : kOrders) {
                const hbt::ThermalState s(mean, ParaOrder{p});
                const hbt::CorrelationValue closed = hbt::g_closed(n, s);
                const hbt::CorrelationValue hyp = hbt::g_hypergeometric(n, s);
                const hbt::CorrelationValue q = hbt::g_quadrature(n, s);
                const hbt::CorrelationValue fk = fock::thermal_g(n, s);
                analytic = std::max(analytic, rel_diff(closed.value, hyp.value));
                quad = std::max({quad, rel_diff(q.value, closed.value), rel_diff(q.value, hyp.value),
                                 rel_diff(q.value, fk.value)});
                for (const hbt::CorrelationValue& other : {closed, hyp}) {
                    const double bound = fk.err_est + other.err_est;
                    oracle_excess = std::max(oracle_excess, std::abs(fk.value - other.value) / bound);
                }
            }
    Outcome out;
    out.pass = analytic < 1e-8 && quad < 1e-6 && oracle_excess <= 1.0;
    out.detail = fmt("analytic pair %.2e (tol 1e-8), quadrature %.2e (tol 1e-6), oracle |diff|/bound %.2f (tol 1)",
                     analytic, quad, oracle_excess);
    return out;
}

Outcome recursion_identity()
{
    double worst = 0.0;
    for (int p = 1; p <= 5; ++p)
        for (double mean : kGridMeans)
            for (int even : {2, 4})
                for (hbt::Method m : kAllMethods) {
                    const hbt::ThermalState s(mean, ParaOrder{p}, 1.3);
                    worst = std::max(worst, hbt::g_recursion_check(even, s, m).rel_diff);
                }
    return {worst < 1e-6, fmt("worst rel diff %.2e (tol %.0e)", worst, 1e-6)};
}

Outcome higher_order_limits()
{
    double low = 0.0;
    double high = 0.0;
    for (int p = 1; p <= 5; ++p) {
        low = std::max(low, rel_diff(hbt::higher_order_bracket(hbt::ThermalState(1e-6, ParaOrder{p})),
                                     (p * p + 2.0 * p) / 3.0));
        high = std::max(high, rel_diff(hbt::higher_order_bracket(hbt::ThermalState(1e4, ParaOrder{p})), 1.0));
    }
    return {low < 1e-3 && high < 1e-3, fmt("mean 1e-6 rel err %.2e, mean 1e4 rel err %.2e (tol 1e-3)", low, high)};
}

Outcome euler_generalization()
{
    double euler = 0.0;
    double completeness = 0.0;
    for (int p = 1; p <= 5; ++p) {
        for (long n = 0; n <= 12; ++n) {
            const double exact = algebra::p_factorial(Occupation{n}, ParaOrder{p}).convert_to<double>();
            euler = std::max(euler, rel_diff(coherent::gamma_generalized(Occupation{n}, ParaOrder{p}).value, exact));
        }
        for (long n = 0; n <= 10; ++n)
            completeness = std::max(
                completeness, std::abs(coherent::completeness_diagonal(Occupation{n}, ParaOrder{p}).value - 1.0));
    }
    return {euler < 1e-8 && completeness < 1e-7,
            fmt("Euler integral rel err %.2e (tol 1e-8), completeness abs err %.2e (tol 1e-7)", euler, completeness)};
}

Outcome coherent_in_oracle()
{
    double eigen = 0.0;
    double swap = 0.0;
    for (int p = 1; p <= 5; ++p)
        for (double mag : {0.25, 0.5, 1.0, 1.5, 2.0})
            for (double phase : {0.0, 0.9, 2.3, 4.0}) {
                const std::complex<double> alpha = std::polar(mag, phase);
                const fock::TruncatedBasis basis{fock::coherent_cutoff(mag * mag, ParaOrder{p}), ParaOrder{p}};
                const Eigen::MatrixXcd a = fock::build_ladder(basis).a.cast<std::complex<double>>();
                const Eigen::VectorXcd v = fock::coherent_vector(alpha, basis);
                eigen = std::max(eigen, (a * v - alpha * v).norm());
                const Eigen::VectorXcd plus = std::sqrt(2.0) * fock::even_part(v);
                const Eigen::VectorXcd minus = std::sqrt(2.0) * fock::odd_part(v);
                swap = std::max({swap, (a * plus - alpha * minus).norm(), (a * minus - alpha * plus).norm()});
            }
    return {eigen < 1e-8 && swap < 1e-8, fmt("eigen residual %.2e, parity-swap residual %.2e (tol 1e-8)", eigen, swap)};
}

Outcome moment_closed_forms()
{
    double exact = 0.0;
    for (int p = 1; p <= 5; ++p)
        for (double x : {0.1, 1.0, 10.0, 100.0}) {
            const coherent::MomentPair c = coherent::coherent_moments(x, ParaOrder{p});
            const coherent::MomentPair d = coherent::coherent_moments_direct(x, ParaOrder{p});
            exact = std::max({exact, rel_diff(c.mean, d.mean), rel_diff(c.variance, d.variance)});
        }
    double large = 0.0;
    for (int p = 1; p <= 5; ++p) {
        const coherent::MomentPair l = coherent::coherent_moments_large_x(100.0, ParaOrder{p});
        const coherent::MomentPair d = coherent::coherent_moments_direct(100.0, ParaOrder{p});
        large = std::max({large, rel_diff(l.mean, d.mean), rel_diff(l.variance, d.variance)});
    }
    return {exact < 1e-9 && large < 1e-6,
            fmt("closed vs direct %.2e (tol 1e-9), large-x forms at x=100 %.2e (tol 1e-6)", exact, large)};
}

Outcome overlap_asymptotics()
{
    double large = 0.0;
    for (int p = 1; p <= 5; ++p)
        for (double theta : {0.05, 0.1, 0.2, 0.3}) {
            const std::complex<double> a(10.0, 0.0);
            const std::complex<double> b = std::polar(10.0, theta);
            const double law = std::exp(-0.5 * std::norm(a - b));
            large = std::max(large, rel_diff(std::abs(coherent::overlap(a, b, ParaOrder{p})), law));
        }
    double small = 0.0;
    for (double theta : {0.5, std::numbers::pi / 2.0, 2.0, std::numbers::pi}) {
        const std::complex<double> a(0.05, 0.0);
        const std::complex<double> b = std::polar(0.05, theta);
        const double law = 1.0 - std::norm(a - b) / (2.0 * 4.0);
        small = std::max(small, std::abs(std::abs(coherent::overlap(a, b, ParaOrder{4})) - law));
    }
    return {large < 0.02 && small < 1e-4,
            fmt("|alpha|=10 rel err %.2e (tol 2e-2), |alpha|=0.05 abs err %.2e (tol 1e-4)", large, small)};
}

Outcome gaussian_quality()
{
    long checked = 0;
    long wins = 0;
    double worst_margin = 1e300; // smallest |plain - exact| - |corrected - exact|
    const double x = 100.0;
    for (int p = 1; p <= 3; ++p) {
        const coherent::MomentPair m = coherent::coherent_moments_large_x(x, ParaOrder{p});
        const double sigma = std::sqrt(m.variance);
        for (long n = 0; n <= 200; n += 2) {
            const double y = (static_cast<double>(n) - m.mean) / sigma;
            if (std::abs(y) > 2.0)
                continue;
            const double exact = coherent::p_poisson_pmf(Occupation{n}, x, ParaOrder{p});
            const double plain = coherent::p_gaussian_pdf(static_cast<double>(n), x, ParaOrder{p},
                                                          coherent::MomentSource::kLargeX);
            const double corrected = coherent::p_gaussian_correction(Occupation{n}, x, ParaOrder{p});
            const double margin = std::abs(plain - exact) - std::abs(corrected - exact);
            ++checked;
            wins += margin > 0.0 ? 1 : 0;
            worst_margin = std::min(worst_margin, margin);
        }
    }
    Outcome out;
    out.pass = checked > 0 && wins == checked;
    out.detail = fmt("corrected closer at %ld of %ld even n, smallest gain %.2e", wins, checked, worst_margin);
    return out;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, "bosonic reduction", bosonic_reduction},
        {2, "sub-bosonic limit", sub_bosonic_limit},
        {3, "four-way G(n) agreement", four_way_agreement},
        {4, "recursion identity", recursion_identity},
        {5, "higher-order limits", higher_order_limits},
        {6, "Euler generalization", euler_generalization},
        {7, "coherent states in oracle", coherent_in_oracle},
        {8, "moment closed forms", moment_closed_forms},
        {9, "overlap asymptotics", overlap_asymptotics},
        {10, "p-Gaussian quality", gaussian_quality},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %2d %s: %-26s %s [%.2fs]\n", c.id, out.pass ? "PASS" : "FAIL", c.name, out.detail.c_str(),
                    secs);
        failures += out.pass ? 0 : 1;
    }
    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
