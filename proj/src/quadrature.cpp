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
#include <numbers>
#include <string>

#include "parastat/special_fn.hpp"

// exp-sinh rule: x = exp(pi/2 sinh t), dx = pi/2 cosh t x dt, followed by the
// trapezoid rule in t with the step halved at each level. Nodes are confined
// to 1e-60 < x < 1e60; every integrand in this library is negligible outside.

namespace parastat::special {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kInitialStep = 0.5;
constexpr int kMinLevels = 3;

double node_limit()
{
    // t such that pi/2 sinh t = ln(1e60)
    static const double limit = std::asinh(60.0 * std::log(10.0) / kHalfPi);
    return limit;
}

class ExpSinhRule {
public:
    explicit ExpSinhRule(const Integrand& f) : f_(f) {}

    double weighted(double t)
    {
        const double s = kHalfPi * std::sinh(t);
        const double x = std::exp(s);
        const double fx = f_(x);
        ++evaluations_;
        if (!std::isfinite(fx))
            throw std::domain_error("integrate_semi_infinite: integrand is not finite at x = " + std::to_string(x));
        const double w = kHalfPi * std::cosh(t) * x;
        return fx * w;
    }

    // sum over t = k h for k in [-K, K] with the given stride/offset
    double sum(double h, long offset, long stride, double& edge)
    {
        const long k_max = static_cast<long>(std::floor(node_limit() / h));
        double total = 0.0;
        for (long k = -k_max + ((offset - (-k_max)) % stride + stride) % stride; k <= k_max; k += stride) {
            const double value = weighted(k * h);
            total += value;
            if (k == -k_max || k + stride > k_max)
                edge = std::max(edge, std::abs(value));
        }
        return total;
    }

    long evaluations() const { return evaluations_; }

private:
    const Integrand& f_;
    long evaluations_ = 0;
};

} // namespace

void QuadratureSpec::validate() const
{
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw std::domain_error("QuadratureSpec: tolerances must be positive");
    if (max_refinements < 1)
        throw std::domain_error("QuadratureSpec: max_refinements must be >= 1");
}

QuadratureResult integrate_semi_infinite(const Integrand& f, const QuadratureSpec& spec)
{
    spec.validate();
    ExpSinhRule rule(f);
    double h = kInitialStep;
    double edge = 0.0;
    double raw = rule.sum(h, 0, 1, edge);
    double estimate = h * raw;
    double err = std::abs(estimate);
    int level = 0;
    for (level = 1; level <= spec.max_refinements; ++level) {
        h *= 0.5;
        // new nodes sit at odd multiples of the halved step
        raw += rule.sum(h, 1, 2, edge);
        const double refined = h * raw;
        err = std::abs(refined - estimate);
        estimate = refined;
        if (level >= kMinLevels && err <= std::max(spec.rel_tol * std::abs(estimate), spec.abs_tol))
            break;
    }
    // the truncated tails are bounded by the outermost weighted samples
    err += edge * h;
    QuadratureResult result{estimate, err, std::min(level, spec.max_refinements), rule.evaluations()};
    if (err > std::max(spec.rel_tol * std::abs(estimate), spec.abs_tol))
        throw QuadratureError("integrate_semi_infinite: tolerance not met after "
                                  + std::to_string(spec.max_refinements) + " refinements",
                              estimate, err);
    return result;
}

} // namespace parastat::special
