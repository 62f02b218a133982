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

#include "doctest.h"

#include <boost/math/special_functions/factorials.hpp>

#include "parastat/para_algebra.hpp"
#include "support.hpp"

using namespace parastat;
using namespace parastat::algebra;
using parastat::testing::rel_diff;

TEST_CASE("p-factorial small values")
{
    CHECK(p_factorial(Occupation{0}, ParaOrder{3}) == 1);
    CHECK(p_factorial(Occupation{1}, ParaOrder{7}) == 7);
    CHECK(p_factorial(Occupation{4}, ParaOrder{3}) == 120);
    CHECK(p_factorial(Occupation{7}, ParaOrder{2}) == 18432);
    CHECK(p_factorial(Occupation{10}, ParaOrder{3}) == 39916800);
    CHECK(p_factorial(Occupation{12}, ParaOrder{5}) == BigInt("31135104000"));
}

TEST_CASE("p-factorial recursion is exact")
{
    for (int p = 1; p <= 10; ++p)
        for (long pair = 0; pair <= 30; ++pair) {
            const ParaOrder po{p};
            const BigInt even = p_factorial(Occupation{2 * pair}, po);
            const BigInt odd = p_factorial(Occupation{2 * pair + 1}, po);
            CHECK(odd == (2 * pair + p) * even);
            CHECK(p_factorial(Occupation{2 * pair + 2}, po) == (2 * pair + 2) * odd);
        }
}

TEST_CASE("p = 1 gives the ordinary factorial")
{
    BigInt f = 1;
    for (long n = 0; n <= 20; ++n) {
        if (n > 0)
            f *= n;
        CHECK(p_factorial(Occupation{n}, ParaOrder{1}) == f);
    }
}

TEST_CASE("big factorials do not overflow")
{
    const BigInt big = p_factorial(Occupation{200}, ParaOrder{4});
    CHECK(big > BigInt(1) << 1000);
    // past double range: compare against the bit length
    const double log2_big = log_p_factorial(Occupation{200}, ParaOrder{4}) / std::log(2.0);
    CHECK(log2_big >= static_cast<double>(boost::multiprecision::msb(big)));
    CHECK(log2_big < static_cast<double>(boost::multiprecision::msb(big)) + 1.0);
    CHECK(rel_diff(log_p_factorial(Occupation{60}, ParaOrder{4}),
                   std::log(p_factorial(Occupation{60}, ParaOrder{4}).convert_to<double>()))
          < 1e-13);
}

TEST_CASE("gamma form of the p-factorial")
{
    for (int p = 1; p <= 6; ++p)
        for (long n = 0; n <= 25; ++n) {
            const double exact = p_factorial(Occupation{n}, ParaOrder{p}).convert_to<double>();
            CHECK(rel_diff(p_factorial_gamma(Occupation{n}, ParaOrder{p}), exact) < 1e-12);
        }
}

TEST_CASE("ladder coefficients rebuild the p-factorial")
{
    for (int p = 1; p <= 6; ++p) {
        double prod = 1.0;
        for (long n = 0; n <= 40; ++n) {
            const double exact = p_factorial(Occupation{n}, ParaOrder{p}).convert_to<double>();
            CHECK(rel_diff(prod, exact) < 1e-12);
            const double c = ladder_up_coeff(Occupation{n}, ParaOrder{p});
            prod *= c * c;
        }
    }
    CHECK(ladder_down_coeff(Occupation{0}, ParaOrder{3}) == 0.0);
    CHECK(ladder_down_coeff(Occupation{1}, ParaOrder{3}) == doctest::Approx(std::sqrt(3.0)));
    CHECK(ladder_down_coeff(Occupation{2}, ParaOrder{3}) == doctest::Approx(std::sqrt(2.0)));
    CHECK(ladder_up_coeff_sq(Occupation{4}, ParaOrder{5}) == 9);
    CHECK(ladder_up_coeff_sq(Occupation{5}, ParaOrder{5}) == 6);
}

TEST_CASE("bi-factorial")
{
    CHECK(pf_factorial(Occupation{2}, ParaOrder{3}) == 12);
    CHECK(pf_factorial(Occupation{0}, ParaOrder{4}) == 1);
    CHECK(pf_factorial(Occupation{4}, ParaOrder{4}) == 576);
    for (int p = 1; p <= 12; ++p)
        for (long n = 0; n <= p; ++n) {
            const double expected = boost::math::factorial<double>(static_cast<unsigned>(n))
                                    * boost::math::factorial<double>(static_cast<unsigned>(p))
                                    / boost::math::factorial<double>(static_cast<unsigned>(p - n));
            CHECK(rel_diff(pf_factorial(Occupation{n}, ParaOrder{p}).convert_to<double>(), expected) < 1e-14);
        }
    CHECK_THROWS_AS(pf_factorial(Occupation{4}, ParaOrder{3}), std::domain_error);
}

TEST_CASE("paraboson transitions")
{
    const ParaOrder p{3};
    // even n: (n + p), odd n: (n + 1)
    CHECK(pb_transition_prob({Species::kParaboson, Occupation{0}, Direction::kEmission}, p) == 3.0);
    CHECK(pb_transition_prob({Species::kParaboson, Occupation{4}, Direction::kEmission}, p, 2.0) == 14.0);
    CHECK(pb_transition_prob({Species::kParaboson, Occupation{3}, Direction::kEmission}, p) == 4.0);
    CHECK(pb_transition_prob({Species::kParaboson, Occupation{0}, Direction::kAbsorption}, p) == 0.0);
    CHECK(pb_transition_prob({Species::kParaboson, Occupation{1}, Direction::kAbsorption}, p) == 3.0);
    CHECK(pb_transition_prob({Species::kParaboson, Occupation{0}, Direction::kEmission}, ParaOrder{5}) == 5.0);
    CHECK(pb_transition_prob({Species::kParaboson, Occupation{2}, Direction::kAbsorption}, ParaOrder{5}) == 2.0);
    CHECK(pb_transition_prob({Species::kParaboson, Occupation{1}, Direction::kEmission}, ParaOrder{1}) == 2.0);
    for (long n = 0; n <= 20; ++n) {
        const double up = pb_transition_prob({Species::kParaboson, Occupation{n}, Direction::kEmission}, p, 0.7);
        const double down = pb_transition_prob({Species::kParaboson, Occupation{n + 1}, Direction::kAbsorption}, p, 0.7);
        CHECK(up == down);
    }
    CHECK_THROWS_AS(pb_transition_prob({Species::kParafermion, Occupation{1}, Direction::kEmission}, p),
                    std::domain_error);
    CHECK_THROWS_AS(pb_transition_prob({Species::kParaboson, Occupation{1}, Direction::kEmission}, p, 0.0),
                    std::domain_error);
}

TEST_CASE("parafermion ratios")
{
    CHECK(pf_transition_ratio(Occupation{1}, ParaOrder{2}) == doctest::Approx(1.0));
    CHECK(pf_transition_ratio(Occupation{1}, ParaOrder{4}) == doctest::Approx(1.5));
    CHECK(pf_transition_ratio(Occupation{3}, ParaOrder{4}) == doctest::Approx(2.0 / 3.0));
    // exact mid-band boundary of an even band: 3*2 / (2*3)
    CHECK(pf_transition_ratio(Occupation{2}, ParaOrder{4}) == doctest::Approx(1.0));
    for (int p = 2; p <= 12; ++p)
        for (long n = 1; n < p; ++n) {
            const double r = pf_transition_ratio(Occupation{n}, ParaOrder{p});
            if (2 * n < p - (p % 2))
                CHECK(r > 1.0);
            if (2 * n > p + (p % 2))
                CHECK(r < 1.0);
        }
    CHECK_THROWS_AS(pf_transition_ratio(Occupation{0}, ParaOrder{4}), std::domain_error);
    CHECK_THROWS_AS(pf_transition_ratio(Occupation{4}, ParaOrder{4}), std::domain_error);
    CHECK(pf_midband_ratio(ParaOrder{4}) == doctest::Approx(1.5));
    CHECK(pf_midband_ratio(ParaOrder{3}) == doctest::Approx(4.0 / 3.0));
    CHECK(pf_midband_ratio(ParaOrder{2}) == doctest::Approx(1.0));
    for (int p = 2; p <= 15; ++p) {
        const double expected = (p % 2 == 0) ? (p + 2.0) / 4.0 : (p + 2.0 + 1.0 / p) / 4.0;
        CHECK(pf_midband_ratio(ParaOrder{p}) == doctest::Approx(expected).epsilon(1e-14));
    }
    CHECK_THROWS_AS(pf_midband_ratio(ParaOrder{1}), std::domain_error);
}

TEST_CASE("domain types reject bad input")
{
    CHECK_THROWS_AS(ParaOrder{0}, std::domain_error);
    CHECK_THROWS_AS(Occupation{-1}, std::domain_error);
    CHECK(Occupation{7}.pair_index() == 3);
    CHECK(Occupation{7}.parity() == Parity::kOdd);
}
