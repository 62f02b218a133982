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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "json.hpp"

using namespace parastat;
using namespace parastat::cli;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::initializer_list<const char*> args)
{
    std::vector<const char*> argv{"parastat"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> result;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        result.push_back(line);
    return result;
}

std::string temp_path(const char* name)
{
    return "parastat_test_" + std::string(name);
}

} // namespace

TEST_CASE("pfact")
{
    CHECK(invoke({"pfact", "4", "--p", "3"}).out == "120\n");
    CHECK(invoke({"pfact", "1", "--p", "7"}).out == "7\n");
    CHECK(invoke({"pfact", "2", "--p", "3", "--parafermion"}).out == "12\n");

    const Outcome outside = invoke({"pfact", "3", "--p", "2", "--parafermion"});
    CHECK(outside.code == kExitBadInput);
    CHECK(outside.err.find("parafermion") != std::string::npos);
    CHECK(invoke({"pfact", "3", "--p", "0"}).code == kExitBadInput);

    const auto j = nlohmann::json::parse(invoke({"--format", "json", "pfact", "4", "--p", "3"}).out);
    CHECK(j["value"] == "120");
}

TEST_CASE("hbt lambda column")
{
    const Outcome bose = invoke({"hbt", "--p", "1", "--mean", "2", "--orders", "2", "--methods", "closed-form"});
    REQUIRE(bose.code == kExitOk);
    const auto rows = lines(bose.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "p,mean_n,order,method,value,err_est,lambda_p,status");
    CHECK(rows[1] == "1,2,2,closed-form,8,2.8421709430404007e-14,2,ok");

    SweepConfig config;
    config.p_list = {4};
    config.mean_list = {1e-6};
    config.orders = {2};
    config.methods = {hbt::Method::kClosedForm};
    const auto sweep = run_sweep(config);
    REQUIRE(sweep.size() == 1);
    REQUIRE(sweep[0].lambda_p.has_value());
    CHECK(*sweep[0].lambda_p == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("hbt methods agree")
{
    SweepConfig config;
    config.p_list = {1, 2, 5};
    config.mean_list = {1e-3, 0.5, 10.0, 200.0};
    config.orders = {1, 2, 3, 4};
    config.methods = {hbt::Method::kClosedForm, hbt::Method::kHypergeometric, hbt::Method::kQuadrature,
                      hbt::Method::kFockOracle};
    const auto rows = run_sweep(config);
    CHECK(rows.size() == 3 * 4 * 4 * 4);
    for (const auto& row : rows)
        CHECK(row.status == "ok");
    CHECK(max_pairwise_spread(rows) < 1e-6);
}

TEST_CASE("hbt sweep is deterministic")
{
    const Outcome one = invoke({"hbt", "--p", "3,1,2", "--mean-log", "0.01,100,9", "--threads", "1"});
    const Outcome many = invoke({"hbt", "--p", "1,2,3", "--mean-log", "0.01,100,9", "--threads", "8"});
    REQUIRE(one.code == kExitOk);
    CHECK(one.out == many.out);
    CHECK(lines(one.out).size() == 1 + 3 * 9 * 4 * 4);
}

TEST_CASE("hbt skips and failures")
{
    const Outcome high = invoke({"hbt", "--p", "2", "--mean", "1", "--orders", "6", "--methods", "closed-form,fock-oracle"});
    CHECK(high.code == kExitOk);
    CHECK(high.out.find("skipped") != std::string::npos);

    const Outcome clamped = invoke({"hbt", "--p", "2", "--mean", "0", "--orders", "1", "--methods", "closed-form"});
    CHECK(clamped.code == kExitOk);
    CHECK(clamped.err.find("clamped") != std::string::npos);

    // the oracle's cutoff budget runs out here while the analytic route still works
    const Outcome partial = invoke({"hbt", "--p", "2", "--mean", "1e7", "--orders", "1", "--methods",
                                    "closed-form,fock-oracle"});
    CHECK(partial.code == kExitPartialFailure);
    CHECK(partial.out.find(",ok") != std::string::npos);
    CHECK(partial.out.find("error:") != std::string::npos);

    CHECK(invoke({"hbt", "--p", "2", "--mean", "-1"}).code == kExitBadInput);
    CHECK(invoke({"hbt", "--p", "2", "--mean", "1", "--methods", "nope"}).code == kExitBadInput);
}

TEST_CASE("hbt json")
{
    const Outcome r = invoke({"--format", "json", "hbt", "--p", "3", "--mean", "2", "--orders", "1,2", "--methods",
                              "closed-form,hypergeometric"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["rows"].size() == 4);
    CHECK(j["max_pairwise_spread"].get<double>() < 1e-10);
    CHECK(j["rows"][0]["value"].get<double>() == doctest::Approx(2.8));
    CHECK(j["rows"][0]["lambda_p"].is_null());
    CHECK(!j["rows"][2]["lambda_p"].is_null());
}

TEST_CASE("dist")
{
    const Outcome zero = invoke({"dist", "--x", "0", "--p", "3"});
    CHECK(zero.out == "n,pmf\n0,1\n");

    const Outcome bose = invoke({"--format", "json", "dist", "--x", "4", "--p", "1"});
    REQUIRE(bose.code == kExitOk);
    const auto j = nlohmann::json::parse(bose.out);
    double total = 0.0;
    for (const auto& row : j["rows"])
        total += row["pmf"].get<double>();
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(invoke({"dist", "--x", "-1", "--p", "3"}).code == kExitBadInput);
}

TEST_CASE("coherent overlap")
{
    const Outcome r = invoke({"--format", "json", "coherent", "--alpha", "0.8,0.3", "--beta", "-0.4,1.1", "--p", "3"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.dump().find("0.528479") != std::string::npos);
}

TEST_CASE("config file and output file")
{
    const std::string cfg = temp_path("config.toml");
    {
        std::ofstream f(cfg);
        f << "format = \"json\"\n";
    }
    CHECK(invoke({"--config", cfg.c_str(), "pfact", "4", "--p", "3"}).out.front() == '{');
    CHECK(invoke({"--config", cfg.c_str(), "--format", "csv", "pfact", "4", "--p", "3"}).out == "120\n");

    const std::string out = temp_path("out.csv");
    const Outcome r = invoke({"--out", out.c_str(), "pfact", "4", "--p", "3"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.empty());
    std::ifstream f(out);
    std::string content;
    std::getline(f, content);
    CHECK(content == "120");
    std::remove(cfg.c_str());
    std::remove(out.c_str());
}

TEST_CASE("verify")
{
    const auto checks = run_verify({});
    CHECK(checks.size() == 19);
    for (const auto& c : checks)
        CHECK_MESSAGE(c.pass, c.suite << " " << c.name);

    const Outcome hbt_only = invoke({"verify", "--suite", "hbt"});
    CHECK(hbt_only.code == kExitOk);
    for (const auto& line : lines(hbt_only.out))
        if (line.rfind("PASS", 0) == 0 || line.rfind("FAIL", 0) == 0)
            CHECK(line.find(" hbt ") != std::string::npos);

    VerifyOptions bad;
    bad.wrong_ladder = true;
    const auto broken = run_verify(bad);
    int failures = 0;
    for (const auto& c : broken)
        failures += c.pass ? 0 : 1;
    CHECK(failures > 0);
    CHECK(invoke({"--help"}).code == kExitOk);
    CHECK(invoke({"verify", "--inject-fault", "wrong-ladder"}).code == kExitVerifyFailed);
    CHECK(invoke({"verify", "--suite", "nope"}).code == kExitBadInput);
}
