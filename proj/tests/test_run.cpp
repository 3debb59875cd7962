/*
   Copyright 2026 The lteseq Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#include "lteseq/run.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lteseq;

namespace {

std::string temp_path(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("lteseq_test_" + name)).string();
}

RunConfig config(Command cmd, std::string seq, std::size_t n, unsigned long p)
{
    RunConfig c;
    c.command = cmd;
    c.spec_text = std::move(seq);
    c.max_n = n;
    c.max_p = p;
    return c;
}

}  // namespace

TEST_SUITE("run")
{
    TEST_CASE("spec grammar")
    {
        CHECK(describe(parse_spec("power-diff:x=3,y=2")) == "power-diff:x=3,y=2");
        CHECK(describe(parse_spec("power-diff:y=2,x=3")) == "power-diff:x=3,y=2");
        CHECK(describe(parse_spec("lucas-u:P=1,Q=-1")) == "lucas-u:P=1,Q=-1");
        CHECK_THROWS_AS(parse_spec("power-diff:x=3"), ConfigError);
        CHECK_THROWS_AS(parse_spec("power-diff:x=3,y=2,z=1"), ConfigError);
        CHECK_THROWS_AS(parse_spec("power-diff:x=3,x=2"), ConfigError);
        CHECK_THROWS_AS(parse_spec("power-diff x=3,y=2"), ConfigError);
        CHECK_THROWS_AS(parse_spec("power-diff:x=three,y=2"), ConfigError);
        CHECK_THROWS_AS(parse_spec("power-diff:x=6,y=4"), ConfigError);
        CHECK_THROWS_AS(parse_spec("lucas-u:P=0,Q=1"), ConfigError);
        CHECK_THROWS_AS(parse_spec("fibonacci:n=1"), ConfigError);
        CHECK_THROWS_AS(parse_spec("explicit:file=/nonexistent/terms"), IoError);
        try {
            parse_spec("power-diff:x=3;y=2");
            FAIL("accepted");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("position 14") != std::string::npos);
        }
    }

    TEST_CASE("effort parsing")
    {
        CHECK(parse_effort("quick") == EffortBudget::quick());
        CHECK(parse_effort("default") == EffortBudget::standard());
        const EffortBudget e = parse_effort("trial=500,rounds=4");
        CHECK(e.trial_bound == 500);
        CHECK(e.primality_rounds == 4);
        CHECK(e.rho_iterations == EffortBudget{}.rho_iterations);
        CHECK_THROWS_AS(parse_effort("fast"), ConfigError);
        CHECK_THROWS_AS(parse_effort("trial=-1"), ConfigError);
        CHECK_THROWS_AS(parse_effort("depth=3"), ConfigError);
    }

    TEST_CASE("check selection")
    {
        std::ostringstream diag;
        RunConfig c = config(Command::analyze, "lucas-u:P=1,Q=-1", 30, 30);
        c.checks = {"gcd_identity", "divisibility"};
        const RunReport r = run(c, diag);
        CHECK(r.checks == std::vector<std::string>{"divisibility", "gcd_identity"});
        CHECK(r.check_reports.size() == 2);
        c.checks = {"structure"};
        CHECK(run(c, diag).check_reports.size() == 3);
        c.checks = {"conj1"};
        CHECK_THROWS_AS(run(c, diag), ConfigError);
        c.checks = {};
        c.max_p = 2;
        CHECK_THROWS_AS(run(c, diag), ConfigError);
    }

    TEST_CASE("report round-trips through JSON")
    {
        std::ostringstream diag;
        for (Command cmd : {Command::analyze, Command::bseq, Command::rank, Command::conjectures}) {
            RunConfig c = config(cmd, "lucas-u:P=1,Q=-1", 60, 40);
            c.timing = cmd == Command::rank;
            const RunReport r = run(c, diag);
            const std::string text = serialize(r);
            const RunReport back = parse_report(text);
            CHECK(back == r);
            CHECK(serialize(back) == text);
        }
    }

    TEST_CASE("exit codes")
    {
        std::ostringstream diag;
        CHECK(run(config(Command::analyze, "power-diff:x=2,y=1", 60, 60), diag).exit_code == kExitOk);

        RunConfig conj = config(Command::conjectures, "lucas-u:P=1,Q=-1", 60, 30);
        conj.checks = {"conj3"};
        CHECK(run(conj, diag).exit_code == kExitFailure);
        conj.odd_primes_only = true;
        const RunReport odd = run(conj, diag);
        CHECK(odd.exit_code == kExitOk);
        CHECK(odd.conjectures.at("conj3_all_primes").status == ConjectureStatus::counterexample);

        RunConfig starved = config(Command::conjectures, "power-diff:x=2,y=1", 120, 30);
        starved.checks = {"conj3"};
        starved.effort = parse_effort("trial=50,rho=10");
        const RunReport inc = run(starved, diag);
        CHECK(inc.exit_code == kExitInconclusive);
        CHECK_FALSE(inc.inconclusive.empty());
    }

    TEST_CASE("odd-primes-only drops the p = 2 section")
    {
        std::ostringstream diag;
        RunConfig c = config(Command::analyze, "lucas-u:P=1,Q=-1", 60, 30);
        c.checks = {"l_property"};
        CHECK(run(c, diag).check_reports.at("l_property").even_prime.has_value());
        c.odd_primes_only = true;
        CHECK_FALSE(run(c, diag).check_reports.at("l_property").even_prime.has_value());
    }

    TEST_CASE("reports are identical across workers and cache state")
    {
        const std::string cache = temp_path("cache.jsonl");
        std::filesystem::remove(cache);
        std::ostringstream diag;
        RunConfig c = config(Command::conjectures, "power-diff:x=2,y=1", 90, 60);
        c.cache_path = cache;
        const std::string cold = serialize(run(c, diag));
        REQUIRE(std::filesystem::exists(cache));
        c.workers = 6;
        const std::string warm = serialize(run(c, diag));
        CHECK(cold == warm);
        RunConfig a = config(Command::analyze, "lucas-u:P=1,Q=-1", 120, 120);
        const std::string one = serialize(run(a, diag));
        a.workers = 5;
        CHECK(serialize(run(a, diag)) == one);
        std::filesystem::remove(cache);
    }

    TEST_CASE("report file is written")
    {
        const std::string path = temp_path("report.json");
        std::ostringstream diag;
        RunConfig c = config(Command::bseq, "power-diff:x=2,y=1", 10, 10);
        c.report_path = path;
        const RunReport r = run(c, diag);
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        CHECK(ss.str() == serialize(r));
        REQUIRE(r.bsequence.has_value());
        CHECK(r.bsequence->at(4).b == 31);
        std::filesystem::remove(path);
        c.report_path = "/nonexistent/dir/report.json";
        CHECK_THROWS_AS(run(c, diag), IoError);
    }
}
