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
#include "lteseq/factor_cache.hpp"

#include <doctest.h>

#include <sstream>

using namespace lteseq;

TEST_SUITE("factor_cache")
{
    TEST_CASE("save and load round-trip")
    {
        FactorCache a;
        const EffortBudget e = EffortBudget::quick();
        for (unsigned long n : {63UL, 97UL, 1UL, 2097151UL, 1000000UL}) {
            a.get(Nat(n), e);
        }
        CHECK(a.dirty());
        std::stringstream disk;
        a.save(disk);
        FactorCache b;
        std::ostringstream warn;
        const auto stats = b.load(disk, warn);
        CHECK(stats.loaded == 5);
        CHECK(stats.skipped == 0);
        CHECK(warn.str().empty());
        for (unsigned long n : {63UL, 97UL, 1UL, 2097151UL, 1000000UL}) {
            REQUIRE(b.find(Nat(n), e).has_value());
            CHECK(*b.find(Nat(n), e) == factorize(Nat(n), e));
        }
        CHECK_FALSE(b.find(Nat(63), EffortBudget::thorough()).has_value());
        std::stringstream again;
        b.save(again);
        std::stringstream first;
        a.save(first);
        CHECK(again.str() == first.str());
    }

    TEST_CASE("corrupt lines are skipped with a warning")
    {
        const std::string fp = EffortBudget::quick().fingerprint();
        std::stringstream disk;
        disk << R"({"value":"63","effort":")" << fp
             << R"(","factors":[["3",2],["7",1]],"residual":"1","residual_status":"unit"})" << '\n';
        disk << "not json at all\n";
        disk << R"({"value":"64","effort":")" << fp
             << R"(","factors":[["3",2],["7",1]],"residual":"1","residual_status":"unit"})" << '\n';
        disk << R"({"value":"15","effort":")" << fp
             << R"(","factors":[["15",1]],"residual":"1","residual_status":"unit"})" << '\n';
        disk << R"({"value":"35","effort":")" << fp << R"(","factors":[["5",1],["7",1]]})" << '\n';
        disk << '\n';
        FactorCache c;
        std::ostringstream warn;
        const auto stats = c.load(disk, warn);
        CHECK(stats.loaded == 1);
        CHECK(stats.skipped == 4);
        CHECK_FALSE(warn.str().empty());
        CHECK(c.find(Nat(63), EffortBudget::quick()).has_value());
        CHECK_FALSE(c.find(Nat(64), EffortBudget::quick()).has_value());
        CHECK_FALSE(c.find(Nat(15), EffortBudget::quick()).has_value());
    }
}
