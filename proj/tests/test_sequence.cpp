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
#include "lteseq/sequence.hpp"
#include "lteseq/factor_cache.hpp"

#include <doctest.h>

#include <sstream>

using namespace lteseq;

TEST_SUITE("sequence")
{
    TEST_CASE("frozen terms")
    {
        const SequenceSpec fib = make_lucas_u(1, -1);
        const std::vector<unsigned long> f = {1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144};
        for (std::size_t n = 1; n <= f.size(); ++n) {
            CHECK(term(fib, n) == f[n - 1]);
        }
        const SequenceSpec mersenne = make_power_diff(2, 1);
        CHECK(term(mersenne, 10) == 1023);
        CHECK(term(make_power_diff(3, 2), 3) == 19);
        // Pell numbers, U(2, -1)
        CHECK(term(make_lucas_u(2, -1), 6) == 70);
        CHECK(describe(mersenne) == "power-diff:x=2,y=1");
        CHECK(describe(fib) == "lucas-u:P=1,Q=-1");
    }

    TEST_CASE("constructors validate")
    {
        CHECK_THROWS_AS(make_power_diff(4, 2), InvalidSequence);
        CHECK_THROWS_AS(make_power_diff(2, 3), InvalidSequence);
        CHECK_THROWS_AS(make_power_diff(2, 0), InvalidSequence);
        CHECK_THROWS_AS(make_lucas_u(0, 1), InvalidSequence);
        std::istringstream empty("# nothing\n\n");
        CHECK_THROWS_AS(parse_explicit("empty", empty), InvalidSequence);
        std::istringstream zero("1\n0\n");
        CHECK_THROWS_AS(parse_explicit("zero", zero), InvalidSequence);
        std::istringstream junk("1\nx\n");
        CHECK_THROWS_AS(parse_explicit("junk", junk), InvalidSequence);
        CHECK_THROWS_AS(load_explicit("/nonexistent/terms.txt"), IoError);
    }

    TEST_CASE("explicit terms and range")
    {
        std::istringstream in("# squares plus one\n2\n5\n\n10\n");
        const SequenceSpec s = parse_explicit("sq", in);
        CHECK(term(s, 3) == 10);
        CHECK_THROWS_AS(term(s, 4), IndexOutOfRange);
        CHECK_THROWS_AS(terms_up_to(s, 4), IndexOutOfRange);
        const SequenceCache c = terms_up_to(s, 3);
        CHECK(c[2] == 5);
        CHECK_THROWS_AS(c.at(0), IndexOutOfRange);
    }

    TEST_CASE("term guard")
    {
        TermLimits tight;
        tight.max_digits = 20;
        CHECK_NOTHROW(terms_up_to(make_power_diff(2, 1), 60, tight));
        CHECK_THROWS(terms_up_to(make_power_diff(2, 1), 80, tight));
    }

    TEST_CASE("divisibility holds up to 300 for the built-in families")
    {
        for (const SequenceSpec& s : {SequenceSpec(make_power_diff(2, 1)), SequenceSpec(make_power_diff(5, 3)),
                                      SequenceSpec(make_lucas_u(1, -1)), SequenceSpec(make_lucas_u(3, 2))}) {
            const SequenceCache c = terms_up_to(s, 300);
            for (std::size_t k = 1; k <= 300; ++k) {
                for (std::size_t m = 2 * k; m <= 300; m += k) {
                    if (c[m] % c[k] != 0) {
                        FAIL(describe(s) << ": a_" << k << " does not divide a_" << m);
                    }
                }
            }
        }
    }

    TEST_CASE("cached terms equal terms computed cold")
    {
        const SequenceSpec s = make_lucas_u(3, -2);
        const SequenceCache c = terms_up_to(s, 120);
        for (std::size_t n = 1; n <= 120; n += 7) {
            CHECK(c[n] == term(s, n));
        }
    }

    TEST_CASE("factorizations go through the shared cache")
    {
        auto fc = std::make_shared<FactorCache>();
        const SequenceCache c = terms_up_to(make_power_diff(2, 1), 30, {}, fc);
        const Factorization f = c.factorization(21, EffortBudget::quick());
        CHECK(f.value() == c[21]);
        CHECK(fc->size() == 1);
        CHECK(fc->find(c[21], EffortBudget::quick()).has_value());
    }
}
