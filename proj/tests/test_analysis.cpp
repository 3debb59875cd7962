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
#include "lteseq/analysis.hpp"
#include "lteseq/bsequence.hpp"

#include <doctest.h>

#include <sstream>

using namespace lteseq;

namespace {

SequenceSpec squares_plus_one(std::size_t n)
{
    std::ostringstream text;
    for (std::size_t i = 1; i <= n; ++i) text << i * i + 1 << '\n';
    std::istringstream in(text.str());
    return parse_explicit("n^2+1", in);
}

}  // namespace

TEST_SUITE("analysis")
{
    TEST_CASE("frozen Fibonacci ranks")
    {
        const SequenceCache c = terms_up_to(make_lucas_u(1, -1), 60);
        const std::vector<std::pair<unsigned long, std::size_t>> expect = {
            {2, 3}, {3, 4}, {5, 5}, {7, 8}, {11, 10}, {13, 7}, {17, 9}, {19, 18}, {23, 24}, {29, 14}};
        for (const auto& [p, rho] : expect) {
            const RankEntry e = rank(c, Nat(p), 60);
            REQUIRE(e.found());
            CHECK(*e.rho == rho);
        }
        CHECK_FALSE(rank(c, Nat(59), 20).found());
        CHECK_THROWS_AS(rank(c, Nat(9), 20), DomainError);
        CHECK_THROWS_AS(rank(c, Nat(7), 61), IndexOutOfRange);
    }

    TEST_CASE("LTE invariant for x^n - y^n")
    {
        for (unsigned long x = 2; x <= 12; ++x) {
            for (unsigned long y = 1; y < x; ++y) {
                if (std::gcd(x, y) != 1) continue;
                const SequenceCache c = terms_up_to(make_power_diff(x, y), 120);
                for (unsigned long p : primes_up_to(50)) {
                    if (p == 2 || (x - y) % p != 0) continue;
                    for (std::size_t n = 1; n <= 120; ++n) {
                        CHECK(valuation_of(c[n], p) == valuation_of(Nat(x - y), p) + valuation_of(n, p));
                    }
                }
            }
        }
    }

    TEST_CASE("L-property passes on built-in families and fails on n^2+1")
    {
        const SequenceCache fib = terms_up_to(make_lucas_u(1, -1), 100);
        const CheckReport ok = check_l_property(fib, 100, 100);
        CHECK(ok.status == CheckStatus::pass);
        REQUIRE(ok.even_prime.has_value());
        CHECK_FALSE(ok.even_prime->witnesses.empty());

        const SequenceCache sq = terms_up_to(squares_plus_one(40), 40);
        const CheckReport bad = check_l_property(sq, 40, 50);
        CHECK(bad.status == CheckStatus::fail);
        CHECK(check_divisibility(sq, 40).status == CheckStatus::fail);
        CHECK(check_gcd_identity(sq, 40).status == CheckStatus::fail);
    }

    TEST_CASE("rank divides exactly the indices whose terms p divides")
    {
        const SequenceCache c = terms_up_to(make_lucas_u(3, -1), 200);
        const RankTable ranks = rank_table(c, 60, 200);
        for (const auto& [p, e] : ranks.entries()) {
            if (!e.found()) continue;
            for (std::size_t k = 1; k <= 200; ++k) {
                CHECK((c[k] % p == 0) == (k % *e.rho == 0));
            }
        }
        CHECK(check_rank_divisibility(c, ranks, 200).status == CheckStatus::pass);
        CHECK(check_valuation_structure(c, ranks, 200, 60).status == CheckStatus::pass);
        CHECK(check_rank_lte(c, ranks, 200, 60).status == CheckStatus::pass);
    }

    TEST_CASE("frozen delta: Fibonacci, p = 7")
    {
        const SequenceCache c = terms_up_to(make_lucas_u(1, -1), 80);
        const BSequence b = build_bsequence(c, 80);
        const RankTable ranks = rank_table(c, 20, 80);
        const auto r = find_delta(c, b, 7, ranks);
        REQUIRE(std::holds_alternative<DeltaResult>(r));
        const DeltaResult& d = std::get<DeltaResult>(r);
        CHECK(d.rho == 8);
        CHECK(d.delta == 8);
        CHECK(d.valuations == std::map<std::size_t, unsigned long>{{1, 0}, {2, 0}, {4, 0}, {8, 1}});
        CHECK_THROWS_AS(find_delta(c, b, 5, ranks), PreconditionSkip);  // p | rho
        CHECK_THROWS_AS(find_delta(c, b, 2, ranks), PreconditionSkip);
    }

    TEST_CASE("delta valuations sum to one")
    {
        for (const SequenceSpec& s : {SequenceSpec(make_power_diff(2, 1)), SequenceSpec(make_lucas_u(1, -1)),
                                      SequenceSpec(make_power_diff(5, 2))}) {
            const SequenceCache c = terms_up_to(s, 300);
            const BSequence b = build_bsequence(c, 300);
            const RankTable ranks = rank_table(c, 100, 300);
            std::size_t seen = 0;
            for (unsigned long p : primes_up_to(100)) {
                try {
                    const auto r = find_delta(c, b, p, ranks);
                    REQUIRE(std::holds_alternative<DeltaResult>(r));
                    unsigned long sum = 0;
                    for (const auto& [d, v] : std::get<DeltaResult>(r).valuations) sum += v;
                    CHECK(sum == 1);
                    ++seen;
                } catch (const PreconditionSkip&) {
                }
            }
            CHECK(seen > 0);
            CHECK(check_delta(c, b, ranks, 300, 100).status == CheckStatus::pass);
            CHECK(check_coprime_block(c, b, ranks, 300, 100).status == CheckStatus::pass);
            CHECK(check_rank_agreement(c, b, ranks, 300, 100).status == CheckStatus::pass);
        }
    }

    TEST_CASE("primitive divisors")
    {
        const SequenceCache c = terms_up_to(make_power_diff(2, 1), 40);
        const BSequence b = build_bsequence(c, 40);
        const PrimitiveDivisors six = primitive_divisors(c, b, 6, EffortBudget::quick());
        CHECK_FALSE(six.present);
        CHECK(six.primitive_part == 1);
        const PrimitiveDivisors twenty_one = primitive_divisors(c, b, 21, EffortBudget::quick());
        CHECK(twenty_one.present);
        CHECK(twenty_one.primes == std::vector<Nat>{Nat(337)});
        CHECK(primitive_part(Nat(2359), Nat(7)) == 337);
        CHECK(primitive_divisors(c, 21, EffortBudget::quick()).present);
    }
}
