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
#include "lteseq/conjectures.hpp"

#include <doctest.h>

using namespace lteseq;

namespace {

struct Built {
    SequenceCache cache;
    BSequence b;
    RankTable ranks;
};

Built build(const SequenceSpec& s, std::size_t n, unsigned long max_p)
{
    SequenceCache c = terms_up_to(s, n);
    BSequence b = build_bsequence(c, n);
    RankTable r = rank_table(c, max_p, n);
    return {std::move(c), std::move(b), std::move(r)};
}

}  // namespace

TEST_SUITE("conjectures")
{
    TEST_CASE("conj1 has no counterexample on the classical families")
    {
        for (const SequenceSpec& s : {SequenceSpec(make_power_diff(2, 1)), SequenceSpec(make_lucas_u(1, -1))}) {
            const Built x = build(s, 200, 200);
            const ConjectureResult r = scan_conj1(x.cache, x.ranks, 200);
            CHECK(r.status == ConjectureStatus::no_counterexample);
            CHECK(r.tested_count > 0);
        }
    }

    TEST_CASE("conj2 frozen: zero failures for N = 150")
    {
        for (const SequenceSpec& s : {SequenceSpec(make_power_diff(2, 1)), SequenceSpec(make_lucas_u(1, -1))}) {
            const Built x = build(s, 150, 50);
            const Conj2Result r = scan_conj2(x.b, 150);
            CHECK(r.weak.status == ConjectureStatus::no_counterexample);
            CHECK(r.strong.status == ConjectureStatus::no_counterexample);
            CHECK(r.weak.witnesses.empty());
        }
    }

    TEST_CASE("conj3 separates the two readings on Fibonacci")
    {
        const Built x = build(make_lucas_u(1, -1), 60, 50);
        FactorCache fc;
        const Conj3Result r = scan_conj3(x.b, 60, EffortBudget::standard(), fc);
        CHECK(r.all_primes.status == ConjectureStatus::counterexample);
        REQUIRE_FALSE(r.all_primes.witnesses.empty());
        const Witness& w = r.all_primes.witnesses.front();
        CHECK(w.get("n") == 6);
        CHECK(w.get("b_n") == 4);
        CHECK(w.get("p") == 2);
        CHECK(r.odd_primes.status == ConjectureStatus::no_counterexample);
    }

    TEST_CASE("conj3 with a starved budget is inconclusive, never a false verdict")
    {
        const Built x = build(make_power_diff(2, 1), 120, 20);
        FactorCache fc;
        EffortBudget tiny;
        tiny.trial_bound = 50;
        tiny.rho_iterations = 10;
        const Conj3Result r = scan_conj3(x.b, 120, tiny, fc);
        CHECK(r.odd_primes.status != ConjectureStatus::counterexample);
        CHECK_FALSE(r.odd_primes.pending.empty());
        CHECK(r.odd_primes.status == ConjectureStatus::inconclusive);
    }

    TEST_CASE("conj4 exceptional sets")
    {
        const Built m = build(make_power_diff(2, 1), 100, 100);
        const ConjectureResult a = scan_conj4(m.cache, m.b, m.ranks, 100);
        CHECK(a.exceptional_set == std::vector<std::size_t>{1, 6});
        CHECK(a.pending.empty());
        const Built f = build(make_lucas_u(1, -1), 150, 100);
        const ConjectureResult b = scan_conj4(f.cache, f.b, f.ranks, 150);
        CHECK(b.exceptional_set == std::vector<std::size_t>{1, 2, 6, 12});
        REQUIRE(b.candidate_M.has_value());
        CHECK(*b.candidate_M == 12);
    }

    TEST_CASE("conj4 is consistent when N shrinks")
    {
        const Built f = build(make_lucas_u(1, -1), 150, 60);
        const ConjectureResult full = scan_conj4(f.cache, f.b, f.ranks, 150);
        for (std::size_t n : {5UL, 12UL, 40UL, 100UL}) {
            const ConjectureResult part = scan_conj4(f.cache, f.b, f.ranks, n);
            std::vector<std::size_t> expect;
            for (std::size_t e : full.exceptional_set) {
                if (e <= n) expect.push_back(e);
            }
            CHECK(part.exceptional_set == expect);
        }
    }

    TEST_CASE("worker count does not change conjecture results")
    {
        const Built f = build(make_lucas_u(1, -1), 120, 60);
        const Conj2Result one = scan_conj2(f.b, 120, {1, true});
        const Conj2Result many = scan_conj2(f.b, 120, {6, true});
        CHECK(one.weak == many.weak);
        CHECK(one.strong == many.strong);
        CHECK(scan_conj4(f.cache, f.b, f.ranks, 120, {1, true}) == scan_conj4(f.cache, f.b, f.ranks, 120, {5, true}));
    }
}
