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

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

namespace lteseq {

namespace {

ConjectureResult blank(int id, std::string reading, std::size_t n_max, std::size_t max_p)
{
    ConjectureResult r;
    r.conjecture_id = id;
    r.reading = std::move(reading);
    r.max_n = n_max;
    r.max_p = max_p;
    return r;
}

void absorb(ConjectureResult& into, ConjectureResult&& part)
{
    into.witnesses.insert(into.witnesses.end(), std::make_move_iterator(part.witnesses.begin()),
                          std::make_move_iterator(part.witnesses.end()));
    into.pending.insert(into.pending.end(), std::make_move_iterator(part.pending.begin()),
                        std::make_move_iterator(part.pending.end()));
    into.exceptional_set.insert(into.exceptional_set.end(), part.exceptional_set.begin(), part.exceptional_set.end());
    into.tested_count += part.tested_count;
    into.skipped_count += part.skipped_count;
    into.probabilistic = into.probabilistic || part.probabilistic;
}

void require_b(const BSequence& b, std::size_t n)
{
    if (n == 0 || n > b.size()) {
        throw IndexOutOfRange("b-sequence built to " + std::to_string(b.size()) + ", index " + std::to_string(n) +
                              " requested");
    }
}

// Records one squarefree verdict into a conjecture-3 reading.
void record_verdict(ConjectureResult& r, const char* check, std::size_t n, const Nat& bn,
                    const SquarefreeVerdict& v, const Nat& residual)
{
    ++r.tested_count;
    switch (v.kind) {
    case SquarefreeVerdict::Kind::squarefree: break;
    case SquarefreeVerdict::Kind::not_squarefree:
        r.witnesses.push_back(Witness(check).set("n", n).set("b_n", bn).set("p", v.witness));
        break;
    case SquarefreeVerdict::Kind::inconclusive: r.pending.push_back({n, residual, v.reason}); break;
    }
}

}  // namespace

ConjectureResult scan_conj1(const SequenceCache& cache, const RankTable& ranks, unsigned long max_p)
{
    ConjectureResult r = blank(1, "", cache.size(), max_p);
    for (const auto& [p, entry] : ranks.entries()) {
        if (p > max_p) {
            continue;
        }
        if (!entry.found()) {
            ++r.skipped_count;
            continue;
        }
        ++r.tested_count;
        const std::size_t rho = *entry.rho;
        if (rho % p == 0 && rho != p) {
            r.witnesses.push_back(Witness(checks::conj1).set("p", static_cast<std::size_t>(p)).set("rho", rho));
        }
    }
    r.notes.push_back("second sentence read as the contrapositive of the first; single implication tested");
    r.finalize();
    return r;
}

Conj2Result scan_conj2(const BSequence& b, std::size_t n_max, const ScanOptions& opts)
{
    require_b(b, n_max);
    const Conj2Result seed{blank(2, "weak", n_max, 0), blank(2, "strong", n_max, 0)};
    auto partials = parallel_partials(n_max, opts.workers, seed, [&](std::size_t i, Conj2Result& part) {
        const std::size_t m = i + 1;
        if (!b.is_integral(m)) {
            part.weak.skipped_count += m - 1;
            part.strong.skipped_count += m - 1;
            return;
        }
        const Nat bm = b.integer(m);
        for (std::size_t n = 1; n < m; ++n) {
            if (!b.is_integral(n)) {
                ++part.weak.skipped_count;
                ++part.strong.skipped_count;
                continue;
            }
            const Nat bn = b.integer(n);
            const Nat g = gcd(bm, bn);
            if (g == 1) {
                continue;
            }
            ++part.weak.tested_count;
            ++part.strong.tested_count;
            const unsigned long q = m % n == 0 ? prime_power_base(m / n) : 0;
            auto witness = [&](const char* check) {
                return Witness(check).set("m", m).set("n", n).set("b_m", bm).set("b_n", bn).set("gcd", g);
            };
            if (q == 0) {
                part.weak.witnesses.push_back(witness(checks::conj2_weak));
                part.strong.witnesses.push_back(witness(checks::conj2_strong));
            } else if (mpz_divisible_ui_p(g.get_mpz_t(), q) == 0) {
                part.strong.witnesses.push_back(witness(checks::conj2_strong));
            }
        }
    });
    Conj2Result out{blank(2, "weak", n_max, 0), blank(2, "strong", n_max, 0)};
    for (auto& p : partials) {
        absorb(out.weak, std::move(p.weak));
        absorb(out.strong, std::move(p.strong));
    }
    out.weak.notes.push_back("tested_count counts pairs with gcd(b_m, b_n) > 1");
    out.strong.notes.push_back("tested_count counts pairs with gcd(b_m, b_n) > 1");
    out.strong.notes.push_back("the prime q with m/n = q^alpha must also divide gcd(b_m, b_n)");
    out.weak.finalize();
    out.strong.finalize();
    return out;
}

Conj3Result scan_conj3(const BSequence& b, std::size_t n_max, const EffortBudget& effort, FactorCache& factors,
                       const ScanOptions& opts)
{
    require_b(b, n_max);
    const Conj3Result seed{blank(3, "all_primes", n_max, 0), blank(3, "odd_primes", n_max, 0)};
    auto partials = parallel_partials(n_max, opts.workers, seed, [&](std::size_t i, Conj3Result& part) {
        const std::size_t n = i + 1;
        if (!is_squarefree_index(n)) {
            return;
        }
        if (!b.is_integral(n)) {
            ++part.all_primes.skipped_count;
            ++part.odd_primes.skipped_count;
            return;
        }
        const Nat bn = b.integer(n);
        Factorization f = factors.get(bn, effort);
        const bool prob = f.probabilistic();
        record_verdict(part.all_primes, checks::conj3_all_primes, n, bn, squarefree_verdict(f), f.residual);
        part.all_primes.probabilistic = part.all_primes.probabilistic || prob;

        std::erase_if(f.factors, [](const PrimePower& pp) { return pp.prime == 2; });
        record_verdict(part.odd_primes, checks::conj3_odd_primes, n, bn, squarefree_verdict(f), f.residual);
        part.odd_primes.probabilistic = part.odd_primes.probabilistic || prob;
    });
    Conj3Result out{blank(3, "all_primes", n_max, 0), blank(3, "odd_primes", n_max, 0)};
    for (auto& p : partials) {
        absorb(out.all_primes, std::move(p.all_primes));
        absorb(out.odd_primes, std::move(p.odd_primes));
    }
    out.odd_primes.notes.push_back("exponent of 2 ignored");
    out.all_primes.finalize();
    out.odd_primes.finalize();
    return out;
}

ConjectureResult scan_conj4(const SequenceCache& cache, const BSequence& b, const RankTable& ranks,
                            std::size_t n_max, const ScanOptions& opts)
{
    require_b(b, n_max);
    if (n_max > cache.size()) {
        throw IndexOutOfRange("scan_conj4: N beyond cached terms");
    }
    std::set<std::size_t> rank_hits;
    for (const auto& [p, entry] : ranks.entries()) {
        if (entry.rho) {
            rank_hits.insert(*entry.rho);
        }
    }
    const ConjectureResult seed = blank(4, "", n_max, 0);
    auto partials = parallel_partials(n_max, opts.workers, seed, [&](std::size_t i, ConjectureResult& part) {
        const std::size_t n = i + 1;
        ++part.tested_count;
        if (rank_hits.contains(n)) {
            return;
        }
        if (primitive_part(cache[n], b.lcm_through(n - 1)) == 1) {
            part.exceptional_set.push_back(n);
        }
    });
    ConjectureResult out = blank(4, "", n_max, 0);
    for (auto& p : partials) {
        absorb(out, std::move(p));
    }
    out.finalize();
    if (!out.exceptional_set.empty()) {
        Nat m = 1;
        for (std::size_t n : out.exceptional_set) {
            m = lcm(m, Nat(static_cast<unsigned long>(n)));
        }
        out.candidate_M = m;
    }
    out.notes.push_back("existential statement: exceptional_set and candidate_M are evidence only");
    return out;
}

}  // namespace lteseq
