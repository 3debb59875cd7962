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

#include "scan.hpp"

#include <algorithm>
#include <numeric>

namespace lteseq {

namespace {

using detail::PrimeSink;
using detail::scan_check;

std::size_t as_size(unsigned long v) { return static_cast<std::size_t>(v); }

void require_cached(const SequenceCache& cache, std::size_t n)
{
    if (n == 0 || n > cache.size()) {
        throw IndexOutOfRange("index " + std::to_string(n) + " outside cached range 1.." +
                              std::to_string(cache.size()));
    }
}

void require_b(const BSequence& b, std::size_t n)
{
    if (n > b.size()) {
        throw IndexOutOfRange("b-sequence built to " + std::to_string(b.size()) + ", index " + std::to_string(n) +
                              " requested");
    }
}

// Primes <= max_p iterated by the odd-prime checks; 2 is kept only when the
// informational section is wanted.
std::vector<unsigned long> scan_primes(unsigned long max_p, const ScanOptions& opts)
{
    std::vector<unsigned long> out;
    for (unsigned long p : primes_up_to(max_p)) {
        if (p != 2 || opts.even_prime_section) {
            out.push_back(p);
        }
    }
    return out;
}

// v[k] = nu_p(a_k) for 1 <= k <= n; v[0] unused.
std::vector<unsigned long> valuation_row(const SequenceCache& cache, unsigned long p, std::size_t n)
{
    std::vector<unsigned long> v(n + 1, 0);
    for (std::size_t k = 1; k <= n; ++k) {
        v[k] = valuation_of(cache[k], p);
    }
    return v;
}

bool b_divisible(const BSequence& b, std::size_t idx, unsigned long p)
{
    return mpz_divisible_ui_p(b.at(idx).get_num_mpz_t(), p) != 0;
}

unsigned long b_valuation(const BSequence& b, std::size_t idx, unsigned long p)
{
    const mpq_class& q = b.at(idx);
    return valuation_of(Nat(q.get_num()), p);
}

const char* kCoprimeBlockNote =
    "quantifier restricted to e | k with e > 1: the unrestricted form includes b_rho itself, which p always "
    "divides";

}  // namespace

std::optional<std::size_t> RankTable::rho(unsigned long p) const
{
    const auto it = entries_.find(p);
    if (it == entries_.end()) {
        return std::nullopt;
    }
    return it->second.rho;
}

RankEntry rank(const SequenceCache& cache, const Nat& p, std::size_t bound)
{
    if (!is_prime(p)) {
        throw DomainError("rank: " + p.get_str() + " is not prime");
    }
    require_cached(cache, bound);
    for (std::size_t k = 1; k <= bound; ++k) {
        if (mpz_divisible_p(cache[k].get_mpz_t(), p.get_mpz_t()) != 0) {
            return {k, bound};
        }
    }
    return {std::nullopt, bound};
}

RankTable rank_table(const SequenceCache& cache, unsigned long max_p, std::size_t bound)
{
    RankTable t;
    for (unsigned long p : primes_up_to(max_p)) {
        t.set(p, rank(cache, Nat(p), bound));
    }
    return t;
}

CheckReport check_l_property(const SequenceCache& cache, std::size_t n_max, unsigned long max_p,
                             const ScanOptions& opts)
{
    require_cached(cache, n_max);
    const auto primes = scan_primes(max_p, opts);
    return scan_check(
        checks::l_property, primes.size(), opts,
        [&](std::size_t i, CheckReport& r) {
            const unsigned long p = primes[i];
            PrimeSink sink(r, p);
            const auto v = valuation_row(cache, p, n_max);
            for (std::size_t k = 1; k <= n_max; ++k) {
                if (v[k] == 0) {
                    continue;
                }
                for (std::size_t n = 2; k * n <= n_max; ++n) {
                    sink.tested();
                    const unsigned long nu_n = valuation_of(n, p);
                    if (v[k * n] != v[k] + nu_n) {
                        sink.fail(Witness(checks::l_property)
                                      .set("p", as_size(p))
                                      .set("k", k)
                                      .set("n", n)
                                      .set("a_k", cache[k])
                                      .set("a_kn", cache[k * n])
                                      .set("nu_a_k", as_size(v[k]))
                                      .set("nu_n", as_size(nu_n))
                                      .set("nu_a_kn", as_size(v[k * n])));
                    }
                }
            }
        },
        true);
}

CheckReport check_divisibility(const SequenceCache& cache, std::size_t n_max, const ScanOptions& opts)
{
    require_cached(cache, n_max);
    return scan_check(checks::divisibility, n_max, opts, [&](std::size_t i, CheckReport& r) {
        const std::size_t k = i + 1;
        for (std::size_t n = 2; k * n <= n_max; ++n) {
            ++r.tested_count;
            const Nat rem = cache[k * n] % cache[k];
            if (rem != 0) {
                r.fail(Witness(checks::divisibility)
                           .set("k", k)
                           .set("n", n)
                           .set("a_k", cache[k])
                           .set("a_kn", cache[k * n])
                           .set("remainder", rem));
            }
        }
    });
}

CheckReport check_gcd_identity(const SequenceCache& cache, std::size_t n_max, const ScanOptions& opts)
{
    require_cached(cache, n_max);
    return scan_check(checks::gcd_identity, n_max, opts, [&](std::size_t i, CheckReport& r) {
        const std::size_t m = i + 1;
        for (std::size_t n = m; n <= n_max; ++n) {
            ++r.tested_count;
            const std::size_t g = std::gcd(m, n);
            const Nat value = gcd(cache[m], cache[n]);
            if (value != cache[g]) {
                r.fail(Witness(checks::gcd_identity)
                           .set("m", m)
                           .set("n", n)
                           .set("a_m", cache[m])
                           .set("a_n", cache[n])
                           .set("g", g)
                           .set("gcd_value", value)
                           .set("a_g", cache[g]));
            }
        }
    });
}

CheckReport check_rank_divisibility(const SequenceCache& cache, const RankTable& ranks, std::size_t n_max,
                                    const ScanOptions& opts)
{
    require_cached(cache, n_max);
    std::vector<std::pair<unsigned long, RankEntry>> entries(ranks.entries().begin(), ranks.entries().end());
    return scan_check(checks::rank_divisibility, entries.size(), opts, [&](std::size_t i, CheckReport& r) {
        const auto& [p, entry] = entries[i];
        if (!entry.found()) {
            r.skip("rank not found within search bound");
            return;
        }
        const std::size_t rho = *entry.rho;
        for (std::size_t k = 1; k <= n_max; ++k) {
            ++r.tested_count;
            const bool p_divides = mpz_divisible_ui_p(cache[k].get_mpz_t(), p) != 0;
            const bool rho_divides = k % rho == 0;
            if (p_divides != rho_divides) {
                r.fail(Witness(checks::rank_divisibility)
                           .set("p", as_size(p))
                           .set("rho", rho)
                           .set("k", k)
                           .set("a_k", cache[k])
                           .set("p_divides_a_k", std::size_t{p_divides})
                           .set("rho_divides_k", std::size_t{rho_divides}));
            }
        }
    });
}

CheckReport check_valuation_structure(const SequenceCache& cache, const RankTable& ranks, std::size_t n_max,
                                      unsigned long max_p, const ScanOptions& opts)
{
    require_cached(cache, n_max);
    const auto primes = scan_primes(max_p, opts);
    return scan_check(
        checks::valuation_structure, primes.size(), opts,
        [&](std::size_t i, CheckReport& r) {
            const unsigned long p = primes[i];
            PrimeSink sink(r, p);
            const auto rho_opt = ranks.rho(p);
            if (!rho_opt || *rho_opt > n_max) {
                sink.skip("rank not found within search bound");
                return;
            }
            const std::size_t rho = *rho_opt;
            const unsigned long rv = valuation_of(cache[rho], p);
            for (std::size_t k = 1; k <= n_max; ++k) {
                const unsigned long s = valuation_of(cache[k], p);
                if (s == 0) {
                    continue;
                }
                sink.tested();
                const bool rho_divides = k % rho == 0;
                const long nu_t = rho_divides ? static_cast<long>(valuation_of(k / rho, p)) : -1;
                const bool ok = rho_divides && s >= rv && nu_t == static_cast<long>(s - rv);
                if (!ok) {
                    sink.fail(Witness(checks::valuation_structure)
                                  .set("p", as_size(p))
                                  .set("rho", rho)
                                  .set("k", k)
                                  .set("a_k", cache[k])
                                  .set("r", as_size(rv))
                                  .set("s", as_size(s))
                                  .set("rho_divides_k", std::size_t{rho_divides})
                                  .set("nu_t", Nat(nu_t)));
                }
            }
        },
        true);
}

CheckReport check_rank_lte(const SequenceCache& cache, const RankTable& ranks, std::size_t n_max,
                           unsigned long max_p, const ScanOptions& opts)
{
    require_cached(cache, n_max);
    const auto primes = scan_primes(max_p, opts);
    return scan_check(
        checks::rank_lte, primes.size(), opts,
        [&](std::size_t i, CheckReport& r) {
            const unsigned long p = primes[i];
            PrimeSink sink(r, p);
            const auto rho_opt = ranks.rho(p);
            if (!rho_opt || *rho_opt > n_max) {
                sink.skip("rank not found within search bound");
                return;
            }
            const std::size_t rho = *rho_opt;
            const unsigned long base = valuation_of(cache[rho], p);
            for (std::size_t s = 2; rho * s <= n_max; ++s) {
                sink.tested();
                const unsigned long nu_s = valuation_of(s, p);
                const unsigned long actual = valuation_of(cache[rho * s], p);
                if (actual != base + nu_s) {
                    sink.fail(Witness(checks::rank_lte)
                                  .set("p", as_size(p))
                                  .set("rho", rho)
                                  .set("s", s)
                                  .set("a_rho", cache[rho])
                                  .set("a_rho_s", cache[rho * s])
                                  .set("nu_a_rho", as_size(base))
                                  .set("nu_s", as_size(nu_s))
                                  .set("nu_a_rho_s", as_size(actual)));
                }
            }
        },
        true);
}

std::variant<DeltaResult, CheckReport> find_delta(const SequenceCache& cache, const BSequence& b, unsigned long p,
                                                  const RankTable& ranks)
{
    if (p % 2 == 0) {
        throw PreconditionSkip("delta: p must be odd");
    }
    const auto rho_opt = ranks.rho(p);
    if (!rho_opt) {
        throw PreconditionSkip("delta: rank of " + std::to_string(p) + " not found");
    }
    const std::size_t rho = *rho_opt;
    if (rho % p == 0) {
        throw PreconditionSkip("delta: p divides its rank");
    }
    if (rho * p > b.size() || rho * p > cache.size()) {
        throw PreconditionSkip("delta: index p*rho beyond built range");
    }

    DeltaResult result{p, rho, 0, {}};
    std::size_t positive = 0;
    bool exact = true;
    for (std::size_t d : index_divisors(rho)) {
        const unsigned long v = b_valuation(b, p * d, p);
        result.valuations[d] = v;
        if (v > 0) {
            ++positive;
            if (result.delta == 0) {
                result.delta = d;
            }
            exact = exact && v == 1;
        }
    }
    if (positive == 1 && exact) {
        return result;
    }
    Witness w(checks::delta);
    w.set("p", as_size(p)).set("rho", rho).set("positive_count", positive);
    for (const auto& [d, v] : result.valuations) {
        w.set("nu_b_" + std::to_string(p * d), as_size(v));
    }
    CheckReport r(checks::delta);
    r.tested_count = 1;
    r.fail(std::move(w));
    r.finalize();
    return r;
}

CheckReport check_delta(const SequenceCache& cache, const BSequence& b, const RankTable& ranks, std::size_t n_max,
                        unsigned long max_p, const ScanOptions& opts)
{
    require_cached(cache, n_max);
    require_b(b, n_max);
    const auto primes = scan_primes(max_p, opts);
    return scan_check(
        checks::delta, primes.size(), opts,
        [&](std::size_t i, CheckReport& r) {
            const unsigned long p = primes[i];
            PrimeSink sink(r, p);
            const auto rho = ranks.rho(p);
            if (!rho) {
                sink.skip("rank not found within search bound");
                return;
            }
            if (*rho % p == 0) {
                sink.skip("p divides rank");
                return;
            }
            if (*rho * p > n_max) {
                sink.skip("p*rho beyond n_max");
                return;
            }
            sink.tested();
            if (p == 2) {
                // find_delta is odd-only; the informational run repeats its
                // body for p = 2.
                std::size_t positive = 0;
                bool exact = true;
                Witness w(checks::delta);
                w.set("p", as_size(p)).set("rho", *rho);
                for (std::size_t d : index_divisors(*rho)) {
                    const unsigned long v = b_valuation(b, p * d, p);
                    w.set("nu_b_" + std::to_string(p * d), as_size(v));
                    positive += v > 0;
                    exact = exact && v <= 1;
                }
                if (positive != 1 || !exact) {
                    w.set("positive_count", positive);
                    sink.fail(std::move(w));
                }
                return;
            }
            auto outcome = find_delta(cache, b, p, ranks);
            if (auto* failed = std::get_if<CheckReport>(&outcome)) {
                for (auto& w : failed->witnesses) {
                    sink.fail(std::move(w));
                }
            }
        },
        true);
}

CheckReport check_coprime_block(const SequenceCache& cache, const BSequence& b, const RankTable& ranks,
                                std::size_t n_max, unsigned long max_p, const ScanOptions& opts)
{
    require_cached(cache, n_max);
    require_b(b, n_max);
    const auto primes = scan_primes(max_p, opts);
    CheckReport out = scan_check(
        checks::coprime_block, primes.size(), opts,
        [&](std::size_t i, CheckReport& r) {
            const unsigned long p = primes[i];
            PrimeSink sink(r, p);
            const auto rho_opt = ranks.rho(p);
            if (!rho_opt) {
                sink.skip("rank not found within search bound");
                return;
            }
            const std::size_t rho = *rho_opt;
            const auto rho_divs = index_divisors(rho);
            for (std::size_t k = 2; rho * k <= n_max; ++k) {
                if (std::gcd(static_cast<std::size_t>(p) * rho, k) != 1) {
                    continue;
                }
                sink.tested();
                for (std::size_t e : index_divisors(k)) {
                    if (e == 1) {
                        continue;
                    }
                    for (std::size_t d : rho_divs) {
                        if (b_divisible(b, d * e, p)) {
                            sink.fail(Witness(checks::coprime_block)
                                          .set("p", as_size(p))
                                          .set("rho", rho)
                                          .set("k", k)
                                          .set("d", d)
                                          .set("e", e)
                                          .set("b_de", Nat(b.at(d * e).get_num()))
                                          .set("nu", as_size(b_valuation(b, d * e, p))));
                        }
                    }
                }
            }
        },
        true);
    out.notes.push_back(kCoprimeBlockNote);
    return out;
}

CheckReport check_rank_agreement(const SequenceCache& cache, const BSequence& b, const RankTable& ranks,
                                 std::size_t n_max, unsigned long max_p, const ScanOptions& opts)
{
    require_cached(cache, n_max);
    require_b(b, n_max);
    const auto& primes = primes_up_to(max_p);
    return scan_check(checks::rank_agreement, primes.size(), opts, [&](std::size_t i, CheckReport& r) {
        const unsigned long p = primes[i];
        std::size_t first_a = 0;
        std::size_t first_b = 0;
        for (std::size_t k = 1; k <= n_max && (first_a == 0 || first_b == 0); ++k) {
            if (first_a == 0 && mpz_divisible_ui_p(cache[k].get_mpz_t(), p) != 0) {
                first_a = k;
            }
            if (first_b == 0 && b_divisible(b, k, p)) {
                first_b = k;
            }
        }
        ++r.tested_count;
        if ((first_a == 0) != (first_b == 0)) {
            r.fail(Witness(checks::prime_set_agreement)
                       .set("p", as_size(p))
                       .set("n_max", n_max)
                       .set("in_a", std::size_t{first_a != 0})
                       .set("in_b", std::size_t{first_b != 0}));
        }
        const auto rho = ranks.rho(p);
        if (!rho || *rho > n_max) {
            r.skip("rank not found within search bound");
            return;
        }
        ++r.tested_count;
        if (first_b != *rho) {
            r.fail(Witness(checks::rank_agreement).set("p", as_size(p)).set("rank_a", *rho).set("rank_b", first_b));
        }
    });
}

Nat primitive_part(const Nat& a_n, const Nat& earlier_lcm)
{
    Nat r = a_n;
    for (Nat g = gcd(r, earlier_lcm); g > 1; g = gcd(r, g)) {
        r /= g;
    }
    return r;
}

PrimitiveDivisors primitive_divisors(const SequenceCache& cache, const BSequence& b, std::size_t n,
                                     const EffortBudget& effort)
{
    require_cached(cache, n);
    require_b(b, n);
    PrimitiveDivisors out;
    out.primitive_part = primitive_part(cache[n], b.lcm_through(n - 1));
    out.present = out.primitive_part > 1;
    if (!out.present) {
        return out;
    }
    const Factorization f = cache.factor_cache().get(out.primitive_part, effort);
    for (const auto& pp : f.factors) {
        out.primes.push_back(pp.prime);
    }
    out.complete = f.complete();
    out.probabilistic = f.probabilistic();
    return out;
}

PrimitiveDivisors primitive_divisors(const SequenceCache& cache, std::size_t n, const EffortBudget& effort)
{
    return primitive_divisors(cache, build_bsequence(cache, n), n, effort);
}

}  // namespace lteseq
