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

#include "lteseq/bsequence.hpp"

#include "scan.hpp"

namespace lteseq {

namespace {

mpq_class quotient(const Nat& num, const Nat& den)
{
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

void require_range(const BSequence& b, const SequenceCache& cache, std::size_t n)
{
    if (n == 0 || n > b.size() || n > cache.size()) {
        throw IndexOutOfRange("index " + std::to_string(n) + " outside built range 1.." +
                              std::to_string(std::min(b.size(), cache.size())));
    }
}

std::vector<std::size_t> small_primes_through(std::size_t n)
{
    std::vector<std::size_t> out;
    for (unsigned long p : primes_up_to(n)) {
        out.push_back(p);
    }
    return out;
}

// Records one recursion identity b_index == num/den.
void check_identity(CheckReport& report, const BSequence& b, int form, std::size_t p, std::size_t q,
                    std::size_t k, std::size_t index, const Nat& num, const Nat& den)
{
    ++report.tested_count;
    const mpq_class expected = quotient(num, den);
    const mpq_class& actual = b.at(index);
    if (actual == expected && expected.get_den() == 1) {
        return;
    }
    report.fail(Witness(checks::recursion)
                    .set("form", static_cast<std::size_t>(form))
                    .set("p", p)
                    .set("q", q)
                    .set("k", k)
                    .set("index", index)
                    .set("b_num", Nat(actual.get_num()))
                    .set("b_den", Nat(actual.get_den()))
                    .set("quotient_num", Nat(expected.get_num()))
                    .set("quotient_den", Nat(expected.get_den())));
}

}  // namespace

const mpq_class& BSequence::at(std::size_t n) const
{
    if (n == 0 || n > terms.size()) {
        throw IndexOutOfRange("b-sequence index " + std::to_string(n) + " outside 1.." + std::to_string(terms.size()));
    }
    return terms[n - 1];
}

Nat BSequence::integer(std::size_t n) const
{
    const mpq_class& v = at(n);
    if (v.get_den() != 1) {
        throw DomainError("b_" + std::to_string(n) + " = " + v.get_str() + " is not an integer");
    }
    return Nat(v.get_num());
}

Nat BSequence::lcm_through(std::size_t n) const
{
    if (n == 0) {
        return 1;
    }
    if (n > prefix_lcms.size()) {
        throw IndexOutOfRange("prefix lcm " + std::to_string(n) + " not built");
    }
    return prefix_lcms[n - 1];
}

BSequence build_bsequence(const SequenceCache& cache, std::size_t n)
{
    if (n == 0 || n > cache.size()) {
        throw IndexOutOfRange("build_bsequence: N = " + std::to_string(n) + " outside cached range 1.." +
                              std::to_string(cache.size()));
    }
    BSequence b;
    b.terms.reserve(n);
    b.integral.reserve(n);
    b.prefix_lcms.reserve(n);
    Nat running = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        Nat next = lcm(running, cache[i]);
        mpq_class q = quotient(next, running);
        b.integral.push_back(q.get_den() == 1);
        b.terms.push_back(std::move(q));
        b.prefix_lcms.push_back(next);
        running = std::move(next);
    }
    return b;
}

StructureReport verify_structure(const SequenceCache& cache, const BSequence& b, std::size_t n,
                                 const ScanOptions& opts)
{
    require_range(b, cache, n);
    StructureReport out;

    out.product_formula = detail::scan_check(checks::product_formula, n, opts, [&](std::size_t i, CheckReport& r) {
        const std::size_t idx = i + 1;
        mpq_class product = 1;
        for (std::size_t d : index_divisors(idx)) {
            product *= b.at(d);
        }
        ++r.tested_count;
        if (product != mpq_class(cache[idx])) {
            r.fail(Witness(checks::product_formula)
                       .set("n", idx)
                       .set("a_n", cache[idx])
                       .set("product_num", Nat(product.get_num()))
                       .set("product_den", Nat(product.get_den())));
        }
    });

    out.pairwise_coprimality =
        detail::scan_check(checks::pairwise_coprimality, n, opts, [&](std::size_t i, CheckReport& r) {
            const std::size_t m = i + 1;
            if (!b.is_integral(m)) {
                r.skip("non-integral b term", n - m);
                return;
            }
            const Nat bm = b.integer(m);
            for (std::size_t k = m + 1; k <= n; ++k) {
                if (k % m == 0) {
                    continue;
                }
                if (!b.is_integral(k)) {
                    r.skip("non-integral b term");
                    continue;
                }
                ++r.tested_count;
                const Nat bk = b.integer(k);
                if (const Nat g = gcd(bm, bk); g != 1) {
                    r.fail(Witness(checks::pairwise_coprimality)
                               .set("m", m)
                               .set("n", k)
                               .set("b_m", bm)
                               .set("b_n", bk)
                               .set("gcd", g));
                }
            }
        });

    out.b_divides_a = detail::scan_check(checks::b_divides_a, n, opts, [&](std::size_t i, CheckReport& r) {
        const std::size_t idx = i + 1;
        if (!b.is_integral(idx)) {
            r.skip("non-integral b term");
            return;
        }
        ++r.tested_count;
        const Nat bn = b.integer(idx);
        if (mpz_divisible_p(cache[idx].get_mpz_t(), bn.get_mpz_t()) == 0) {
            r.fail(Witness(checks::b_divides_a).set("n", idx).set("b_n", bn).set("a_n", cache[idx]));
        }
    });
    return out;
}

CheckReport recursion_identities(const SequenceCache& cache, const BSequence& b, std::size_t p, std::size_t q,
                                 std::size_t k)
{
    if (p == q || k == 0 || !is_prime(Nat(static_cast<unsigned long>(p))) ||
        !is_prime(Nat(static_cast<unsigned long>(q)))) {
        throw DomainError("recursion_identities needs distinct primes p, q and k >= 1");
    }
    std::size_t pk = 1;
    for (std::size_t i = 0; i < k; ++i) {
        pk *= p;
    }
    require_range(b, cache, std::max(pk * p, p * q));

    CheckReport r(checks::recursion);
    check_identity(r, b, 1, p, 0, 0, p, cache[p], cache[1]);
    check_identity(r, b, 2, p, 0, k, pk * p, cache[pk * p], cache[pk]);
    check_identity(r, b, 3, std::min(p, q), std::max(p, q), 0, p * q, cache[p * q], lcm(cache[p], cache[q]));
    r.finalize();
    return r;
}

CheckReport check_recursion_identities(const SequenceCache& cache, const BSequence& b, std::size_t n,
                                       const ScanOptions& opts)
{
    require_range(b, cache, n);
    const auto primes = small_primes_through(n);
    return detail::scan_check(checks::recursion, primes.size(), opts, [&](std::size_t i, CheckReport& r) {
        const std::size_t p = primes[i];
        check_identity(r, b, 1, p, 0, 0, p, cache[p], cache[1]);
        std::size_t pk = p;
        for (std::size_t k = 1; pk <= n / p; ++k, pk *= p) {
            check_identity(r, b, 2, p, 0, k, pk * p, cache[pk * p], cache[pk]);
        }
        for (std::size_t j = i + 1; j < primes.size() && p * primes[j] <= n; ++j) {
            const std::size_t q = primes[j];
            check_identity(r, b, 3, p, q, 0, p * q, cache[p * q], lcm(cache[p], cache[q]));
        }
    });
}

}  // namespace lteseq
