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

#include "lteseq/witness.hpp"

#include "lteseq/analysis.hpp"
#include "lteseq/bsequence.hpp"
#include "lteseq/conjectures.hpp"

#include <functional>
#include <initializer_list>
#include <map>
#include <numeric>
#include <optional>
#include <set>

namespace lteseq {

namespace {

// Witness indices beyond this are refused rather than generated.
constexpr std::size_t kMaxWitnessIndex = 20000;

struct Mismatch {
    std::string what;
};

[[noreturn]] void mismatch(std::string what) { throw Mismatch{std::move(what)}; }

void expect(bool ok, const std::string& what)
{
    if (!ok) {
        mismatch(what);
    }
}

class Context {
public:
    Context(const SequenceSpec& spec, const Witness& w, const TermLimits& limits)
        : spec_(spec), w_(w), limits_(limits) {}

    std::size_t idx(const std::string& key) const
    {
        const std::size_t v = w_.index(key);
        expect(v >= 1 && v <= kMaxWitnessIndex, "field '" + key + "' is not a usable index");
        return v;
    }
    std::size_t small(const std::string& key) const { return w_.index(key); }
    const Nat& field(const std::string& key) const { return w_.get(key); }

    unsigned long prime(const std::string& key) const
    {
        const Nat& v = w_.get(key);
        expect(v >= 2 && v.fits_ulong_p() && is_prime(v), "field '" + key + "' is not a prime");
        return v.get_ui();
    }

    Nat a(std::size_t n)
    {
        ensure(n);
        return (*cache_)[n];
    }

    const BSequence& b(std::size_t n)
    {
        ensure(n);
        if (!b_ || b_->size() < n) {
            b_ = build_bsequence(*cache_, cache_->size());
        }
        return *b_;
    }

    std::size_t rank_of(unsigned long p, std::size_t bound)
    {
        ensure(bound);
        const RankEntry e = rank(*cache_, Nat(p), bound);
        return e.rho.value_or(0);
    }

    void match(const std::string& key, const Nat& recomputed) const
    {
        expect(field(key) == recomputed,
               "field '" + key + "' = " + field(key).get_str() + " but recomputes to " + recomputed.get_str());
    }
    void match(const std::string& key, std::size_t recomputed) const
    {
        match(key, Nat(static_cast<unsigned long>(recomputed)));
    }

    void keys(std::initializer_list<const char*> expected) const
    {
        std::set<std::string> want(expected.begin(), expected.end());
        std::set<std::string> have;
        for (const auto& [k, v] : w_.fields) {
            have.insert(k);
        }
        expect(want == have, "field set does not match check '" + w_.check + "'");
    }

private:
    void ensure(std::size_t n)
    {
        expect(n >= 1 && n <= kMaxWitnessIndex, "index out of verifiable range");
        if (!cache_ || cache_->size() < n) {
            cache_ = terms_up_to(spec_, n, limits_);
            b_.reset();
        }
    }

    const SequenceSpec& spec_;
    const Witness& w_;
    TermLimits limits_;
    std::optional<SequenceCache> cache_;
    std::optional<BSequence> b_;
};

unsigned long nu(const Nat& v, unsigned long p) { return valuation_of(v, p); }

Nat as_nat(const mpz_class& v) { return Nat(v); }

void verify_l_property(Context& c)
{
    c.keys({"p", "k", "n", "a_k", "a_kn", "nu_a_k", "nu_n", "nu_a_kn"});
    const unsigned long p = c.prime("p");
    const std::size_t k = c.idx("k");
    const std::size_t n = c.idx("n");
    expect(n >= 2, "n must be >= 2");
    c.match("a_k", c.a(k));
    c.match("a_kn", c.a(k * n));
    const unsigned long vk = nu(c.a(k), p);
    const unsigned long vn = valuation_of(n, p);
    const unsigned long vkn = nu(c.a(k * n), p);
    c.match("nu_a_k", vk);
    c.match("nu_n", vn);
    c.match("nu_a_kn", vkn);
    expect(vk >= 1, "p does not divide a_k");
    expect(vkn != vk + vn, "valuation law holds");
}

void verify_divisibility(Context& c)
{
    c.keys({"k", "n", "a_k", "a_kn", "remainder"});
    const std::size_t k = c.idx("k");
    const std::size_t n = c.idx("n");
    expect(n >= 2, "n must be >= 2");
    c.match("a_k", c.a(k));
    c.match("a_kn", c.a(k * n));
    const Nat rem = c.a(k * n) % c.a(k);
    c.match("remainder", rem);
    expect(rem != 0, "a_k divides a_kn");
}

void verify_gcd_identity(Context& c)
{
    c.keys({"m", "n", "a_m", "a_n", "g", "gcd_value", "a_g"});
    const std::size_t m = c.idx("m");
    const std::size_t n = c.idx("n");
    const std::size_t g = std::gcd(m, n);
    c.match("g", g);
    c.match("a_m", c.a(m));
    c.match("a_n", c.a(n));
    const Nat value = gcd(c.a(m), c.a(n));
    c.match("gcd_value", value);
    c.match("a_g", c.a(g));
    expect(value != c.a(g), "gcd identity holds");
}

void verify_product_formula(Context& c)
{
    c.keys({"n", "a_n", "product_num", "product_den"});
    const std::size_t n = c.idx("n");
    const BSequence& b = c.b(n);
    mpq_class product = 1;
    for (std::size_t d : index_divisors(n)) {
        product *= b.at(d);
    }
    c.match("a_n", c.a(n));
    c.match("product_num", as_nat(product.get_num()));
    c.match("product_den", as_nat(product.get_den()));
    expect(product != mpq_class(c.a(n)), "product formula holds");
}

void verify_pairwise_coprimality(Context& c)
{
    c.keys({"m", "n", "b_m", "b_n", "gcd"});
    const std::size_t m = c.idx("m");
    const std::size_t n = c.idx("n");
    expect(m < n && n % m != 0, "indices are comparable under divisibility");
    const BSequence& b = c.b(n);
    const Nat bm = b.integer(m);
    const Nat bn = b.integer(n);
    c.match("b_m", bm);
    c.match("b_n", bn);
    const Nat g = gcd(bm, bn);
    c.match("gcd", g);
    expect(g != 1, "terms are coprime");
}

void verify_b_divides_a(Context& c)
{
    c.keys({"n", "b_n", "a_n"});
    const std::size_t n = c.idx("n");
    const Nat bn = c.b(n).integer(n);
    c.match("b_n", bn);
    c.match("a_n", c.a(n));
    expect(mpz_divisible_p(c.a(n).get_mpz_t(), bn.get_mpz_t()) == 0, "b_n divides a_n");
}

void verify_recursion(Context& c)
{
    c.keys({"form", "p", "q", "k", "index", "b_num", "b_den", "quotient_num", "quotient_den"});
    const std::size_t form = c.small("form");
    const unsigned long p = c.prime("p");
    const std::size_t q = c.small("q");
    const std::size_t k = c.small("k");
    const std::size_t index = c.idx("index");
    mpq_class quotient;
    switch (form) {
    case 1:
        expect(q == 0 && k == 0 && index == p, "malformed prime-index identity");
        quotient = mpq_class(c.a(p), c.a(1));
        break;
    case 2: {
        expect(q == 0 && k >= 1, "malformed prime-power identity");
        std::size_t pk = 1;
        for (std::size_t i = 0; i < k; ++i) {
            pk *= p;
            expect(pk <= kMaxWitnessIndex, "index out of verifiable range");
        }
        expect(index == pk * p, "index is not p^(k+1)");
        quotient = mpq_class(c.a(index), c.a(pk));
        break;
    }
    case 3: {
        expect(k == 0 && q > p && is_prime(Nat(static_cast<unsigned long>(q))) && index == p * q,
               "malformed pq identity");
        quotient = mpq_class(c.a(index), lcm(c.a(p), c.a(q)));
        break;
    }
    default: mismatch("unknown identity form");
    }
    quotient.canonicalize();
    const mpq_class& bv = c.b(index).at(index);
    c.match("b_num", as_nat(bv.get_num()));
    c.match("b_den", as_nat(bv.get_den()));
    c.match("quotient_num", as_nat(quotient.get_num()));
    c.match("quotient_den", as_nat(quotient.get_den()));
    expect(bv != quotient || quotient.get_den() != 1, "identity holds");
}

void verify_rank_divisibility(Context& c)
{
    c.keys({"p", "rho", "k", "a_k", "p_divides_a_k", "rho_divides_k"});
    const unsigned long p = c.prime("p");
    const std::size_t rho = c.idx("rho");
    const std::size_t k = c.idx("k");
    c.match("rho", c.rank_of(p, rho));
    c.match("a_k", c.a(k));
    const bool pd = mpz_divisible_ui_p(c.a(k).get_mpz_t(), p) != 0;
    const bool rd = k % rho == 0;
    c.match("p_divides_a_k", std::size_t{pd});
    c.match("rho_divides_k", std::size_t{rd});
    expect(pd != rd, "rank divisibility holds");
}

void verify_valuation_structure(Context& c)
{
    c.keys({"p", "rho", "k", "a_k", "r", "s", "rho_divides_k", "nu_t"});
    const unsigned long p = c.prime("p");
    const std::size_t rho = c.idx("rho");
    const std::size_t k = c.idx("k");
    c.match("rho", c.rank_of(p, rho));
    c.match("a_k", c.a(k));
    const unsigned long r = nu(c.a(rho), p);
    const unsigned long s = nu(c.a(k), p);
    c.match("r", r);
    c.match("s", s);
    expect(s >= 1, "p does not divide a_k");
    const bool rd = k % rho == 0;
    const long nu_t = rd ? static_cast<long>(valuation_of(k / rho, p)) : -1;
    c.match("rho_divides_k", std::size_t{rd});
    c.match("nu_t", Nat(nu_t));
    expect(!(rd && s >= r && nu_t == static_cast<long>(s - r)), "valuation structure holds");
}

void verify_rank_lte(Context& c)
{
    c.keys({"p", "rho", "s", "a_rho", "a_rho_s", "nu_a_rho", "nu_s", "nu_a_rho_s"});
    const unsigned long p = c.prime("p");
    const std::size_t rho = c.idx("rho");
    const std::size_t s = c.idx("s");
    expect(s >= 2, "s must be >= 2");
    c.match("rho", c.rank_of(p, rho));
    c.match("a_rho", c.a(rho));
    c.match("a_rho_s", c.a(rho * s));
    const unsigned long base = nu(c.a(rho), p);
    const unsigned long vs = valuation_of(s, p);
    const unsigned long actual = nu(c.a(rho * s), p);
    c.match("nu_a_rho", base);
    c.match("nu_s", vs);
    c.match("nu_a_rho_s", actual);
    expect(actual != base + vs, "rank-anchored valuation law holds");
}

void verify_delta(Context& c, const Witness& w)
{
    const unsigned long p = c.prime("p");
    const std::size_t rho = c.idx("rho");
    c.match("rho", c.rank_of(p, rho));
    expect(rho % p != 0, "p divides its rank");
    const auto divs = index_divisors(rho);
    expect(w.fields.size() == divs.size() + 3, "field set does not match check 'delta'");
    const BSequence& b = c.b(p * rho);
    std::size_t positive = 0;
    bool exact = true;
    for (std::size_t d : divs) {
        const unsigned long v = nu(as_nat(b.at(p * d).get_num()), p);
        c.match("nu_b_" + std::to_string(p * d), v);
        if (v > 0) {
            ++positive;
            exact = exact && v == 1;
        }
    }
    c.match("positive_count", positive);
    expect(positive != 1 || !exact, "delta divisor is unique with exact valuation 1");
}

void verify_coprime_block(Context& c)
{
    c.keys({"p", "rho", "k", "d", "e", "b_de", "nu"});
    const unsigned long p = c.prime("p");
    const std::size_t rho = c.idx("rho");
    const std::size_t k = c.idx("k");
    const std::size_t d = c.idx("d");
    const std::size_t e = c.idx("e");
    c.match("rho", c.rank_of(p, rho));
    expect(k >= 2 && std::gcd(static_cast<std::size_t>(p) * rho, k) == 1, "gcd(p rho, k) != 1");
    expect(rho % d == 0 && k % e == 0 && e > 1, "d, e are not admissible divisors");
    const Nat bde = as_nat(c.b(d * e).at(d * e).get_num());
    c.match("b_de", bde);
    const unsigned long v = nu(bde, p);
    c.match("nu", v);
    expect(v >= 1, "p does not divide b_de");
}

std::size_t first_b_index(Context& c, unsigned long p, std::size_t n_max)
{
    const BSequence& b = c.b(n_max);
    for (std::size_t k = 1; k <= n_max; ++k) {
        if (mpz_divisible_ui_p(b.at(k).get_num_mpz_t(), p) != 0) {
            return k;
        }
    }
    return 0;
}

void verify_rank_agreement(Context& c)
{
    c.keys({"p", "rank_a", "rank_b"});
    const unsigned long p = c.prime("p");
    const std::size_t rank_a = c.idx("rank_a");
    c.match("rank_a", c.rank_of(p, rank_a));
    const std::size_t rank_b = c.small("rank_b");
    // rank_b == 0 means no b-term up to rank_a is divisible by p.
    const std::size_t bound = std::max(rank_a, rank_b);
    expect(bound <= kMaxWitnessIndex, "index out of verifiable range");
    const std::size_t first = first_b_index(c, p, bound);
    c.match("rank_b", first);
    expect(first != rank_a, "ranks agree");
}

void verify_prime_set(Context& c)
{
    c.keys({"p", "n_max", "in_a", "in_b"});
    const unsigned long p = c.prime("p");
    const std::size_t n_max = c.idx("n_max");
    const bool in_a = c.rank_of(p, n_max) != 0;
    const bool in_b = first_b_index(c, p, n_max) != 0;
    c.match("in_a", std::size_t{in_a});
    c.match("in_b", std::size_t{in_b});
    expect(in_a != in_b, "prime sets agree");
}

void verify_conj1(Context& c)
{
    c.keys({"p", "rho"});
    const unsigned long p = c.prime("p");
    const std::size_t rho = c.idx("rho");
    c.match("rho", c.rank_of(p, rho));
    expect(rho % p == 0 && rho != p, "not a counterexample");
}

void verify_conj2(Context& c, bool strong)
{
    c.keys({"m", "n", "b_m", "b_n", "gcd"});
    const std::size_t m = c.idx("m");
    const std::size_t n = c.idx("n");
    expect(n < m, "requires n < m");
    const BSequence& b = c.b(m);
    const Nat bm = b.integer(m);
    const Nat bn = b.integer(n);
    c.match("b_m", bm);
    c.match("b_n", bn);
    const Nat g = gcd(bm, bn);
    c.match("gcd", g);
    expect(g > 1, "gcd is 1");
    const unsigned long q = m % n == 0 ? prime_power_base(m / n) : 0;
    const bool weak_ok = q != 0;
    const bool strong_ok = weak_ok && mpz_divisible_ui_p(g.get_mpz_t(), q) != 0;
    expect(strong ? !strong_ok : !weak_ok, "not a counterexample");
}

void verify_conj3(Context& c, bool odd_only)
{
    c.keys({"n", "b_n", "p"});
    const std::size_t n = c.idx("n");
    expect(is_squarefree_index(n), "n is not squarefree");
    const unsigned long p = c.prime("p");
    expect(!odd_only || p != 2, "odd-primes reading ignores 2");
    const Nat bn = c.b(n).integer(n);
    c.match("b_n", bn);
    expect(nu(bn, p) >= 2, "p^2 does not divide b_n");
}

}  // namespace

WitnessVerdict verify_witness(const SequenceSpec& spec, const Witness& w, const TermLimits& limits)
{
    Context c(spec, w, limits);
    const std::map<std::string, std::function<void(Context&)>> dispatch = {
        {checks::l_property, verify_l_property},
        {checks::divisibility, verify_divisibility},
        {checks::gcd_identity, verify_gcd_identity},
        {checks::product_formula, verify_product_formula},
        {checks::pairwise_coprimality, verify_pairwise_coprimality},
        {checks::b_divides_a, verify_b_divides_a},
        {checks::recursion, verify_recursion},
        {checks::rank_divisibility, verify_rank_divisibility},
        {checks::valuation_structure, verify_valuation_structure},
        {checks::rank_lte, verify_rank_lte},
        {checks::delta, [&w](Context& ctx) { verify_delta(ctx, w); }},
        {checks::coprime_block, verify_coprime_block},
        {checks::rank_agreement, verify_rank_agreement},
        {checks::prime_set_agreement, verify_prime_set},
        {checks::conj1, verify_conj1},
        {checks::conj2_weak, [](Context& ctx) { verify_conj2(ctx, false); }},
        {checks::conj2_strong, [](Context& ctx) { verify_conj2(ctx, true); }},
        {checks::conj3_all_primes, [](Context& ctx) { verify_conj3(ctx, false); }},
        {checks::conj3_odd_primes, [](Context& ctx) { verify_conj3(ctx, true); }},
    };
    const auto it = dispatch.find(w.check);
    if (it == dispatch.end()) {
        return {false, "unknown check '" + w.check + "'"};
    }
    try {
        it->second(c);
    } catch (const Mismatch& m) {
        return {false, m.what};
    } catch (const std::exception& e) {
        return {false, e.what()};
    }
    return {true, "reproduced"};
}

}  // namespace lteseq
