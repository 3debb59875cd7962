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

#include "lteseq/arith.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <utility>

namespace lteseq {

namespace {

constexpr std::array<unsigned long, 13> kFixedBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

// One strong-probable-prime round: n - 1 = d * 2^s with d odd.
bool strong_probable_prime(const Nat& n, const Nat& n_minus_1, const Nat& d, unsigned long s, const Nat& base)
{
    Nat x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) {
        return true;
    }
    for (unsigned long r = 1; r < s; ++r) {
        x = (x * x) % n;
        if (x == n_minus_1) {
            return true;
        }
        if (x == 1) {
            return false;
        }
    }
    return false;
}

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 gcd_u64(u64 a, u64 b)
{
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

// Pollard-Brent on a machine word. Returns a nontrivial factor or 0.
u64 brent_rho_u64(u64 n, u64& budget, std::mt19937_64& rng)
{
    constexpr u64 kBatch = 128;
    while (budget > 0) {
        const u64 c = rng() % (n - 1) + 1;
        u64 y = rng() % n;
        u64 x = y;
        u64 ys = y;
        u64 q = 1;
        u64 g = 1;
        u64 r = 1;
        auto step = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) {
                y = step(y);
            }
            u64 k = 0;
            do {
                ys = y;
                const u64 lim = std::min(kBatch, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = step(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = gcd_u64(q, n);
                k += lim;
                budget = budget > lim ? budget - lim : 0;
            } while (k < r && g == 1 && budget > 0);
            r *= 2;
        } while (g == 1 && budget > 0);
        if (g == n) {
            do {
                ys = step(ys);
                g = gcd_u64(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != 1 && g != n) {
            return g;
        }
    }
    return 0;
}

// Pollard-Brent on a multiprecision value. Returns a nontrivial factor or 0.
Nat brent_rho(const Nat& n, std::uint64_t& budget, std::mt19937_64& rng)
{
    constexpr std::uint64_t kBatch = 128;
    auto random_below = [&](const Nat& bound) {
        Nat v = 0;
        for (int i = 0; i < 4; ++i) {
            v <<= 64;
            v += Nat(static_cast<unsigned long>(rng()));
        }
        return Nat(v % bound);
    };
    while (budget > 0) {
        const Nat c = random_below(n - 1) + 1;
        Nat y = random_below(n);
        Nat x = y;
        Nat ys = y;
        Nat q = 1;
        Nat g = 1;
        std::uint64_t r = 1;
        auto step = [&](Nat& v) {
            v = v * v + c;
            v %= n;
        };
        Nat diff;
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) {
                step(y);
            }
            std::uint64_t k = 0;
            do {
                ys = y;
                const std::uint64_t lim = std::min(kBatch, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    step(y);
                    diff = x - y;
                    mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
                    q = q * diff % n;
                }
                g = gcd(q, n);
                k += lim;
                budget = budget > lim ? budget - lim : 0;
            } while (k < r && g == 1 && budget > 0);
            r *= 2;
        } while (g == 1 && budget > 0);
        if (g == n) {
            do {
                step(ys);
                diff = x - ys;
                mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
                g = gcd(diff, n);
            } while (g == 1);
        }
        if (g != 1 && g != n) {
            return g;
        }
    }
    return 0;
}

// Splits a composite with the remaining budget; 0 if it could not.
Nat split_composite(const Nat& n, std::uint64_t& budget, std::mt19937_64& rng)
{
    if (n.fits_ulong_p() && mpz_sizeinbase(n.get_mpz_t(), 2) <= 63) {
        const u64 f = brent_rho_u64(n.get_ui(), budget, rng);
        return Nat(static_cast<unsigned long>(f));
    }
    return brent_rho(n, budget, rng);
}

// If n is a perfect power m^k with k >= 2 maximal, returns (m, k); else (n, 1).
std::pair<Nat, unsigned long> perfect_power_root(const Nat& n)
{
    if (n < 4 || mpz_perfect_power_p(n.get_mpz_t()) == 0) {
        return {n, 1};
    }
    const unsigned long bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (unsigned long k = bits; k >= 2; --k) {
        Nat root;
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0 && root > 1) {
            return {root, k};
        }
    }
    return {n, 1};
}

}  // namespace

Nat parse_nat(std::string_view text)
{
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw DomainError("not a nonnegative decimal integer: '" + std::string(text) + "'");
    }
    return Nat(std::string(text));
}

const Nat& deterministic_primality_bound()
{
    static const Nat bound("3317044064679887385961981");
    return bound;
}

Primality primality(const Nat& n, unsigned extra_rounds, std::uint64_t seed)
{
    if (n < 2) {
        return Primality::composite;
    }
    for (unsigned long b : kFixedBases) {
        if (n == b) {
            return Primality::prime;
        }
        if (mpz_divisible_ui_p(n.get_mpz_t(), b) != 0) {
            return Primality::composite;
        }
    }
    const Nat n_minus_1 = n - 1;
    Nat d = n_minus_1;
    const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;
    for (unsigned long b : kFixedBases) {
        if (!strong_probable_prime(n, n_minus_1, d, s, Nat(b))) {
            return Primality::composite;
        }
    }
    if (n < deterministic_primality_bound()) {
        return Primality::prime;
    }
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(static_cast<unsigned long>(seed));
    const Nat span = n - 3;
    for (unsigned i = 0; i < extra_rounds; ++i) {
        const Nat base = rng.get_z_range(span) + 2;
        if (!strong_probable_prime(n, n_minus_1, d, s, base)) {
            return Primality::composite;
        }
    }
    return Primality::probable_prime;
}

const std::vector<unsigned long>& primes_up_to(unsigned long bound)
{
    static std::mutex mutex;
    static std::map<unsigned long, std::unique_ptr<std::vector<unsigned long>>> memo;
    std::lock_guard lock(mutex);
    auto& slot = memo[bound];
    if (!slot) {
        std::vector<bool> composite(bound + 1, false);
        auto primes = std::make_unique<std::vector<unsigned long>>();
        for (unsigned long i = 2; i <= bound; ++i) {
            if (composite[i]) {
                continue;
            }
            primes->push_back(i);
            for (unsigned long j = i * i; j <= bound; j += i) {
                composite[j] = true;
            }
        }
        slot = std::move(primes);
    }
    return *slot;
}

Valuation padic_valuation(const Nat& a, const Nat& p)
{
    if (a <= 0) {
        throw DomainError("p-adic valuation of " + a.get_str() + " is undefined");
    }
    if (!is_prime(p)) {
        throw DomainError("valuation base " + p.get_str() + " is not prime");
    }
    return {p, valuation_of(a, p)};
}

unsigned long valuation_of(const Nat& a, const Nat& p)
{
    Nat rest;
    return mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
}

unsigned long valuation_of(const Nat& a, unsigned long p)
{
    if (mpz_divisible_ui_p(a.get_mpz_t(), p) == 0) {
        return 0;
    }
    return valuation_of(a, Nat(p));
}

unsigned long valuation_of(std::size_t n, unsigned long p)
{
    unsigned long e = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

Nat gcd(const Nat& a, const Nat& b)
{
    Nat g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Nat lcm(const Nat& a, const Nat& b)
{
    if (a == 0 || b == 0) {
        throw DomainError("lcm with a zero argument");
    }
    Nat l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

std::vector<std::size_t> index_divisors(std::size_t n)
{
    std::vector<std::size_t> small;
    std::vector<std::size_t> large;
    for (std::size_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) {
                large.push_back(n / d);
            }
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

unsigned long prime_power_base(std::size_t n)
{
    if (n < 2) {
        return 0;
    }
    std::size_t q = 2;
    while (q * q <= n && n % q != 0) {
        ++q;
    }
    if (n % q != 0) {
        q = n;
    }
    while (n % q == 0) {
        n /= q;
    }
    return n == 1 ? static_cast<unsigned long>(q) : 0;
}

bool is_squarefree_index(std::size_t n)
{
    for (std::size_t q = 2; q * q <= n; ++q) {
        if (n % (q * q) == 0) {
            return false;
        }
    }
    return true;
}

std::string EffortBudget::fingerprint() const
{
    return "trial=" + std::to_string(trial_bound) + ",rho=" + std::to_string(rho_iterations) +
           ",rounds=" + std::to_string(primality_rounds) + ",seed=" + std::to_string(seed);
}

EffortBudget EffortBudget::quick() { return {10000, 100000, 8, 1}; }
EffortBudget EffortBudget::standard() { return {}; }
EffortBudget EffortBudget::thorough() { return {1000000, 100000000, 16, 1}; }

std::string_view to_string(ResidualStatus s)
{
    switch (s) {
    case ResidualStatus::unit: return "unit";
    case ResidualStatus::prime: return "prime";
    case ResidualStatus::composite_unfactored: return "composite_unfactored";
    case ResidualStatus::probable_prime: return "probable_prime";
    }
    return "unit";
}

ResidualStatus parse_residual_status(std::string_view text)
{
    if (text == "unit") return ResidualStatus::unit;
    if (text == "prime") return ResidualStatus::prime;
    if (text == "composite_unfactored") return ResidualStatus::composite_unfactored;
    if (text == "probable_prime") return ResidualStatus::probable_prime;
    throw DomainError("unknown residual status '" + std::string(text) + "'");
}

bool Factorization::probabilistic() const
{
    return residual_status == ResidualStatus::probable_prime ||
           std::any_of(factors.begin(), factors.end(), [](const PrimePower& f) { return !f.certified(); });
}

Nat Factorization::value() const
{
    Nat v = residual;
    for (const auto& f : factors) {
        Nat pw;
        mpz_pow_ui(pw.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
        v *= pw;
    }
    return v;
}

bool is_consistent(const Factorization& f, const Nat& value)
{
    if (f.residual < 1 || (f.residual == 1) != (f.residual_status == ResidualStatus::unit)) {
        return false;
    }
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        const auto& pp = f.factors[i];
        if (pp.exponent == 0 || !is_prime(pp.prime)) {
            return false;
        }
        if (i > 0 && !(f.factors[i - 1].prime < pp.prime)) {
            return false;
        }
    }
    switch (f.residual_status) {
    case ResidualStatus::unit: break;
    case ResidualStatus::prime:
        if (primality(f.residual) != Primality::prime) return false;
        break;
    case ResidualStatus::probable_prime:
        if (primality(f.residual) == Primality::composite) return false;
        break;
    case ResidualStatus::composite_unfactored:
        if (primality(f.residual) != Primality::composite) return false;
        break;
    }
    return f.value() == value;
}

Factorization factorize(const Nat& n, const EffortBudget& effort)
{
    if (n < 1) {
        throw DomainError("factorize requires n >= 1");
    }
    std::map<Nat, unsigned long> found;
    Nat m = n;
    bool cofactor_is_prime = false;
    for (unsigned long p : primes_up_to(effort.trial_bound)) {
        if (m == 1) {
            break;
        }
        if (Nat(p) * p > m) {
            cofactor_is_prime = true;
            break;
        }
        if (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
            const Nat prime(p);
            found[prime] += mpz_remove(m.get_mpz_t(), m.get_mpz_t(), prime.get_mpz_t());
        }
    }

    if (m > 1 && !cofactor_is_prime && m < Nat(effort.trial_bound) * effort.trial_bound) {
        cofactor_is_prime = true;
    }
    std::vector<std::pair<Nat, unsigned long>> stuck;
    if (m > 1 && cofactor_is_prime) {
        found[m] += 1;
    } else if (m > 1) {
        std::mt19937_64 rng(effort.seed);
        std::vector<std::pair<Nat, unsigned long>> pending{{m, 1}};
        while (!pending.empty()) {
            auto [c, mult] = std::move(pending.back());
            pending.pop_back();
            if (c == 1) {
                continue;
            }
            if (auto [root, k] = perfect_power_root(c); k > 1) {
                pending.emplace_back(root, mult * k);
                continue;
            }
            if (primality(c, effort.primality_rounds, effort.seed) != Primality::composite) {
                found[c] += mult;
                continue;
            }
            std::uint64_t budget = effort.rho_iterations;
            const Nat d = split_composite(c, budget, rng);
            if (d == 0) {
                stuck.emplace_back(c, mult);
                continue;
            }
            pending.emplace_back(d, mult);
            pending.emplace_back(Nat(c / d), mult);
        }
    }

    // Strip known primes out of unsplit composites; anything reduced to a
    // prime joins the factor list.
    Nat residual = 1;
    for (auto& [c, mult] : stuck) {
        for (auto& [p, e] : found) {
            if (mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t()) != 0) {
                e += mult * mpz_remove(c.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
            }
        }
        if (c == 1) {
            continue;
        }
        if (primality(c, effort.primality_rounds, effort.seed) != Primality::composite) {
            found[c] += mult;
            continue;
        }
        Nat pw;
        mpz_pow_ui(pw.get_mpz_t(), c.get_mpz_t(), mult);
        residual *= pw;
    }

    Factorization f;
    for (auto& [p, e] : found) {
        f.factors.push_back({p, e});
    }
    f.residual = residual;
    f.residual_status = residual == 1 ? ResidualStatus::unit : ResidualStatus::composite_unfactored;
    return f;
}

std::vector<Nat> divisors(const Factorization& f)
{
    if (!f.complete()) {
        throw EffortExceeded("divisors: factorization incomplete (residual " + f.residual.get_str() + ")");
    }
    std::vector<Nat> out{1};
    for (const auto& [p, e] : f.factors) {
        const std::size_t base = out.size();
        Nat pw = 1;
        for (unsigned long i = 1; i <= e; ++i) {
            pw *= p;
            for (std::size_t j = 0; j < base; ++j) {
                out.push_back(out[j] * pw);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Nat> divisors(const Nat& n, const EffortBudget& effort)
{
    return divisors(factorize(n, effort));
}

SquarefreeVerdict squarefree_verdict(const Factorization& f)
{
    using Kind = SquarefreeVerdict::Kind;
    for (const auto& pp : f.factors) {
        if (pp.exponent >= 2) {
            return {Kind::not_squarefree, pp.prime, {}};
        }
    }
    if (f.residual > 1) {
        for (const auto& pp : f.factors) {
            if (mpz_divisible_p(f.residual.get_mpz_t(), pp.prime.get_mpz_t()) != 0) {
                return {Kind::not_squarefree, pp.prime, {}};
            }
        }
        if (auto [root, k] = perfect_power_root(f.residual); k > 1 && is_prime(root)) {
            return {Kind::not_squarefree, root, {}};
        }
    }
    switch (f.residual_status) {
    case ResidualStatus::unit:
    case ResidualStatus::prime:
        return {Kind::squarefree, 0, {}};
    case ResidualStatus::probable_prime:
        return {Kind::inconclusive, 0, "residual " + f.residual.get_str() + " is only a probable prime"};
    case ResidualStatus::composite_unfactored:
        break;
    }
    return {Kind::inconclusive, 0, "residual " + f.residual.get_str() + " not factored"};
}

}  // namespace lteseq
