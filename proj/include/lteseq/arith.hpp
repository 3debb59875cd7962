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

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lteseq {

/// Arbitrary-precision integer. Sequence values, indices promoted to big
/// values and primes all live here; nonnegativity is enforced at the API
/// boundary.
using Nat = mpz_class;

class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an operation needs a complete factorization and the effort
/// budget ran out before one was found.
class EffortExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Nat parse_nat(std::string_view text);
inline std::string to_string(const Nat& n) { return n.get_str(); }

// ---------------------------------------------------------------------------
// Primality

enum class Primality { composite, prime, probable_prime };

/// Values below this bound are decided exactly by Miller-Rabin with the first
/// thirteen prime bases (2..41).
const Nat& deterministic_primality_bound();

/// Miller-Rabin with the fixed bases 2..41, followed by `extra_rounds`
/// pseudo-random bases (seeded by `seed`) when the value is above
/// deterministic_primality_bound().
Primality primality(const Nat& n, unsigned extra_rounds = 8, std::uint64_t seed = 1);
inline bool is_prime(const Nat& n) { return primality(n) != Primality::composite; }

/// Primes p <= bound in ascending order. Results are memoized per bound.
const std::vector<unsigned long>& primes_up_to(unsigned long bound);

// ---------------------------------------------------------------------------
// Valuations, gcd, lcm

struct Valuation {
    Nat prime;
    unsigned long exponent = 0;

    friend bool operator==(const Valuation&, const Valuation&) = default;
};

/// nu_p(a). Throws DomainError when a == 0 or p is not prime.
Valuation padic_valuation(const Nat& a, const Nat& p);

/// nu_p(a) without argument validation. Requires a >= 1 and p >= 2.
unsigned long valuation_of(const Nat& a, const Nat& p);
unsigned long valuation_of(const Nat& a, unsigned long p);

/// nu_p(n) for a machine-sized index.
unsigned long valuation_of(std::size_t n, unsigned long p);

Nat gcd(const Nat& a, const Nat& b);
/// Throws DomainError when either argument is zero.
Nat lcm(const Nat& a, const Nat& b);

/// Divisors of a machine-sized index, ascending.
std::vector<std::size_t> index_divisors(std::size_t n);

/// If n = q^e for a single prime q with e >= 1, returns q; otherwise 0.
unsigned long prime_power_base(std::size_t n);

bool is_squarefree_index(std::size_t n);

// ---------------------------------------------------------------------------
// Factorization

struct EffortBudget {
    unsigned long trial_bound = 100000;
    std::uint64_t rho_iterations = 10000000;
    unsigned primality_rounds = 8;
    std::uint64_t seed = 1;

    /// Stable text form, used to key cached factorizations.
    std::string fingerprint() const;

    static EffortBudget quick();
    static EffortBudget standard();
    static EffortBudget thorough();

    friend bool operator==(const EffortBudget&, const EffortBudget&) = default;
};

enum class ResidualStatus { unit, prime, composite_unfactored, probable_prime };

std::string_view to_string(ResidualStatus s);
ResidualStatus parse_residual_status(std::string_view text);

struct PrimePower {
    Nat prime;
    unsigned long exponent = 1;

    /// False when primality rests on probabilistic rounds only.
    bool certified() const { return prime < deterministic_primality_bound(); }

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    std::vector<PrimePower> factors;  // strictly ascending by prime
    Nat residual = 1;
    ResidualStatus residual_status = ResidualStatus::unit;

    bool complete() const { return residual_status == ResidualStatus::unit; }
    /// True when any listed prime or the residual is only a probable prime.
    bool probabilistic() const;
    /// Product of all prime powers times the residual.
    Nat value() const;

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Checks every Factorization invariant against `value`. Used to vet
/// untrusted records (the on-disk cache).
bool is_consistent(const Factorization& f, const Nat& value);

/// Trial division, perfect-power detection and Pollard-Brent rho under the
/// given budget. Never guesses: whatever cannot be split is returned as a
/// composite_unfactored residual. Deterministic for a fixed budget.
Factorization factorize(const Nat& n, const EffortBudget& effort = {});

/// All divisors of n, ascending. Throws EffortExceeded when n cannot be fully
/// factored within `effort`.
std::vector<Nat> divisors(const Nat& n, const EffortBudget& effort = {});
std::vector<Nat> divisors(const Factorization& f);

struct SquarefreeVerdict {
    enum class Kind { squarefree, not_squarefree, inconclusive };

    Kind kind = Kind::inconclusive;
    Nat witness;         // p with p^2 | value, for not_squarefree
    std::string reason;  // for inconclusive

    friend bool operator==(const SquarefreeVerdict&, const SquarefreeVerdict&) = default;
};

SquarefreeVerdict squarefree_verdict(const Factorization& f);

}  // namespace lteseq
