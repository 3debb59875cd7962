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

#include "lteseq/arith.hpp"
#include "lteseq/bsequence.hpp"
#include "lteseq/parallel.hpp"
#include "lteseq/report.hpp"
#include "lteseq/sequence.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace lteseq {

/// A hypothesis of the statement under test does not hold for this input,
/// so there is nothing to check.
class PreconditionSkip : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Rank of apparition: the smallest k with p | a_k, or not found up to
/// `search_bound`.
struct RankEntry {
    std::optional<std::size_t> rho;
    std::size_t search_bound = 0;

    bool found() const { return rho.has_value(); }
    friend bool operator==(const RankEntry&, const RankEntry&) = default;
};

class RankTable {
public:
    void set(unsigned long p, RankEntry e) { entries_[p] = e; }
    const std::map<unsigned long, RankEntry>& entries() const { return entries_; }
    /// rho(p) when p was searched and found.
    std::optional<std::size_t> rho(unsigned long p) const;

private:
    std::map<unsigned long, RankEntry> entries_;
};

/// Throws DomainError unless p is prime and IndexOutOfRange if the cache
/// does not cover 1..bound.
RankEntry rank(const SequenceCache& cache, const Nat& p, std::size_t bound);

/// Ranks of every prime p <= max_p, searched up to `bound`.
RankTable rank_table(const SequenceCache& cache, unsigned long max_p, std::size_t bound);

/// nu_p(a_{kn}) = nu_p(a_k) + nu_p(n) for odd p <= max_p, p | a_k, kn <= n_max.
CheckReport check_l_property(const SequenceCache& cache, std::size_t n_max, unsigned long max_p,
                             const ScanOptions& opts = {});

/// a_k | a_{kn} for all kn <= n_max.
CheckReport check_divisibility(const SequenceCache& cache, std::size_t n_max, const ScanOptions& opts = {});

/// gcd(a_m, a_n) = a_{gcd(m, n)} for all m, n <= n_max.
CheckReport check_gcd_identity(const SequenceCache& cache, std::size_t n_max, const ScanOptions& opts = {});

/// (p | a_k) iff (rho(p) | k) for every ranked p and k <= n_max.
CheckReport check_rank_divisibility(const SequenceCache& cache, const RankTable& ranks, std::size_t n_max,
                                    const ScanOptions& opts = {});

/// If p^r || a_rho and p^s || a_k then s >= r and k = p^{s-r} rho l with p not dividing l.
CheckReport check_valuation_structure(const SequenceCache& cache, const RankTable& ranks, std::size_t n_max,
                                      unsigned long max_p, const ScanOptions& opts = {});

/// nu_p(a_{rho s}) = nu_p(a_rho) + nu_p(s).
CheckReport check_rank_lte(const SequenceCache& cache, const RankTable& ranks, std::size_t n_max,
                           unsigned long max_p, const ScanOptions& opts = {});

struct DeltaResult {
    unsigned long p = 0;
    std::size_t rho = 0;
    std::size_t delta = 0;
    std::map<std::size_t, unsigned long> valuations;  // d | rho -> nu_p(b_{pd})

    friend bool operator==(const DeltaResult&, const DeltaResult&) = default;
};

/// For odd p with p not dividing rho: the unique d | rho with p || b_{pd}.
/// Returns a failing CheckReport (with witness) when the divisor is not
/// unique or the valuation is not exactly 1.
/// Throws PreconditionSkip when p is even, unranked, p | rho, or p*rho lies
/// beyond the built b-sequence.
std::variant<DeltaResult, CheckReport> find_delta(const SequenceCache& cache, const BSequence& b, unsigned long p,
                                                  const RankTable& ranks);

/// find_delta over every prime p <= max_p whose hypotheses hold.
CheckReport check_delta(const SequenceCache& cache, const BSequence& b, const RankTable& ranks, std::size_t n_max,
                        unsigned long max_p, const ScanOptions& opts = {});

/// For odd ranked p and k >= 2 with gcd(p rho, k) = 1 and rho k <= n_max:
/// p does not divide b_{de} for any d | rho and e | k with e > 1.
CheckReport check_coprime_block(const SequenceCache& cache, const BSequence& b, const RankTable& ranks,
                                std::size_t n_max, unsigned long max_p, const ScanOptions& opts = {});

/// Rank in (a) equals the first b-index divisible by p, and the primes <= max_p
/// dividing some a_n equal those dividing some b_n, n <= n_max.
CheckReport check_rank_agreement(const SequenceCache& cache, const BSequence& b, const RankTable& ranks,
                                 std::size_t n_max, unsigned long max_p, const ScanOptions& opts = {});

struct PrimitiveDivisors {
    /// a_n has at least one primitive prime divisor. Always decided exactly.
    bool present = false;
    /// Primitive primes found so far, ascending.
    std::vector<Nat> primes;
    /// False when the primitive part could not be fully factored, so
    /// `primes` may be a strict subset.
    bool complete = true;
    /// The part of a_n coprime to a_1..a_{n-1}.
    Nat primitive_part = 1;
    bool probabilistic = false;
};

/// Primes dividing a_n but no earlier term. Existence is decided from the
/// primitive part of a_n (a_n with every prime of [a_1..a_{n-1}] removed), so
/// it never depends on factorization effort; only the listing does.
PrimitiveDivisors primitive_divisors(const SequenceCache& cache, std::size_t n, const EffortBudget& effort);
PrimitiveDivisors primitive_divisors(const SequenceCache& cache, const BSequence& b, std::size_t n,
                                     const EffortBudget& effort);

/// a_n with every prime factor of `earlier_lcm` divided out.
Nat primitive_part(const Nat& a_n, const Nat& earlier_lcm);

namespace checks {
inline constexpr const char* l_property = "l_property";
inline constexpr const char* divisibility = "divisibility";
inline constexpr const char* gcd_identity = "gcd_identity";
inline constexpr const char* rank_divisibility = "rank_divisibility";
inline constexpr const char* valuation_structure = "valuation_structure";
inline constexpr const char* rank_lte = "rank_lte";
inline constexpr const char* delta = "delta";
inline constexpr const char* coprime_block = "coprime_block";
inline constexpr const char* rank_agreement = "rank_agreement";
inline constexpr const char* prime_set_agreement = "rank_agreement_prime_set";
}  // namespace checks

}  // namespace lteseq
