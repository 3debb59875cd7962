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
#include "lteseq/parallel.hpp"
#include "lteseq/report.hpp"
#include "lteseq/sequence.hpp"

#include <cstddef>
#include <vector>

namespace lteseq {

/// The divisor-product decomposition a_n = prod_{d | n} b_d, built from
/// prefix LCMs: b_1 = a_1 and b_n = [a_1..a_n] / [a_1..a_{n-1}].
///
/// Terms are kept as exact rationals with a per-index integrality flag so a
/// sequence that breaks the decomposition can be inspected rather than
/// rejected.
struct BSequence {
    std::vector<mpq_class> terms;  // b_1..b_N
    std::vector<bool> integral;
    std::vector<Nat> prefix_lcms;  // [a_1], [a_1, a_2], ...

    std::size_t size() const { return terms.size(); }

    /// b_n, 1-based. Throws IndexOutOfRange.
    const mpq_class& at(std::size_t n) const;
    bool is_integral(std::size_t n) const { return integral.at(n - 1); }
    /// b_n as an integer. Throws DomainError when b_n is not integral.
    Nat integer(std::size_t n) const;
    /// [a_1, ..., a_n]; lcm_through(0) = 1.
    Nat lcm_through(std::size_t n) const;
};

BSequence build_bsequence(const SequenceCache& cache, std::size_t n);

struct StructureReport {
    CheckReport product_formula;
    CheckReport pairwise_coprimality;
    CheckReport b_divides_a;
};

/// a_n = prod_{d|n} b_d, gcd(b_m, b_n) = 1 when neither index divides the
/// other, and b_n | a_n, for every index up to n.
StructureReport verify_structure(const SequenceCache& cache, const BSequence& b, std::size_t n,
                                 const ScanOptions& opts = {});

/// Checks b_p = a_p / a_1, b_{p^{k+1}} = a_{p^{k+1}} / a_{p^k} and
/// b_{pq} = a_{pq} / [a_p, a_q] for one (p, q, k).
/// Throws IndexOutOfRange if an index lies outside the built range and
/// DomainError unless p, q are distinct primes and k >= 1.
CheckReport recursion_identities(const SequenceCache& cache, const BSequence& b, std::size_t p, std::size_t q,
                                 std::size_t k);

/// The same three identities for every prime p, q and exponent k whose
/// indices fit under n.
CheckReport check_recursion_identities(const SequenceCache& cache, const BSequence& b, std::size_t n,
                                       const ScanOptions& opts = {});

namespace checks {
inline constexpr const char* product_formula = "product_formula";
inline constexpr const char* pairwise_coprimality = "pairwise_coprimality";
inline constexpr const char* b_divides_a = "b_divides_a";
inline constexpr const char* recursion = "recursion_identities";
}  // namespace checks

}  // namespace lteseq
