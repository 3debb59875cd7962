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

#include "lteseq/analysis.hpp"
#include "lteseq/bsequence.hpp"
#include "lteseq/parallel.hpp"
#include "lteseq/report.hpp"
#include "lteseq/sequence.hpp"

#include <cstddef>

namespace lteseq {

// Falsification scans. None of these ever reports a conjecture as proven:
// the best outcome is no_counterexample over the scanned range.

/// If gcd(p, rho(p)) != 1 then p = rho(p). Counterexample: p | rho(p), p != rho(p).
ConjectureResult scan_conj1(const SequenceCache& cache, const RankTable& ranks, unsigned long max_p);

struct Conj2Result {
    ConjectureResult weak;    // m/n is a prime power
    ConjectureResult strong;  // m/n is a power of a prime dividing gcd(b_m, b_n)
};

/// If gcd(b_m, b_n) > 1 (m > n) then m/n = q^alpha, alpha >= 1.
Conj2Result scan_conj2(const BSequence& b, std::size_t n_max, const ScanOptions& opts = {});

struct Conj3Result {
    ConjectureResult all_primes;
    ConjectureResult odd_primes;  // the exponent of 2 is ignored
};

/// b_n is squarefree whenever n is. Factorizations go through `factors`.
Conj3Result scan_conj3(const BSequence& b, std::size_t n_max, const EffortBudget& effort, FactorCache& factors,
                       const ScanOptions& opts = {});

/// Indices n <= n_max whose term has no primitive prime divisor, and their
/// lcm as the candidate bound M. Asserts nothing.
///
/// A rank hit (some tabulated prime has rho(p) = n) settles an index at once;
/// otherwise the primitive part of a_n against [a_1..a_{n-1}] decides it
/// exactly, so no index is ever left pending.
ConjectureResult scan_conj4(const SequenceCache& cache, const BSequence& b, const RankTable& ranks,
                            std::size_t n_max, const ScanOptions& opts = {});

namespace checks {
inline constexpr const char* conj1 = "conj1";
inline constexpr const char* conj2_weak = "conj2_weak";
inline constexpr const char* conj2_strong = "conj2_strong";
inline constexpr const char* conj3_all_primes = "conj3_all_primes";
inline constexpr const char* conj3_odd_primes = "conj3_odd_primes";
}  // namespace checks

}  // namespace lteseq
