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
#include "lteseq/factor_cache.hpp"

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace lteseq {

class InvalidSequence : public std::runtime_error {
public:
    InvalidSequence(const std::string& what, std::size_t index = 0)
        : std::runtime_error(what), index_(index) {}

    /// Offending 1-based index, 0 when not tied to a term.
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

class IndexOutOfRange : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// a_n = x^n - y^n with x > y >= 1 and gcd(x, y) = 1.
struct PowerDiff {
    Nat x;
    Nat y;
};

/// Lucas sequence of the first kind: U_1 = 1, U_2 = P, U_n = P U_{n-1} - Q U_{n-2}.
/// P and Q are signed.
struct LucasU {
    mpz_class P;
    mpz_class Q;
};

/// Terms read from a file; index 1 is the first data line.
struct Explicit {
    std::string source;
    std::vector<Nat> terms;
};

using SequenceSpec = std::variant<PowerDiff, LucasU, Explicit>;

/// Validating constructors.
PowerDiff make_power_diff(const Nat& x, const Nat& y);
LucasU make_lucas_u(const mpz_class& P, const mpz_class& Q);

/// Reads an explicit sequence: one positive base-10 integer per line, lines
/// starting with '#' ignored. Throws IoError when the file cannot be read and
/// InvalidSequence on bad content.
Explicit load_explicit(const std::string& path);
Explicit parse_explicit(const std::string& source, std::istream& in);

/// Canonical spec text, e.g. "power-diff:x=2,y=1".
std::string describe(const SequenceSpec& spec);

/// a_n computed from scratch.
Nat term(const SequenceSpec& spec, std::size_t n);

struct TermLimits {
    /// Largest permitted term, in decimal digits.
    std::size_t max_digits = 50000;
};

/// Terms a_1..a_N of one sequence plus a shared factorization memo. Immutable
/// once built; safe to read from many threads.
class SequenceCache {
public:
    SequenceCache(SequenceSpec spec, std::vector<Nat> terms, std::shared_ptr<FactorCache> factors);

    const SequenceSpec& spec() const { return spec_; }
    std::size_t size() const { return terms_.size(); }

    /// a_n, 1-based. Throws IndexOutOfRange.
    const Nat& at(std::size_t n) const;
    /// a_n, 1-based, unchecked.
    const Nat& operator[](std::size_t n) const { return terms_[n - 1]; }

    Factorization factorization(std::size_t n, const EffortBudget& effort) const;
    FactorCache& factor_cache() const { return *factors_; }

private:
    SequenceSpec spec_;
    std::vector<Nat> terms_;
    std::shared_ptr<FactorCache> factors_;
};

/// Builds a_1..a_N, validating every term is positive and within `limits`.
SequenceCache terms_up_to(const SequenceSpec& spec, std::size_t n, const TermLimits& limits = {},
                          std::shared_ptr<FactorCache> factors = nullptr);

}  // namespace lteseq
