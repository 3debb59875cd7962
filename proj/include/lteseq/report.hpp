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

#include <json.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lteseq {

/// Serialized reports keep at most this many witnesses per check.
inline constexpr std::size_t kWitnessCap = 100;

/// One concrete violation: the check that produced it plus every index,
/// prime and value needed to reproduce it from the sequence alone.
struct Witness {
    std::string check;
    std::map<std::string, Nat> fields;

    Witness() = default;
    explicit Witness(std::string check_name) : check(std::move(check_name)) {}

    Witness& set(const std::string& key, const Nat& value)
    {
        fields[key] = value;
        return *this;
    }
    Witness& set(const std::string& key, std::size_t value) { return set(key, Nat(static_cast<unsigned long>(value))); }

    /// Throws DomainError when the field is absent.
    const Nat& get(const std::string& key) const;
    /// Field as a machine index. Throws DomainError when absent or too large.
    std::size_t index(const std::string& key) const;

    friend bool operator==(const Witness&, const Witness&) = default;
    friend bool operator<(const Witness& a, const Witness& b);
};

enum class CheckStatus { pass, fail, inconclusive };

std::string_view to_string(CheckStatus s);
CheckStatus parse_check_status(std::string_view text);

/// Witnesses collected for p = 2. They never affect the check status.
struct EvenPrimeSection {
    std::size_t tested_count = 0;
    std::vector<Witness> witnesses;
    std::size_t witness_overflow = 0;

    friend bool operator==(const EvenPrimeSection&, const EvenPrimeSection&) = default;
};

struct CheckReport {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::vector<Witness> witnesses;
    std::size_t witness_overflow = 0;
    std::size_t tested_count = 0;
    std::size_t skipped_count = 0;
    std::map<std::string, std::size_t> skip_reasons;
    std::vector<std::string> notes;
    bool probabilistic = false;
    std::optional<EvenPrimeSection> even_prime;

    CheckReport() = default;
    explicit CheckReport(std::string check_name) : name(std::move(check_name)) {}

    void skip(const std::string& reason, std::size_t count = 1)
    {
        skipped_count += count;
        skip_reasons[reason] += count;
    }
    void fail(Witness w) { witnesses.push_back(std::move(w)); }

    /// Folds a partial report from another worker into this one.
    void merge(CheckReport&& other);

    /// Sorts and caps witnesses and derives the status. Idempotent; must run
    /// once all partial results are merged.
    void finalize();

    bool failed() const { return status == CheckStatus::fail; }

    friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

enum class ConjectureStatus { no_counterexample, counterexample, inconclusive };

std::string_view to_string(ConjectureStatus s);
ConjectureStatus parse_conjecture_status(std::string_view text);

/// A scan item that could not be decided within the effort budget.
struct PendingItem {
    std::size_t n = 0;
    Nat residual;
    std::string reason;

    friend bool operator==(const PendingItem&, const PendingItem&) = default;
};

struct ConjectureResult {
    int conjecture_id = 0;
    std::string reading;  // which interpretation was scanned, e.g. "odd_primes"
    ConjectureStatus status = ConjectureStatus::no_counterexample;
    std::vector<Witness> witnesses;
    std::size_t witness_overflow = 0;
    std::size_t tested_count = 0;
    std::size_t skipped_count = 0;
    std::size_t max_n = 0;
    std::size_t max_p = 0;
    std::vector<PendingItem> pending;
    std::vector<std::size_t> exceptional_set;
    std::optional<Nat> candidate_M;
    bool probabilistic = false;
    std::vector<std::string> notes;

    /// Report key, e.g. "conj3_odd_primes".
    std::string key() const;
    void finalize();

    friend bool operator==(const ConjectureResult&, const ConjectureResult&) = default;
};

void to_json(nlohmann::json& j, const Witness& w);
void from_json(const nlohmann::json& j, Witness& w);
void to_json(nlohmann::json& j, const CheckReport& r);
void from_json(const nlohmann::json& j, CheckReport& r);
void to_json(nlohmann::json& j, const ConjectureResult& r);
void from_json(const nlohmann::json& j, ConjectureResult& r);

}  // namespace lteseq
