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

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>

namespace lteseq {

/// Memo of factorizations keyed by (value, effort fingerprint). Reads are
/// concurrent; insertion is serialized.
///
/// On disk it is one JSON object per line:
///   {"value":"63","effort":"trial=...","factors":[["3",2],["7",1]],
///    "residual":"1","residual_status":"unit"}
/// Lines that fail to parse, or whose factorization does not multiply back to
/// the value, are skipped.
class FactorCache {
public:
    std::optional<Factorization> find(const Nat& value, const EffortBudget& effort) const;
    void insert(const Nat& value, const EffortBudget& effort, Factorization f);

    /// Cached lookup, factorizing on a miss.
    Factorization get(const Nat& value, const EffortBudget& effort);

    std::size_t size() const;
    bool dirty() const;

    struct LoadStats {
        std::size_t loaded = 0;
        std::size_t skipped = 0;
    };

    /// Merges records from `in`. Warnings for skipped lines go to `warn`.
    LoadStats load(std::istream& in, std::ostream& warn);
    /// Writes all records sorted by (effort, value).
    void save(std::ostream& out) const;

private:
    using Key = std::pair<std::string, Nat>;  // (effort fingerprint, value)

    mutable std::shared_mutex mutex_;
    std::map<Key, Factorization> entries_;
    bool dirty_ = false;
};

}  // namespace lteseq
