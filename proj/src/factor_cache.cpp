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

#include "lteseq/factor_cache.hpp"

#include <json.hpp>

#include <istream>
#include <mutex>
#include <ostream>

namespace lteseq {

using nlohmann::json;

std::optional<Factorization> FactorCache::find(const Nat& value, const EffortBudget& effort) const
{
    std::shared_lock lock(mutex_);
    const auto it = entries_.find({effort.fingerprint(), value});
    if (it == entries_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void FactorCache::insert(const Nat& value, const EffortBudget& effort, Factorization f)
{
    std::unique_lock lock(mutex_);
    auto [it, inserted] = entries_.try_emplace({effort.fingerprint(), value}, std::move(f));
    if (inserted) {
        dirty_ = true;
    }
}

Factorization FactorCache::get(const Nat& value, const EffortBudget& effort)
{
    if (auto hit = find(value, effort)) {
        return *std::move(hit);
    }
    Factorization f = factorize(value, effort);
    insert(value, effort, f);
    return f;
}

std::size_t FactorCache::size() const
{
    std::shared_lock lock(mutex_);
    return entries_.size();
}

bool FactorCache::dirty() const
{
    std::shared_lock lock(mutex_);
    return dirty_;
}

FactorCache::LoadStats FactorCache::load(std::istream& in, std::ostream& warn)
{
    LoadStats stats;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        try {
            const json rec = json::parse(line);
            const Nat value = parse_nat(rec.at("value").get<std::string>());
            const std::string effort = rec.at("effort").get<std::string>();
            Factorization f;
            for (const auto& pair : rec.at("factors")) {
                if (!pair.is_array() || pair.size() != 2) {
                    throw DomainError("factor entry is not a [prime, exponent] pair");
                }
                f.factors.push_back({parse_nat(pair[0].get<std::string>()), pair[1].get<unsigned long>()});
            }
            f.residual = parse_nat(rec.at("residual").get<std::string>());
            f.residual_status = parse_residual_status(rec.at("residual_status").get<std::string>());
            if (!is_consistent(f, value)) {
                throw DomainError("factorization does not reproduce value");
            }
            std::unique_lock lock(mutex_);
            entries_.insert_or_assign(Key{effort, value}, std::move(f));
            ++stats.loaded;
        } catch (const std::exception& e) {
            warn << "warning: factor cache line " << lineno << " skipped: " << e.what() << '\n';
            ++stats.skipped;
        }
    }
    return stats;
}

void FactorCache::save(std::ostream& out) const
{
    std::shared_lock lock(mutex_);
    for (const auto& [key, f] : entries_) {
        json factors = json::array();
        for (const auto& pp : f.factors) {
            factors.push_back(json::array({pp.prime.get_str(), pp.exponent}));
        }
        const json rec = {
            {"value", key.second.get_str()},
            {"effort", key.first},
            {"factors", std::move(factors)},
            {"residual", f.residual.get_str()},
            {"residual_status", std::string(to_string(f.residual_status))},
        };
        out << rec.dump() << '\n';
    }
}

}  // namespace lteseq
