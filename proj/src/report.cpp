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

#include "lteseq/report.hpp"

#include <algorithm>
#include <utility>

namespace lteseq {

using nlohmann::json;

namespace {

// Signed decimal; witness fields may hold -1 sentinels.
Nat parse_signed(const std::string& text)
{
    if (!text.empty() && text[0] == '-') {
        return -parse_nat(std::string_view(text).substr(1));
    }
    return parse_nat(text);
}

void sort_and_cap(std::vector<Witness>& ws, std::size_t& overflow)
{
    std::sort(ws.begin(), ws.end());
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
    if (ws.size() > kWitnessCap) {
        overflow += ws.size() - kWitnessCap;
        ws.resize(kWitnessCap);
    }
}

json witnesses_to_json(const std::vector<Witness>& ws)
{
    json arr = json::array();
    for (const auto& w : ws) {
        arr.push_back(w);
    }
    return arr;
}

}  // namespace

const Nat& Witness::get(const std::string& key) const
{
    const auto it = fields.find(key);
    if (it == fields.end()) {
        throw DomainError("witness for '" + check + "' lacks field '" + key + "'");
    }
    return it->second;
}

std::size_t Witness::index(const std::string& key) const
{
    const Nat& v = get(key);
    if (v < 0 || !v.fits_ulong_p()) {
        throw DomainError("witness field '" + key + "' = " + v.get_str() + " is not an index");
    }
    return v.get_ui();
}

bool operator<(const Witness& a, const Witness& b)
{
    if (a.check != b.check) {
        return a.check < b.check;
    }
    return std::lexicographical_compare(a.fields.begin(), a.fields.end(), b.fields.begin(), b.fields.end(),
                                        [](const auto& x, const auto& y) {
                                            if (x.first != y.first) {
                                                return x.first < y.first;
                                            }
                                            return x.second < y.second;
                                        });
}

std::string_view to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::inconclusive: return "inconclusive";
    }
    return "pass";
}

CheckStatus parse_check_status(std::string_view text)
{
    if (text == "pass") return CheckStatus::pass;
    if (text == "fail") return CheckStatus::fail;
    if (text == "inconclusive") return CheckStatus::inconclusive;
    throw DomainError("unknown check status '" + std::string(text) + "'");
}

std::string_view to_string(ConjectureStatus s)
{
    switch (s) {
    case ConjectureStatus::no_counterexample: return "no_counterexample";
    case ConjectureStatus::counterexample: return "counterexample";
    case ConjectureStatus::inconclusive: return "inconclusive";
    }
    return "no_counterexample";
}

ConjectureStatus parse_conjecture_status(std::string_view text)
{
    if (text == "no_counterexample") return ConjectureStatus::no_counterexample;
    if (text == "counterexample") return ConjectureStatus::counterexample;
    if (text == "inconclusive") return ConjectureStatus::inconclusive;
    throw DomainError("unknown conjecture status '" + std::string(text) + "'");
}

void CheckReport::merge(CheckReport&& other)
{
    witnesses.insert(witnesses.end(), std::make_move_iterator(other.witnesses.begin()),
                     std::make_move_iterator(other.witnesses.end()));
    witness_overflow += other.witness_overflow;
    tested_count += other.tested_count;
    skipped_count += other.skipped_count;
    for (const auto& [reason, count] : other.skip_reasons) {
        skip_reasons[reason] += count;
    }
    for (auto& n : other.notes) {
        if (std::find(notes.begin(), notes.end(), n) == notes.end()) {
            notes.push_back(std::move(n));
        }
    }
    probabilistic = probabilistic || other.probabilistic;
    if (other.status == CheckStatus::inconclusive) {
        status = CheckStatus::inconclusive;
    }
    if (other.even_prime) {
        if (!even_prime) {
            even_prime.emplace();
        }
        even_prime->tested_count += other.even_prime->tested_count;
        even_prime->witness_overflow += other.even_prime->witness_overflow;
        even_prime->witnesses.insert(even_prime->witnesses.end(), other.even_prime->witnesses.begin(),
                                     other.even_prime->witnesses.end());
    }
}

void CheckReport::finalize()
{
    sort_and_cap(witnesses, witness_overflow);
    std::sort(notes.begin(), notes.end());
    if (even_prime) {
        sort_and_cap(even_prime->witnesses, even_prime->witness_overflow);
    }
    if (!witnesses.empty()) {
        status = CheckStatus::fail;
    } else if (status == CheckStatus::fail) {
        status = CheckStatus::pass;
    }
}

std::string ConjectureResult::key() const
{
    std::string k = "conj" + std::to_string(conjecture_id);
    if (!reading.empty()) {
        k += "_" + reading;
    }
    return k;
}

void ConjectureResult::finalize()
{
    sort_and_cap(witnesses, witness_overflow);
    std::sort(pending.begin(), pending.end(), [](const PendingItem& a, const PendingItem& b) { return a.n < b.n; });
    std::sort(exceptional_set.begin(), exceptional_set.end());
    std::sort(notes.begin(), notes.end());
    if (!witnesses.empty()) {
        status = ConjectureStatus::counterexample;
    } else if (!pending.empty()) {
        status = ConjectureStatus::inconclusive;
    } else {
        status = ConjectureStatus::no_counterexample;
    }
}

void to_json(json& j, const Witness& w)
{
    json fields = json::object();
    for (const auto& [k, v] : w.fields) {
        fields[k] = v.get_str();
    }
    j = json{{"check", w.check}, {"fields", std::move(fields)}};
}

void from_json(const json& j, Witness& w)
{
    w.check = j.at("check").get<std::string>();
    w.fields.clear();
    for (const auto& [k, v] : j.at("fields").items()) {
        w.fields[k] = parse_signed(v.get<std::string>());
    }
}

void to_json(json& j, const CheckReport& r)
{
    j = json{
        {"name", r.name},
        {"status", std::string(to_string(r.status))},
        {"witnesses", witnesses_to_json(r.witnesses)},
        {"witness_overflow", r.witness_overflow},
        {"tested_count", r.tested_count},
        {"skipped_count", r.skipped_count},
        {"skip_reasons", r.skip_reasons},
        {"notes", r.notes},
        {"probabilistic", r.probabilistic},
    };
    if (r.even_prime) {
        j["even_prime"] = json{
            {"tested_count", r.even_prime->tested_count},
            {"witnesses", witnesses_to_json(r.even_prime->witnesses)},
            {"witness_overflow", r.even_prime->witness_overflow},
        };
    }
}

void from_json(const json& j, CheckReport& r)
{
    r.name = j.at("name").get<std::string>();
    r.status = parse_check_status(j.at("status").get<std::string>());
    r.witnesses = j.at("witnesses").get<std::vector<Witness>>();
    r.witness_overflow = j.at("witness_overflow").get<std::size_t>();
    r.tested_count = j.at("tested_count").get<std::size_t>();
    r.skipped_count = j.at("skipped_count").get<std::size_t>();
    r.skip_reasons = j.at("skip_reasons").get<std::map<std::string, std::size_t>>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.probabilistic = j.at("probabilistic").get<bool>();
    r.even_prime.reset();
    if (const auto it = j.find("even_prime"); it != j.end()) {
        EvenPrimeSection e;
        e.tested_count = it->at("tested_count").get<std::size_t>();
        e.witnesses = it->at("witnesses").get<std::vector<Witness>>();
        e.witness_overflow = it->at("witness_overflow").get<std::size_t>();
        r.even_prime = std::move(e);
    }
}

void to_json(json& j, const ConjectureResult& r)
{
    json pending = json::array();
    for (const auto& p : r.pending) {
        pending.push_back({{"n", p.n}, {"residual", p.residual.get_str()}, {"reason", p.reason}});
    }
    j = json{
        {"conjecture_id", r.conjecture_id},
        {"reading", r.reading},
        {"status", std::string(to_string(r.status))},
        {"witnesses", witnesses_to_json(r.witnesses)},
        {"witness_overflow", r.witness_overflow},
        {"tested_count", r.tested_count},
        {"skipped_count", r.skipped_count},
        {"scanned_range", {{"max_n", r.max_n}, {"max_p", r.max_p}}},
        {"pending", std::move(pending)},
        {"probabilistic", r.probabilistic},
        {"notes", r.notes},
    };
    if (r.conjecture_id == 4) {
        j["exceptional_set"] = r.exceptional_set;
        j["candidate_M"] = r.candidate_M ? json(r.candidate_M->get_str()) : json(nullptr);
    }
}

void from_json(const json& j, ConjectureResult& r)
{
    r.conjecture_id = j.at("conjecture_id").get<int>();
    r.reading = j.at("reading").get<std::string>();
    r.status = parse_conjecture_status(j.at("status").get<std::string>());
    r.witnesses = j.at("witnesses").get<std::vector<Witness>>();
    r.witness_overflow = j.at("witness_overflow").get<std::size_t>();
    r.tested_count = j.at("tested_count").get<std::size_t>();
    r.skipped_count = j.at("skipped_count").get<std::size_t>();
    r.max_n = j.at("scanned_range").at("max_n").get<std::size_t>();
    r.max_p = j.at("scanned_range").at("max_p").get<std::size_t>();
    r.pending.clear();
    for (const auto& p : j.at("pending")) {
        r.pending.push_back({p.at("n").get<std::size_t>(), parse_nat(p.at("residual").get<std::string>()),
                             p.at("reason").get<std::string>()});
    }
    r.probabilistic = j.at("probabilistic").get<bool>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.exceptional_set.clear();
    r.candidate_M.reset();
    if (const auto it = j.find("exceptional_set"); it != j.end()) {
        r.exceptional_set = it->get<std::vector<std::size_t>>();
    }
    if (const auto it = j.find("candidate_M"); it != j.end() && !it->is_null()) {
        r.candidate_M = parse_nat(it->get<std::string>());
    }
}

}  // namespace lteseq
