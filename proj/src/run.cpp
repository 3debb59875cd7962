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

#include "lteseq/run.hpp"

#include "lteseq/bsequence.hpp"
#include "lteseq/conjectures.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace lteseq {

using nlohmann::json;

namespace {

// --- spec grammar -----------------------------------------------------------

[[noreturn]] void syntax_error(std::size_t pos, const std::string& what)
{
    throw ConfigError("sequence spec syntax error at position " + std::to_string(pos) + ": " + what);
}

struct SpecParser {
    std::string_view text;
    std::size_t pos = 0;

    bool done() const { return pos >= text.size(); }

    std::string_view take_while(auto pred)
    {
        const std::size_t start = pos;
        while (pos < text.size() && pred(text[pos])) {
            ++pos;
        }
        return text.substr(start, pos - start);
    }

    void expect(char c)
    {
        if (done() || text[pos] != c) {
            syntax_error(pos, std::string("expected '") + c + "'");
        }
        ++pos;
    }

    std::string_view family()
    {
        auto f = take_while([](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '-'; });
        if (f.empty()) {
            syntax_error(pos, "expected a family name");
        }
        return f;
    }

    std::string_view key()
    {
        auto k = take_while([](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
        if (k.empty()) {
            syntax_error(pos, "expected a key");
        }
        return k;
    }

    mpz_class integer()
    {
        const std::size_t start = pos;
        if (!done() && (text[pos] == '-' || text[pos] == '+')) {
            ++pos;
        }
        auto digits = take_while([](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
        if (digits.empty()) {
            syntax_error(start, "expected an integer");
        }
        mpz_class v{std::string(digits)};
        return text[start] == '-' ? mpz_class(-v) : v;
    }
};

using KeyValues = std::map<std::string, mpz_class>;

KeyValues integer_args(SpecParser& p, const std::set<std::string>& allowed)
{
    KeyValues out;
    while (true) {
        const std::size_t at = p.pos;
        std::string k(p.key());
        if (!allowed.contains(k)) {
            syntax_error(at, "unknown key '" + k + "'");
        }
        if (out.contains(k)) {
            syntax_error(at, "duplicate key '" + k + "'");
        }
        p.expect('=');
        out[k] = p.integer();
        if (p.done()) {
            break;
        }
        p.expect(',');
    }
    for (const auto& k : allowed) {
        if (!out.contains(k)) {
            syntax_error(p.pos, "missing key '" + k + "'");
        }
    }
    return out;
}

// --- check names ------------------------------------------------------------

const std::vector<std::string> kAnalyzeChecks = {
    checks::l_property,      checks::divisibility,        checks::gcd_identity,
    checks::product_formula, checks::pairwise_coprimality, checks::b_divides_a,
    checks::recursion,       checks::rank_divisibility,   checks::valuation_structure,
    checks::rank_lte,        checks::delta,               checks::coprime_block,
    checks::rank_agreement,
};
const std::vector<std::string> kConjectureChecks = {"conj1", "conj2", "conj3", "conj4"};
const std::vector<std::string> kBseqChecks = {"table", checks::product_formula, checks::pairwise_coprimality,
                                              checks::b_divides_a};
const std::vector<std::string> kRankChecks = {"table"};

std::vector<std::string> expand_checks(const RunConfig& config)
{
    std::vector<std::string> requested = config.checks.empty() ? default_checks(config.command) : config.checks;
    std::vector<std::string> out;
    const auto& known = known_checks(config.command);
    for (const auto& c : requested) {
        if (c == "structure") {
            for (const char* s : {checks::product_formula, checks::pairwise_coprimality, checks::b_divides_a}) {
                out.emplace_back(s);
            }
            continue;
        }
        if (c == "all") {
            out.insert(out.end(), known.begin(), known.end());
            continue;
        }
        if (std::find(known.begin(), known.end(), c) == known.end()) {
            throw ConfigError("unknown check '" + c + "' for command " + std::string(to_string(config.command)));
        }
        out.push_back(c);
    }
    // Canonical order so the config echo does not depend on flag order.
    std::vector<std::string> ordered;
    for (const auto& k : known) {
        if (std::find(out.begin(), out.end(), k) != out.end()) {
            ordered.push_back(k);
        }
    }
    if (ordered.empty()) {
        throw ConfigError("no checks selected");
    }
    return ordered;
}

// --- JSON helpers -------------------------------------------------------------

std::string rational_text(const mpq_class& q) { return q.get_str(); }

mpq_class parse_rational(const std::string& s)
{
    mpq_class q(s);
    q.canonicalize();
    return q;
}

json effort_json(const EffortBudget& e)
{
    return json{{"trial_bound", e.trial_bound},
                {"rho_iterations", e.rho_iterations},
                {"primality_rounds", e.primality_rounds},
                {"seed", e.seed}};
}

EffortBudget effort_from_json(const json& j)
{
    EffortBudget e;
    e.trial_bound = j.at("trial_bound").get<unsigned long>();
    e.rho_iterations = j.at("rho_iterations").get<std::uint64_t>();
    e.primality_rounds = j.at("primality_rounds").get<unsigned>();
    e.seed = j.at("seed").get<std::uint64_t>();
    return e;
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

SequenceSpec parse_spec(std::string_view text)
{
    SpecParser p{text};
    const std::string family(p.family());
    p.expect(':');
    if (family == "power-diff") {
        const KeyValues kv = integer_args(p, {"x", "y"});
        if (kv.at("x") < 0 || kv.at("y") < 0) {
            throw ConfigError("power-diff: x and y must be nonnegative");
        }
        try {
            return make_power_diff(kv.at("x"), kv.at("y"));
        } catch (const InvalidSequence& e) {
            throw ConfigError(e.what());
        }
    }
    if (family == "lucas-u") {
        const KeyValues kv = integer_args(p, {"P", "Q"});
        try {
            return make_lucas_u(kv.at("P"), kv.at("Q"));
        } catch (const InvalidSequence& e) {
            throw ConfigError(e.what());
        }
    }
    if (family == "explicit") {
        const std::size_t at = p.pos;
        if (p.key() != "file") {
            syntax_error(at, "explicit sequences take a single 'file' key");
        }
        p.expect('=');
        const std::string path(text.substr(p.pos));
        if (path.empty()) {
            syntax_error(p.pos, "empty file path");
        }
        try {
            return load_explicit(path);
        } catch (const InvalidSequence& e) {
            throw ConfigError(e.what());
        }
    }
    syntax_error(0, "unknown family '" + family + "' (expected power-diff, lucas-u or explicit)");
}

EffortBudget parse_effort(std::string_view text)
{
    if (text == "quick") return EffortBudget::quick();
    if (text == "default" || text == "standard") return EffortBudget::standard();
    if (text == "thorough") return EffortBudget::thorough();
    EffortBudget e;
    std::string s(text);
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("effort: expected key=value, got '" + item + "'");
        }
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        unsigned long long v = 0;
        try {
            std::size_t used = 0;
            if (value.empty() || !std::isdigit(static_cast<unsigned char>(value[0]))) {
                throw std::invalid_argument(value);
            }
            v = std::stoull(value, &used);
            if (used != value.size()) {
                throw std::invalid_argument(value);
            }
        } catch (const std::exception&) {
            throw ConfigError("effort: '" + value + "' is not a nonnegative integer");
        }
        if (key == "trial") {
            e.trial_bound = v;
        } else if (key == "rho") {
            e.rho_iterations = v;
        } else if (key == "rounds") {
            e.primality_rounds = static_cast<unsigned>(v);
        } else if (key == "seed") {
            e.seed = v;
        } else {
            throw ConfigError("effort: unknown key '" + key + "' (trial, rho, rounds, seed)");
        }
    }
    return e;
}

std::string_view to_string(Command c)
{
    switch (c) {
    case Command::analyze: return "analyze";
    case Command::bseq: return "bseq";
    case Command::rank: return "rank";
    case Command::conjectures: return "conjectures";
    }
    return "analyze";
}

const std::vector<std::string>& default_checks(Command c)
{
    static const std::vector<std::string> table_only = {"table"};
    switch (c) {
    case Command::analyze: return kAnalyzeChecks;
    case Command::conjectures: return kConjectureChecks;
    case Command::bseq:
    case Command::rank: return table_only;
    }
    return kAnalyzeChecks;
}

const std::vector<std::string>& known_checks(Command c)
{
    switch (c) {
    case Command::analyze: return kAnalyzeChecks;
    case Command::conjectures: return kConjectureChecks;
    case Command::bseq: return kBseqChecks;
    case Command::rank: return kRankChecks;
    }
    return kAnalyzeChecks;
}

void to_json(json& j, const RunReport& r)
{
    json checks_j = json::object();
    for (const auto& [k, v] : r.check_reports) {
        checks_j[k] = v;
    }
    json conj_j = json::object();
    for (const auto& [k, v] : r.conjectures) {
        conj_j[k] = v;
    }
    j = json{
        {"tool", {{"name", r.tool}, {"version", r.version}}},
        {"command", r.command},
        {"config",
         {{"seq", r.seq},
          {"max_n", r.max_n},
          {"max_p", r.max_p},
          {"effort", effort_json(r.effort)},
          {"checks", r.checks},
          {"odd_primes_only", r.odd_primes_only}}},
        {"checks", std::move(checks_j)},
        {"conjectures", std::move(conj_j)},
        {"summary", {{"failed", r.failed}, {"inconclusive", r.inconclusive}, {"exit_code", r.exit_code}}},
    };
    if (r.bsequence) {
        json rows = json::array();
        for (const auto& row : *r.bsequence) {
            rows.push_back({{"n", row.n},
                            {"a", row.a.get_str()},
                            {"b", rational_text(row.b)},
                            {"integral", row.b.get_den() == 1}});
        }
        j["bsequence"] = std::move(rows);
    }
    if (r.ranks) {
        json rows = json::array();
        for (const auto& row : *r.ranks) {
            rows.push_back({{"p", row.p},
                            {"rho", row.entry.rho ? json(*row.entry.rho) : json(nullptr)},
                            {"search_bound", row.entry.search_bound}});
        }
        j["ranks"] = std::move(rows);
    }
    if (r.timing_ms) {
        j["timing_ms"] = *r.timing_ms;
    }
}

void from_json(const json& j, RunReport& r)
{
    r.tool = j.at("tool").at("name").get<std::string>();
    r.version = j.at("tool").at("version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    const json& cfg = j.at("config");
    r.seq = cfg.at("seq").get<std::string>();
    r.max_n = cfg.at("max_n").get<std::size_t>();
    r.max_p = cfg.at("max_p").get<unsigned long>();
    r.effort = effort_from_json(cfg.at("effort"));
    r.checks = cfg.at("checks").get<std::vector<std::string>>();
    r.odd_primes_only = cfg.at("odd_primes_only").get<bool>();
    r.check_reports.clear();
    for (const auto& [k, v] : j.at("checks").items()) {
        r.check_reports[k] = v.get<CheckReport>();
    }
    r.conjectures.clear();
    for (const auto& [k, v] : j.at("conjectures").items()) {
        r.conjectures[k] = v.get<ConjectureResult>();
    }
    r.failed = j.at("summary").at("failed").get<std::vector<std::string>>();
    r.inconclusive = j.at("summary").at("inconclusive").get<std::vector<std::string>>();
    r.exit_code = j.at("summary").at("exit_code").get<int>();
    r.bsequence.reset();
    if (const auto it = j.find("bsequence"); it != j.end()) {
        std::vector<BRow> rows;
        for (const auto& row : *it) {
            rows.push_back({row.at("n").get<std::size_t>(), parse_nat(row.at("a").get<std::string>()),
                            parse_rational(row.at("b").get<std::string>())});
        }
        r.bsequence = std::move(rows);
    }
    r.ranks.reset();
    if (const auto it = j.find("ranks"); it != j.end()) {
        std::vector<RankRow> rows;
        for (const auto& row : *it) {
            RankEntry e;
            if (!row.at("rho").is_null()) {
                e.rho = row.at("rho").get<std::size_t>();
            }
            e.search_bound = row.at("search_bound").get<std::size_t>();
            rows.push_back({row.at("p").get<unsigned long>(), e});
        }
        r.ranks = std::move(rows);
    }
    r.timing_ms.reset();
    if (const auto it = j.find("timing_ms"); it != j.end()) {
        r.timing_ms = it->get<std::map<std::string, double>>();
    }
}

std::string serialize(const RunReport& r)
{
    return json(r).dump(2) + "\n";
}

RunReport parse_report(std::string_view text)
{
    return json::parse(text).get<RunReport>();
}

RunReport run(const RunConfig& config, std::ostream& diag)
{
    const auto t_start = Clock::now();
    std::map<std::string, double> timing;

    if (config.max_n < 1) {
        throw ConfigError("--max-n must be >= 1");
    }
    if (config.max_p < 3) {
        throw ConfigError("--max-p must be >= 3");
    }
    const SequenceSpec spec = parse_spec(config.spec_text);
    const std::vector<std::string> selected = expand_checks(config);
    auto wants = [&](const std::string& name) {
        return std::find(selected.begin(), selected.end(), name) != selected.end();
    };

    auto factors = std::make_shared<FactorCache>();
    if (config.cache_path && std::filesystem::exists(*config.cache_path)) {
        std::ifstream in(*config.cache_path);
        if (!in) {
            throw IoError("cannot read factor cache '" + *config.cache_path + "'");
        }
        factors->load(in, diag);
    }

    RunReport report;
    report.command = std::string(to_string(config.command));
    report.seq = describe(spec);
    report.max_n = config.max_n;
    report.max_p = config.max_p;
    report.effort = config.effort;
    report.checks = selected;
    report.odd_primes_only = config.odd_primes_only;

    const ScanOptions opts{std::max(1u, config.workers), !config.odd_primes_only};
    const std::size_t n = config.max_n;
    const unsigned long max_p = config.max_p;

    auto t0 = Clock::now();
    const SequenceCache cache = terms_up_to(spec, n, config.limits, factors);
    timing["terms"] = ms_since(t0);

    t0 = Clock::now();
    const BSequence b = build_bsequence(cache, n);
    timing["bsequence"] = ms_since(t0);

    t0 = Clock::now();
    const RankTable ranks = rank_table(cache, max_p, n);
    timing["ranks"] = ms_since(t0);

    auto timed = [&](const std::string& name, auto&& fn) {
        const auto t = Clock::now();
        fn();
        timing[name] = ms_since(t);
    };
    auto store = [&](CheckReport r) { report.check_reports[r.name] = std::move(r); };
    auto store_conj = [&](ConjectureResult r) { report.conjectures[r.key()] = std::move(r); };

    if (wants("table")) {
        if (config.command == Command::bseq) {
            std::vector<BRow> rows;
            for (std::size_t i = 1; i <= n; ++i) {
                rows.push_back({i, cache[i], b.at(i)});
            }
            report.bsequence = std::move(rows);
        } else {
            std::vector<RankRow> rows;
            for (const auto& [p, e] : ranks.entries()) {
                rows.push_back({p, e});
            }
            report.ranks = std::move(rows);
        }
    }

    if (wants(checks::l_property)) {
        timed(checks::l_property, [&] { store(check_l_property(cache, n, max_p, opts)); });
    }
    if (wants(checks::divisibility)) {
        timed(checks::divisibility, [&] { store(check_divisibility(cache, n, opts)); });
    }
    if (wants(checks::gcd_identity)) {
        timed(checks::gcd_identity, [&] { store(check_gcd_identity(cache, n, opts)); });
    }
    if (wants(checks::product_formula) || wants(checks::pairwise_coprimality) || wants(checks::b_divides_a)) {
        timed("structure", [&] {
            StructureReport s = verify_structure(cache, b, n, opts);
            if (wants(checks::product_formula)) store(std::move(s.product_formula));
            if (wants(checks::pairwise_coprimality)) store(std::move(s.pairwise_coprimality));
            if (wants(checks::b_divides_a)) store(std::move(s.b_divides_a));
        });
    }
    if (wants(checks::recursion)) {
        timed(checks::recursion, [&] { store(check_recursion_identities(cache, b, n, opts)); });
    }
    if (wants(checks::rank_divisibility)) {
        timed(checks::rank_divisibility, [&] { store(check_rank_divisibility(cache, ranks, n, opts)); });
    }
    if (wants(checks::valuation_structure)) {
        timed(checks::valuation_structure,
              [&] { store(check_valuation_structure(cache, ranks, n, max_p, opts)); });
    }
    if (wants(checks::rank_lte)) {
        timed(checks::rank_lte, [&] { store(check_rank_lte(cache, ranks, n, max_p, opts)); });
    }
    if (wants(checks::delta)) {
        timed(checks::delta, [&] { store(check_delta(cache, b, ranks, n, max_p, opts)); });
    }
    if (wants(checks::coprime_block)) {
        timed(checks::coprime_block, [&] { store(check_coprime_block(cache, b, ranks, n, max_p, opts)); });
    }
    if (wants(checks::rank_agreement)) {
        timed(checks::rank_agreement, [&] { store(check_rank_agreement(cache, b, ranks, n, max_p, opts)); });
    }

    if (wants("conj1")) {
        timed("conj1", [&] { store_conj(scan_conj1(cache, ranks, max_p)); });
    }
    if (wants("conj2")) {
        timed("conj2", [&] {
            Conj2Result r = scan_conj2(b, n, opts);
            store_conj(std::move(r.weak));
            store_conj(std::move(r.strong));
        });
    }
    if (wants("conj3")) {
        timed("conj3", [&] {
            Conj3Result r = scan_conj3(b, n, config.effort, *factors, opts);
            store_conj(std::move(r.all_primes));
            store_conj(std::move(r.odd_primes));
        });
    }
    if (wants("conj4")) {
        timed("conj4", [&] { store_conj(scan_conj4(cache, b, ranks, n, opts)); });
    }

    for (const auto& [k, r] : report.check_reports) {
        if (r.status == CheckStatus::fail) {
            report.failed.push_back(k);
        } else if (r.status == CheckStatus::inconclusive) {
            report.inconclusive.push_back(k);
        }
    }
    for (const auto& [k, r] : report.conjectures) {
        if (config.odd_primes_only && k == checks::conj3_all_primes) {
            continue;
        }
        if (r.status == ConjectureStatus::counterexample) {
            report.failed.push_back(k);
        } else if (r.status == ConjectureStatus::inconclusive) {
            report.inconclusive.push_back(k);
        }
    }
    report.exit_code = !report.failed.empty() ? kExitFailure : !report.inconclusive.empty() ? kExitInconclusive
                                                                                            : kExitOk;

    if (config.cache_path && factors->dirty()) {
        std::ofstream out(*config.cache_path, std::ios::trunc);
        if (!out) {
            throw IoError("cannot write factor cache '" + *config.cache_path + "'");
        }
        factors->save(out);
    }
    if (config.timing) {
        timing["total"] = ms_since(t_start);
        report.timing_ms = std::move(timing);
    }
    if (config.report_path) {
        std::ofstream out(*config.report_path, std::ios::trunc);
        if (!out) {
            throw IoError("cannot write report '" + *config.report_path + "'");
        }
        out << serialize(report);
    }
    return report;
}

void print_summary(const RunReport& r, std::ostream& out)
{
    out << r.tool << ' ' << r.version << "  " << r.command << "  " << r.seq << "  N=" << r.max_n
        << " P=" << r.max_p << '\n';
    if (r.bsequence) {
        out << "  n  a_n  b_n\n";
        for (const auto& row : *r.bsequence) {
            out << "  " << row.n << "  " << row.a.get_str() << "  " << row.b.get_str()
                << (row.b.get_den() == 1 ? "" : "  (non-integral)") << '\n';
        }
    }
    if (r.ranks) {
        out << "  p  rho(p)\n";
        for (const auto& row : *r.ranks) {
            out << "  " << row.p << "  "
                << (row.entry.rho ? std::to_string(*row.entry.rho)
                                  : "not found <= " + std::to_string(row.entry.search_bound))
                << '\n';
        }
    }
    for (const auto& [k, c] : r.check_reports) {
        out << "  " << k << ": " << to_string(c.status) << "  (tested " << c.tested_count << ", skipped "
            << c.skipped_count << ", witnesses " << c.witnesses.size() + c.witness_overflow << ")\n";
        if (c.even_prime && !c.even_prime->witnesses.empty()) {
            out << "    p = 2 (informational): "
                << c.even_prime->witnesses.size() + c.even_prime->witness_overflow << " deviations\n";
        }
    }
    for (const auto& [k, c] : r.conjectures) {
        out << "  " << k << ": " << to_string(c.status) << "  (tested " << c.tested_count << ", witnesses "
            << c.witnesses.size() + c.witness_overflow << ", pending " << c.pending.size() << ")\n";
        if (c.conjecture_id == 4) {
            out << "    exceptional set {";
            for (std::size_t i = 0; i < c.exceptional_set.size(); ++i) {
                out << (i ? ", " : "") << c.exceptional_set[i];
            }
            out << "}  candidate M = " << (c.candidate_M ? c.candidate_M->get_str() : "-") << '\n';
        }
    }
    out << "exit " << r.exit_code << '\n';
}

}  // namespace lteseq
