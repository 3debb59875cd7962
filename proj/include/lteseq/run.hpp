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
#include "lteseq/report.hpp"
#include "lteseq/sequence.hpp"

#include <json.hpp>

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lteseq {

inline constexpr const char* kToolName = "lteseq";
inline constexpr const char* kToolVersion = "0.1.0";

/// Bad user input: spec text, flags, or combinations of them.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parses `family ":" key "=" value ("," key "=" value)*`:
///   power-diff:x=<int>,y=<int>
///   lucas-u:P=<int>,Q=<int>
///   explicit:file=<path>
/// Explicit files are loaded here. Syntax errors carry the character
/// position; constraint violations (e.g. gcd(x, y) != 1) are reported as
/// ConfigError as well. A missing file raises IoError.
SequenceSpec parse_spec(std::string_view text);

/// "quick", "default", "thorough", or a custom list such as
/// "trial=1000,rho=50000,rounds=8,seed=3" (unspecified keys keep defaults).
EffortBudget parse_effort(std::string_view text);

enum class Command { analyze, bseq, rank, conjectures };

std::string_view to_string(Command c);

/// Checks each command runs when none are requested explicitly.
const std::vector<std::string>& default_checks(Command c);
/// Every check name a command accepts.
const std::vector<std::string>& known_checks(Command c);

struct RunConfig {
    Command command = Command::analyze;
    std::string spec_text;
    std::size_t max_n = 100;
    unsigned long max_p = 100;
    EffortBudget effort;
    std::string effort_text = "default";
    std::vector<std::string> checks;  // empty: default_checks(command)
    bool odd_primes_only = false;
    unsigned workers = 1;
    std::optional<std::string> report_path;
    std::optional<std::string> cache_path;
    bool timing = false;
    TermLimits limits;
};

struct BRow {
    std::size_t n = 0;
    Nat a;
    mpq_class b;

    friend bool operator==(const BRow&, const BRow&) = default;
};

struct RankRow {
    unsigned long p = 0;
    RankEntry entry;

    friend bool operator==(const RankRow&, const RankRow&) = default;
};

struct RunReport {
    std::string tool = kToolName;
    std::string version = kToolVersion;
    std::string command;
    // Config echo. Worker count and file paths are left out so they cannot
    // change the report bytes.
    std::string seq;
    std::size_t max_n = 0;
    unsigned long max_p = 0;
    EffortBudget effort;
    std::vector<std::string> checks;
    bool odd_primes_only = false;

    std::map<std::string, CheckReport> check_reports;
    std::map<std::string, ConjectureResult> conjectures;
    std::optional<std::vector<BRow>> bsequence;
    std::optional<std::vector<RankRow>> ranks;
    std::optional<std::map<std::string, double>> timing_ms;

    /// Keys of results that fail or are inconclusive and count toward the
    /// exit code.
    std::vector<std::string> failed;
    std::vector<std::string> inconclusive;
    int exit_code = 0;

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

void to_json(nlohmann::json& j, const RunReport& r);
void from_json(const nlohmann::json& j, RunReport& r);

/// Deterministic text form: sorted keys, two-space indent, trailing newline.
std::string serialize(const RunReport& r);
RunReport parse_report(std::string_view text);

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 3;

/// Builds terms, the b-sequence and ranks as needed, runs the selected checks
/// in dependency order and assembles the report. Loads and saves the factor
/// cache when configured. Throws ConfigError / IoError / InvalidSequence on
/// bad input.
RunReport run(const RunConfig& config, std::ostream& diag);

/// Human-readable summary of a report.
void print_summary(const RunReport& r, std::ostream& out);

}  // namespace lteseq
