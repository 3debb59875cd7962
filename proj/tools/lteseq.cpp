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
#include "lteseq/witness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace lteseq;

namespace {

struct Flags {
    std::string seq;
    std::size_t max_n = 100;
    unsigned long max_p = 100;
    std::string effort = "default";
    std::string checks;
    std::string report;
    std::string cache;
    bool odd_primes_only = false;
    unsigned workers = 1;
    bool timing = false;
    std::size_t max_digits = TermLimits{}.max_digits;
};

void add_run_flags(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--seq", f.seq, "power-diff:x=..,y=.. | lucas-u:P=..,Q=.. | explicit:file=PATH")->required();
    cmd->add_option("--max-n", f.max_n, "largest index N")->capture_default_str();
    cmd->add_option("--max-p", f.max_p, "largest prime P")->capture_default_str();
    cmd->add_option("--effort", f.effort, "quick|default|thorough or trial=,rho=,rounds=,seed=")
        ->capture_default_str();
    cmd->add_option("--checks", f.checks, "comma-separated check names");
    cmd->add_option("--report", f.report, "write the JSON report here");
    cmd->add_option("--cache", f.cache, "factor cache file");
    cmd->add_option("--odd-primes-only", f.odd_primes_only, "ignore p = 2 for the exit code")
        ->capture_default_str();
    cmd->add_option("--workers", f.workers, "worker threads (0 = hardware)")->capture_default_str();
    cmd->add_flag("--timing", f.timing, "include wall-clock timings in the report");
    cmd->add_option("--max-digits", f.max_digits, "refuse terms longer than this")->capture_default_str();
}

std::vector<std::string> split_csv(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

RunConfig to_config(Command cmd, const Flags& f)
{
    RunConfig c;
    c.command = cmd;
    c.spec_text = f.seq;
    c.max_n = f.max_n;
    c.max_p = f.max_p;
    c.effort = parse_effort(f.effort);
    c.effort_text = f.effort;
    c.checks = split_csv(f.checks);
    c.odd_primes_only = f.odd_primes_only;
    c.workers = f.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : f.workers;
    if (!f.report.empty()) c.report_path = f.report;
    if (!f.cache.empty()) c.cache_path = f.cache;
    c.timing = f.timing;
    c.limits.max_digits = f.max_digits;
    return c;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<Witness> collect_witnesses(const nlohmann::json& j)
{
    std::vector<Witness> out;
    if (j.contains("check") && j.contains("fields")) {
        out.push_back(j.get<Witness>());
        return out;
    }
    if (j.is_array()) {
        for (const auto& w : j) {
            out.push_back(w.get<Witness>());
        }
        return out;
    }
    const RunReport r = j.get<RunReport>();
    for (const auto& [k, c] : r.check_reports) {
        out.insert(out.end(), c.witnesses.begin(), c.witnesses.end());
        if (c.even_prime) {
            out.insert(out.end(), c.even_prime->witnesses.begin(), c.even_prime->witnesses.end());
        }
    }
    for (const auto& [k, c] : r.conjectures) {
        out.insert(out.end(), c.witnesses.begin(), c.witnesses.end());
    }
    return out;
}

int verify(const std::string& seq, const std::string& inline_json, const std::string& file, std::size_t max_digits)
{
    const SequenceSpec spec = parse_spec(seq);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(inline_json.empty() ? slurp(file) : inline_json);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("witness JSON: ") + e.what());
    }
    std::vector<Witness> ws;
    try {
        ws = collect_witnesses(j);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("witness JSON: ") + e.what());
    }
    TermLimits limits;
    limits.max_digits = max_digits;
    std::size_t bad = 0;
    for (const auto& w : ws) {
        const WitnessVerdict v = verify_witness(spec, w, limits);
        std::cout << (v.reproduced ? "reproduced  " : "NOT reproduced  ") << nlohmann::json(w).dump();
        if (!v.detail.empty()) {
            std::cout << "  (" << v.detail << ')';
        }
        std::cout << '\n';
        bad += v.reproduced ? 0 : 1;
    }
    std::cout << ws.size() - bad << '/' << ws.size() << " witnesses reproduced\n";
    return bad == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Checks divisibility sequences against valuation identities and scans open questions"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    Flags f;
    struct Sub {
        CLI::App* app;
        Command cmd;
    };
    std::vector<Sub> subs = {
        {app.add_subcommand("analyze", "verify identities over indices <= N and primes <= P"), Command::analyze},
        {app.add_subcommand("bseq", "tabulate the b-sequence"), Command::bseq},
        {app.add_subcommand("rank", "tabulate ranks of apparition"), Command::rank},
        {app.add_subcommand("conjectures", "scan the open questions for counterexamples"), Command::conjectures},
    };
    for (auto& s : subs) {
        add_run_flags(s.app, f);
    }

    auto* vw = app.add_subcommand("verify-witness", "recompute witnesses from scratch");
    std::string vw_seq, vw_json, vw_file;
    std::size_t vw_digits = TermLimits{}.max_digits;
    vw->add_option("--seq", vw_seq, "sequence spec")->required();
    auto* opt_json = vw->add_option("--witness", vw_json, "witness as inline JSON");
    auto* opt_file = vw->add_option("--witness-file,--report", vw_file, "witness, witness array or report file");
    opt_json->excludes(opt_file);
    vw->add_option("--max-digits", vw_digits, "refuse terms longer than this")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (vw->parsed()) {
            if (vw_json.empty() && vw_file.empty()) {
                throw ConfigError("verify-witness needs --witness or --witness-file");
            }
            return verify(vw_seq, vw_json, vw_file, vw_digits);
        }
        for (const auto& s : subs) {
            if (s.app->parsed()) {
                const RunReport r = run(to_config(s.cmd, f), std::cerr);
                print_summary(r, std::cout);
                return r.exit_code;
            }
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidSequence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
