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
// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include "lteseq/conjectures.hpp"
#include "lteseq/run.hpp"
#include "lteseq/witness.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace lteseq;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

Nat pow_nat(unsigned long b, unsigned long e)
{
    Nat r;
    mpz_ui_pow_ui(r.get_mpz_t(), b, e);
    return r;
}

int mobius(std::size_t n)
{
    int mu = 1;
    for (std::size_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
    }
    return n > 1 ? -mu : mu;
}

// Phi_n(2) = prod_{d | n} (2^d - 1)^{mu(n/d)}
Nat cyclotomic_at_two(std::size_t n)
{
    mpq_class v = 1;
    for (std::size_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        const int mu = mobius(n / d);
        const Nat t = pow_nat(2, d) - 1;
        if (mu == 1) v *= t;
        if (mu == -1) v /= t;
    }
    v.canonicalize();
    return v.get_num();
}

// Divisor-product peeling: b_n = a_n / prod_{d | n, d < n} b_d.
std::vector<Nat> peel(const SequenceCache& c, std::size_t n)
{
    std::vector<Nat> b(n + 1, Nat(1));
    for (std::size_t m = 1; m <= n; ++m) {
        Nat rest = c[m];
        for (std::size_t d = 1; d < m; ++d) {
            if (m % d == 0) rest /= b[d];
        }
        b[m] = rest;
    }
    return b;
}

// n has no primitive divisor iff stripping every a_i, i < n, from a_n leaves 1.
std::vector<std::size_t> brute_exceptions(const SequenceCache& c, std::size_t n_max)
{
    std::vector<std::size_t> out;
    for (std::size_t n = 1; n <= n_max; ++n) {
        Nat rest = c[n];
        for (std::size_t i = 1; i < n && rest > 1; ++i) {
            Nat g = gcd(rest, c[i]);
            while (g > 1) {
                rest /= g;
                g = gcd(rest, g);
            }
        }
        if (rest == 1) out.push_back(n);
    }
    return out;
}

template <class Range>
std::string join(const Range& r)
{
    std::ostringstream s;
    s << '{';
    bool first = true;
    for (const auto& x : r) {
        s << (first ? "" : ", ") << x;
        first = false;
    }
    s << '}';
    return s.str();
}

Outcome classical_lte()
{
    std::size_t pairs = 0;
    std::size_t qualifying = 0;
    std::size_t compared = 0;
    for (unsigned long x = 2; x <= 10; ++x) {
        for (unsigned long y = 1; y < x; ++y) {
            if (std::gcd(x, y) != 1) continue;
            ++pairs;
            const SequenceCache c = terms_up_to(make_power_diff(x, y), 200);
            bool any = false;
            for (unsigned long p : primes_up_to(100)) {
                if (p == 2 || (x - y) % p != 0) continue;
                any = true;
                const unsigned long base = valuation_of(Nat(x - y), p);
                for (std::size_t n = 1; n <= 200; ++n) {
                    ++compared;
                    if (valuation_of(c[n], p) != base + valuation_of(n, p)) {
                        return fail("x=" + std::to_string(x) + " y=" + std::to_string(y) + " p=" +
                                    std::to_string(p) + " n=" + std::to_string(n));
                    }
                }
            }
            qualifying += any ? 1 : 0;
            if (check_l_property(c, 200, 100, {1, false}).status != CheckStatus::pass) {
                return fail("check_l_property failed for x=" + std::to_string(x) + " y=" + std::to_string(y));
            }
        }
    }
    return {true, std::to_string(pairs) + " coprime pairs, " + std::to_string(qualifying) +
                      " with an odd prime dividing x-y, " + std::to_string(compared) + " valuations"};
}

Outcome identity_suite()
{
    std::size_t reports = 0;
    for (const char* text : {"power-diff:x=2,y=1", "lucas-u:P=1,Q=-1"}) {
        const SequenceSpec s = parse_spec(text);
        const std::size_t n = 150;
        const unsigned long max_p = 500;
        const SequenceCache c = terms_up_to(s, n);
        const BSequence b = build_bsequence(c, n);
        const RankTable ranks = rank_table(c, max_p, n);
        const ScanOptions opts{4, true};
        StructureReport st = verify_structure(c, b, n, opts);
        std::vector<CheckReport> all = {
            check_divisibility(c, n, opts),
            check_gcd_identity(c, n, opts),
            std::move(st.product_formula),
            std::move(st.pairwise_coprimality),
            std::move(st.b_divides_a),
            check_rank_divisibility(c, ranks, n, opts),
            check_valuation_structure(c, ranks, n, max_p, opts),
            check_rank_lte(c, ranks, n, max_p, opts),
            check_delta(c, b, ranks, n, max_p, opts),
            check_coprime_block(c, b, ranks, n, max_p, opts),
            check_rank_agreement(c, b, ranks, n, max_p, opts),
        };
        for (const auto& r : all) {
            ++reports;
            if (r.status != CheckStatus::pass || !r.witnesses.empty() || r.witness_overflow != 0) {
                return fail(std::string(text) + " " + r.name + " " + std::string(to_string(r.status)));
            }
        }
        std::size_t deltas = 0;
        for (unsigned long p : primes_up_to(max_p)) {
            try {
                if (!std::holds_alternative<DeltaResult>(find_delta(c, b, p, ranks))) {
                    return fail(std::string(text) + " find_delta p=" + std::to_string(p));
                }
                ++deltas;
            } catch (const PreconditionSkip&) {
            }
        }
        if (deltas == 0) {
            return fail(std::string(text) + " no applicable prime for find_delta");
        }
    }
    return {true, std::to_string(reports) + " check reports with zero witnesses"};
}

Outcome cyclotomic_oracle()
{
    const SequenceCache c = terms_up_to(make_power_diff(2, 1), 100);
    const BSequence b = build_bsequence(c, 100);
    const std::vector<Nat> peeled = peel(c, 100);
    for (std::size_t n = 1; n <= 100; ++n) {
        const Nat phi = cyclotomic_at_two(n);
        if (phi != peeled[n]) return fail("peeling disagrees with Phi_" + std::to_string(n) + "(2)");
        if (!b.is_integral(n) || b.integer(n) != phi) return fail("b_" + std::to_string(n));
    }
    return {true, "b_n = Phi_n(2) for n <= 100"};
}

Outcome zsigmondy()
{
    const SequenceCache m = terms_up_to(make_power_diff(2, 1), 100);
    const BSequence mb = build_bsequence(m, 100);
    const ConjectureResult a = scan_conj4(m, mb, rank_table(m, 100, 100), 100);
    const std::vector<std::size_t> expect_a = {1, 6};
    if (a.exceptional_set != expect_a || brute_exceptions(m, 100) != expect_a || !a.pending.empty() ||
        a.status == ConjectureStatus::inconclusive) {
        return fail("2^n-1: " + join(a.exceptional_set));
    }
    const SequenceCache f = terms_up_to(make_lucas_u(1, -1), 150);
    const BSequence fb = build_bsequence(f, 150);
    const ConjectureResult r = scan_conj4(f, fb, rank_table(f, 100, 150), 150);
    const std::vector<std::size_t> expect_f = {1, 2, 6, 12};
    if (r.exceptional_set != expect_f || brute_exceptions(f, 150) != expect_f || !r.pending.empty() ||
        r.status == ConjectureStatus::inconclusive) {
        return fail("Fibonacci: " + join(r.exceptional_set));
    }
    if (!r.candidate_M || *r.candidate_M != 12) return fail("candidate_M");
    return {true, "2^n-1 " + join(a.exceptional_set) + ", Fibonacci " + join(r.exceptional_set) + " M=12"};
}

Outcome conj3_readings()
{
    const SequenceCache f = terms_up_to(make_lucas_u(1, -1), 60);
    const BSequence b = build_bsequence(f, 60);
    FactorCache fc;
    const Conj3Result r = scan_conj3(b, 60, EffortBudget::standard(), fc);
    if (r.all_primes.status != ConjectureStatus::counterexample) return fail("all-primes reading not refuted");
    bool found = false;
    for (const auto& w : r.all_primes.witnesses) {
        found = found || (w.get("n") == 6 && w.get("b_n") == 4);
    }
    if (!found) return fail("witness n=6, b_6=4 missing");
    if (r.odd_primes.status != ConjectureStatus::no_counterexample) {
        return fail("odd-primes reading: " + std::string(to_string(r.odd_primes.status)));
    }
    return {true, "all primes: counterexample at n=6; odd primes: none"};
}

Outcome determinism()
{
    const auto dir = std::filesystem::temp_directory_path() / "lteseq_acceptance";
    std::filesystem::create_directories(dir);
    const std::string cache = (dir / "factors.jsonl").string();
    std::filesystem::remove(cache);
    std::ostringstream diag;
    std::size_t runs = 0;
    for (const char* text : {"power-diff:x=2,y=1", "lucas-u:P=1,Q=-1"}) {
        for (Command cmd : {Command::analyze, Command::conjectures}) {
            RunConfig c;
            c.command = cmd;
            c.spec_text = text;
            c.max_n = 120;
            c.max_p = 200;
            c.cache_path = cache;
            c.workers = 1;
            const std::string cold = serialize(run(c, diag));
            c.workers = 8;
            const std::string warm = serialize(run(c, diag));
            c.cache_path.reset();
            c.workers = 3;
            const std::string uncached = serialize(run(c, diag));
            runs += 3;
            if (cold != warm || cold != uncached) {
                return fail(std::string(text) + " " + std::string(to_string(cmd)) + " reports differ");
            }
        }
    }
    std::filesystem::remove_all(dir);
    return {true, std::to_string(runs) + " runs byte-identical (cold/warm cache, 1/3/8 workers)"};
}

Outcome witness_reverification()
{
    std::size_t verified = 0;
    std::size_t mutations = 0;
    auto exercise = [&](const SequenceSpec& s, const std::vector<Witness>& ws) -> Outcome {
        for (const auto& w : ws) {
            const WitnessVerdict v = verify_witness(s, w);
            if (!v.reproduced) return fail(w.check + " not reproduced: " + v.detail);
            ++verified;
            for (const auto& [key, value] : w.fields) {
                Witness m = w;
                m.fields[key] = value + 1;
                ++mutations;
                if (verify_witness(s, m).reproduced) return fail(w.check + " accepted mutated " + key);
            }
        }
        return {};
    };

    const SequenceCache f = terms_up_to(make_lucas_u(1, -1), 60);
    const BSequence fb = build_bsequence(f, 60);
    FactorCache fc;
    const Conj3Result c3 = scan_conj3(fb, 60, EffortBudget::standard(), fc);
    if (auto o = exercise(make_lucas_u(1, -1), c3.all_primes.witnesses); !o.ok) return o;

    // A sequence that breaks most identities, run through the full CLI path.
    const auto path = std::filesystem::temp_directory_path() / "lteseq_acceptance_sq.txt";
    {
        std::ofstream out(path);
        for (unsigned long n = 1; n <= 30; ++n) out << n * n + 1 << '\n';
    }
    std::ostringstream diag;
    for (Command cmd : {Command::analyze, Command::conjectures}) {
        RunConfig c;
        c.command = cmd;
        c.spec_text = "explicit:file=" + path.string();
        c.max_n = 30;
        c.max_p = 50;
        const RunReport r = parse_report(serialize(run(c, diag)));
        const SequenceSpec s = parse_spec(c.spec_text);
        for (const auto& [k, rep] : r.check_reports) {
            if (auto o = exercise(s, rep.witnesses); !o.ok) return o;
            if (rep.even_prime) {
                if (auto o = exercise(s, rep.even_prime->witnesses); !o.ok) return o;
            }
        }
        for (const auto& [k, rep] : r.conjectures) {
            if (auto o = exercise(s, rep.witnesses); !o.ok) return o;
        }
    }
    std::filesystem::remove(path);
    if (verified < 10) return fail("only " + std::to_string(verified) + " witnesses emitted");
    return {true, std::to_string(verified) + " witnesses reproduced, " + std::to_string(mutations) +
                      " mutations rejected"};
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"1 classical LTE over coprime pairs x <= 10, n <= 200", classical_lte},
        {"2 identity suite green for 2^n-1 and Fibonacci, N=150, P=500", identity_suite},
        {"3 b_n of 2^n-1 equals Phi_n(2) for n <= 100", cyclotomic_oracle},
        {"4 primitive-divisor exceptions", zsigmondy},
        {"5 conjecture-3 readings distinguished", conj3_readings},
        {"6 deterministic reports", determinism},
        {"7 witness re-verification and mutation", witness_reverification},
    };
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s  [%s]  %s  (%.2fs)\n", o.ok ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
        failures += o.ok ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
