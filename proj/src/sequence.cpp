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

#include "lteseq/sequence.hpp"

#include <fstream>
#include <istream>
#include <utility>

namespace lteseq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void check_digits(const Nat& v, std::size_t n, const TermLimits& limits)
{
    // sizeinbase overestimates by at most one digit.
    if (mpz_sizeinbase(v.get_mpz_t(), 10) > limits.max_digits + 1) {
        throw InvalidSequence("term a_" + std::to_string(n) + " exceeds the " + std::to_string(limits.max_digits) +
                                  "-digit term budget",
                              n);
    }
}

std::vector<Nat> generate(const SequenceSpec& spec, std::size_t count, const TermLimits& limits)
{
    std::vector<Nat> out;
    out.reserve(count);
    std::visit(overloaded{
                   [&](const PowerDiff& s) {
                       Nat xn = 1;
                       Nat yn = 1;
                       for (std::size_t n = 1; n <= count; ++n) {
                           xn *= s.x;
                           yn *= s.y;
                           out.push_back(xn - yn);
                           check_digits(out.back(), n, limits);
                       }
                   },
                   [&](const LucasU& s) {
                       mpz_class prev = 0;  // U_0
                       mpz_class cur = 1;   // U_1
                       for (std::size_t n = 1; n <= count; ++n) {
                           if (n > 1) {
                               mpz_class next = s.P * cur - s.Q * prev;
                               prev = std::move(cur);
                               cur = std::move(next);
                           }
                           if (cur <= 0) {
                               throw InvalidSequence("lucas-u term a_" + std::to_string(n) + " = " + cur.get_str() +
                                                         " is not positive",
                                                     n);
                           }
                           check_digits(cur, n, limits);
                           out.push_back(cur);
                       }
                   },
                   [&](const Explicit& s) {
                       if (count > s.terms.size()) {
                           throw IndexOutOfRange("explicit sequence '" + s.source + "' has " +
                                                 std::to_string(s.terms.size()) + " terms; index " +
                                                 std::to_string(count) + " requested");
                       }
                       for (std::size_t n = 1; n <= count; ++n) {
                           check_digits(s.terms[n - 1], n, limits);
                           out.push_back(s.terms[n - 1]);
                       }
                   },
               },
               spec);
    return out;
}

}  // namespace

PowerDiff make_power_diff(const Nat& x, const Nat& y)
{
    if (y < 1 || x <= y) {
        throw InvalidSequence("power-diff requires x > y >= 1 (got x=" + x.get_str() + ", y=" + y.get_str() + ")");
    }
    if (const Nat g = gcd(x, y); g != 1) {
        throw InvalidSequence("power-diff requires gcd(x, y) = 1 (gcd(" + x.get_str() + ", " + y.get_str() +
                              ") = " + g.get_str() + ")");
    }
    return {x, y};
}

LucasU make_lucas_u(const mpz_class& P, const mpz_class& Q)
{
    // U_1 = 1 is always positive; U_2 = P must be too.
    if (P <= 0) {
        throw InvalidSequence("lucas-u requires P >= 1 for positive terms (got P=" + P.get_str() + ")", 2);
    }
    return {P, Q};
}

Explicit parse_explicit(const std::string& source, std::istream& in)
{
    Explicit out{source, {}};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
            line.pop_back();
        }
        const auto start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') {
            continue;
        }
        Nat v;
        try {
            v = parse_nat(std::string_view(line).substr(start));
        } catch (const DomainError&) {
            throw InvalidSequence(source + ":" + std::to_string(lineno) + ": not a positive integer: '" + line + "'",
                                  out.terms.size() + 1);
        }
        if (v < 1) {
            throw InvalidSequence(source + ":" + std::to_string(lineno) + ": terms must be >= 1",
                                  out.terms.size() + 1);
        }
        out.terms.push_back(std::move(v));
    }
    if (out.terms.empty()) {
        throw InvalidSequence("explicit sequence '" + source + "' has no terms");
    }
    return out;
}

Explicit load_explicit(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open sequence file '" + path + "'");
    }
    return parse_explicit(path, in);
}

std::string describe(const SequenceSpec& spec)
{
    return std::visit(overloaded{
                          [](const PowerDiff& s) { return "power-diff:x=" + s.x.get_str() + ",y=" + s.y.get_str(); },
                          [](const LucasU& s) { return "lucas-u:P=" + s.P.get_str() + ",Q=" + s.Q.get_str(); },
                          [](const Explicit& s) { return "explicit:file=" + s.source; },
                      },
                      spec);
}

Nat term(const SequenceSpec& spec, std::size_t n)
{
    if (n == 0) {
        throw IndexOutOfRange("sequence indices start at 1");
    }
    if (const auto* s = std::get_if<PowerDiff>(&spec)) {
        Nat xn;
        Nat yn;
        mpz_pow_ui(xn.get_mpz_t(), s->x.get_mpz_t(), n);
        mpz_pow_ui(yn.get_mpz_t(), s->y.get_mpz_t(), n);
        return xn - yn;
    }
    return generate(spec, n, TermLimits{static_cast<std::size_t>(-1) / 2}).back();
}

SequenceCache::SequenceCache(SequenceSpec spec, std::vector<Nat> terms, std::shared_ptr<FactorCache> factors)
    : spec_(std::move(spec)), terms_(std::move(terms)), factors_(std::move(factors))
{
    if (!factors_) {
        factors_ = std::make_shared<FactorCache>();
    }
}

const Nat& SequenceCache::at(std::size_t n) const
{
    if (n == 0 || n > terms_.size()) {
        throw IndexOutOfRange("index " + std::to_string(n) + " outside cached range 1.." +
                              std::to_string(terms_.size()));
    }
    return terms_[n - 1];
}

Factorization SequenceCache::factorization(std::size_t n, const EffortBudget& effort) const
{
    return factors_->get(at(n), effort);
}

SequenceCache terms_up_to(const SequenceSpec& spec, std::size_t n, const TermLimits& limits,
                          std::shared_ptr<FactorCache> factors)
{
    if (n == 0) {
        throw IndexOutOfRange("terms_up_to requires N >= 1");
    }
    return SequenceCache(spec, generate(spec, n, limits), std::move(factors));
}

}  // namespace lteseq
