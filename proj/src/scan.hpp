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

#include "lteseq/parallel.hpp"
#include "lteseq/report.hpp"

#include <string>
#include <utility>

namespace lteseq::detail {

/// Fans `body(i, partial_report)` out over [0, count) and merges the partial
/// reports into one finalized CheckReport. Checks restricted to odd primes
/// pass `even_section` so p = 2 results have somewhere to go.
template <class Body>
CheckReport scan_check(const std::string& name, std::size_t count, const ScanOptions& opts, Body&& body,
                       bool even_section = false)
{
    CheckReport seed(name);
    auto partials = parallel_partials(count, opts.workers, seed, std::forward<Body>(body));
    CheckReport out(name);
    if (even_section && opts.even_prime_section) {
        out.even_prime.emplace();
    }
    for (auto& p : partials) {
        out.merge(std::move(p));
    }
    out.finalize();
    return out;
}

/// Where results for one prime go: the main report for odd p, the
/// informational section for p = 2.
class PrimeSink {
public:
    PrimeSink(CheckReport& report, unsigned long p) : report_(report), even_(p == 2)
    {
        if (even_ && !report_.even_prime) {
            report_.even_prime.emplace();
        }
    }

    void tested(std::size_t count = 1)
    {
        if (even_) {
            report_.even_prime->tested_count += count;
        } else {
            report_.tested_count += count;
        }
    }

    void fail(Witness w)
    {
        if (even_) {
            report_.even_prime->witnesses.push_back(std::move(w));
        } else {
            report_.fail(std::move(w));
        }
    }

    void skip(const std::string& reason)
    {
        if (!even_) {
            report_.skip(reason);
        }
    }

private:
    CheckReport& report_;
    bool even_;
};

}  // namespace lteseq::detail
