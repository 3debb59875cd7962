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

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace lteseq {

struct ScanOptions {
    /// Worker threads for fan-out scans. Output never depends on this.
    unsigned workers = 1;
    /// Compute p = 2 results into the informational section.
    bool even_prime_section = true;
};

/// Runs `body(i, partial)` for i in [0, count) on up to `workers` threads,
/// giving each worker its own `Partial`, and returns the partials in worker
/// order. Items are dealt round-robin so uneven item costs spread out.
template <class Partial, class Body>
std::vector<Partial> parallel_partials(std::size_t count, unsigned workers, const Partial& seed, Body&& body)
{
    const std::size_t nthreads = std::max<std::size_t>(1, std::min<std::size_t>(workers, count));
    std::vector<Partial> partials(nthreads, seed);
    if (nthreads == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i, partials[0]);
        }
        return partials;
    }
    std::vector<std::exception_ptr> errors(nthreads);
    std::vector<std::thread> threads;
    threads.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        threads.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < count; i += nthreads) {
                    body(i, partials[t]);
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : threads) {
        th.join();
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return partials;
}

}  // namespace lteseq
