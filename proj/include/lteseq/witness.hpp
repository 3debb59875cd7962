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

#include "lteseq/report.hpp"
#include "lteseq/sequence.hpp"

#include <string>

namespace lteseq {

struct WitnessVerdict {
    bool reproduced = false;
    std::string detail;
};

/// Recomputes a witness from the sequence alone. It is reproduced only when
/// the field set is exactly the one its check emits, every recorded value
/// matches a fresh computation, the statement's hypotheses hold, and the
/// violation is present. Never throws for malformed witnesses; those are
/// simply not reproduced.
WitnessVerdict verify_witness(const SequenceSpec& spec, const Witness& w, const TermLimits& limits = {});

}  // namespace lteseq
