// Copyright 2026 The pairgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PAIRGRAPH_ERRORS_H
#define PAIRGRAPH_ERRORS_H

#include <stdexcept>
#include <string>

namespace pairgraph {

/// No pair-source graph can produce the requested state.
///
/// Raised by constructors for targets that are known to be impossible with
/// probabilistic pair sources and no ancillary photons (for example a
/// GHZ state with local dimension 4, or the 3-party AME state in d = 3).
struct Unrealizable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A request was well-formed but has no solution (SRV cell outside the
/// producible region, weight system without a real root, ...).
struct Infeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An internal self-check failed. Always a defect, never a user error.
struct VerificationFailure : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace pairgraph

#endif
