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

#ifndef PAIRGRAPH_STATE_H
#define PAIRGRAPH_STATE_H

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pairgraph/graph.h"

namespace pairgraph {

/// Default tolerance for amplitude comparisons and normalization checks.
constexpr double kTolerance = 1e-9;
/// Amplitudes with smaller magnitude are not stored.
constexpr double kPruneThreshold = 1e-12;

/// One basis ket. Entry i is the mode of the photon in vertex (party) i.
using Term = std::vector<ModeColor>;

/// "0110" style rendering; modes above 9 switch to a comma-separated list.
std::string term_to_string(const Term &term);
/// Inverse of term_to_string. Throws std::invalid_argument on bad input.
Term term_from_string(std::string_view text);

/// Sparse pure state: a finite map from terms to amplitudes.
class QuantumState {
   public:
    explicit QuantumState(size_t party_count);

    /// Convenience for literals: {{"0000", 1.0}, {"1111", 1.0}}.
    static QuantumState from_terms(
        size_t party_count, std::initializer_list<std::pair<std::string_view, Amplitude>> terms);

    size_t party_count() const {
        return party_count_;
    }
    const std::map<Term, Amplitude> &amplitudes() const {
        return amplitudes_;
    }
    size_t term_count() const {
        return amplitudes_.size();
    }
    bool empty() const {
        return amplitudes_.empty();
    }
    /// Zero for absent terms.
    Amplitude amplitude(const Term &term) const;

    /// Adds `amp` to the amplitude of `term` (coherent addition). Entries
    /// that fall below kPruneThreshold are dropped.
    void add(const Term &term, Amplitude amp);

    double norm_squared() const;
    bool is_normalized(double tol = kTolerance) const;

    /// Distinct modes appearing at `party`, ascending.
    std::vector<ModeColor> modes_of(size_t party) const;

   private:
    size_t party_count_;
    std::map<Term, Amplitude> amplitudes_;
};

/// Post-selected state of a graph: one contribution per perfect matching,
/// equal to the product of its edge weights, on the term formed by the
/// colors the matching puts on each vertex. Unnormalized. A graph without
/// perfect matchings yields an empty state.
/// Throws std::invalid_argument for an odd vertex count.
QuantumState state_from_graph(const ExperimentGraph &graph);

/// Throws std::invalid_argument on an empty state.
QuantumState normalize(const QuantumState &state);

struct GhzTarget {
    size_t n = 0;
    size_t d = 0;
};
struct WTarget {
    size_t n = 0;
};
struct DickeTarget {
    size_t n = 0;
    size_t m = 0;
};
struct SrvTarget {
    size_t a = 0;
    size_t b = 0;
    size_t c = 0;
};
struct AmeTarget {
    size_t parties = 0;
    size_t d = 0;
};

/// A synthesis request.
using TargetSpec = std::variant<GhzTarget, WTarget, DickeTarget, SrvTarget, AmeTarget>;

std::string to_string(const TargetSpec &spec);

/// Canonical normalized state for GHZ, W, Dicke and AME(3,d) targets.
/// SRV targets have no unique reference and are rejected, as are
/// out-of-range parameters (std::invalid_argument).
QuantumState reference_state(const TargetSpec &spec);

/// Schmidt-rank vector: rank of each party's reduced density matrix,
/// sorted non-increasing.
struct SRVector {
    std::vector<size_t> ranks;

    friend bool operator==(const SRVector &, const SRVector &) = default;
};

std::string to_string(const SRVector &srv);

/// Throws std::invalid_argument if the state is not normalized or has fewer
/// than two parties.
SRVector schmidt_rank_vector(const QuantumState &state);

/// Rank of the reduced density matrix of a single party.
size_t reduced_rank(const QuantumState &state, size_t party);

/// True iff all stored amplitudes have the same magnitude within `tol`.
bool is_maximally_entangled(const QuantumState &state, double tol = kTolerance);

/// Removes a party whose mode is the same in every term.
/// Throws std::invalid_argument when that party's mode varies.
QuantumState strip_trigger(const QuantumState &state, size_t party);

/// Equality up to one global phase, aligned on the largest-magnitude term
/// of `a`.
bool states_equal(const QuantumState &a, const QuantumState &b, double tol = kTolerance);

struct StateClass {
    enum class Kind { Ghz, W, Dicke, Other };
    Kind kind = Kind::Other;
    size_t n = 0;
    /// Local dimension for GHZ, excitation count for Dicke; unused otherwise.
    size_t k = 0;

    friend bool operator==(const StateClass &, const StateClass &) = default;
};

std::string to_string(const StateClass &label);

/// Structural match against GHZ, then W/Dicke references, allowing a
/// bijective relabeling of modes at every party.
StateClass classify(const QuantumState &state, double tol = kTolerance);

}  // namespace pairgraph

#endif
