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

#ifndef PAIRGRAPH_CONSTRUCTORS_H
#define PAIRGRAPH_CONSTRUCTORS_H

#include <string>

#include "pairgraph/analysis.h"
#include "pairgraph/graph.h"
#include "pairgraph/state.h"

namespace pairgraph {

/// GHZ graphs.
///
/// d = 2: an n-cycle whose edges alternate between an all-0 and an all-1
/// perfect matching, so the graph has exactly two perfect matchings. For
/// n = 4 the edge list is ab, cd (mode 0) then ac, bd (mode 1).
/// d = 3, n = 4: K4 with its three perfect matchings colored 0, 1 and 2.
///
/// Throws Unrealizable for d >= 4, or d = 3 with n != 4: no other graph has
/// all of its perfect matchings mutually disjoint. Throws
/// std::invalid_argument for odd n, n < 4 or d < 2.
ExperimentGraph ghz_graph(size_t n, size_t d);

/// W-state graph on n vertices (even n >= 4): a book of n/2 - 1 K4 pages
/// glued along the base edge ab. Every edge at the hub a is doubled into a
/// half-red pair: weight alpha = 1 where a carries the excitation, beta =
/// n - 1 where the far end does. All other edges are black with weight 1.
ExperimentGraph w_graph(size_t n);

/// Same topology as w_graph with all weights 1. The hub term then has
/// coefficient n - 1 and every other term 1.
ExperimentGraph w_graph_unweighted(size_t n);

/// K_n with a (0,1)/(1,0) double edge on every vertex pair, unit weights.
/// Simulates to the Dicke state with n/2 excitations. Needs even n >= 2.
ExperimentGraph symmetric_dicke_graph(size_t n);

/// Black K_{n-m} on the first n - m vertices, red K_m on the last m, and a
/// (0,1)/(1,0) double edge across every black/red pair. Unit weights; every
/// term has exactly m excitations but amplitudes differ (see
/// dicke_weight_classes and solve_weights).
ExperimentGraph general_dicke_graph(size_t n, size_t m);

/// Four-vertex witness (a, b, c, trigger t) for a maximally entangled
/// SRV(A,B,C) state with A terms. Throws Infeasible when srv_feasibility
/// rejects the cell.
ExperimentGraph srv_graph(size_t a, size_t b, size_t c);

/// Four-vertex graph (a, b, c, trigger t) for AME(3,2). Throws Unrealizable
/// for d >= 3 and std::invalid_argument for parties != 3 or d < 2.
ExperimentGraph ame_graph(size_t parties, size_t d);

struct SynthesisReport {
    size_t matching_count = 0;
    size_t term_count = 0;
    size_t max_disjoint = 0;
    /// Largest |difference| against the reference, or the amplitude spread
    /// for SRV targets.
    double deviation = 0;
    /// What was verified, e.g. "equals GHZ{4,2}".
    std::string check;
};

struct Synthesis {
    ExperimentGraph graph;
    /// Normalized simulated state over every vertex (trigger included).
    QuantumState state;
    SynthesisReport report;
};

/// Builds the graph for `spec`, simulates it and verifies the result.
/// Unrealizable / Infeasible pass through; a failed self-check throws
/// VerificationFailure.
Synthesis synthesize(const TargetSpec &spec);

/// Checks a graph against a target the same way synthesize does.
/// Returns an empty string on success, else the reason for failure.
std::string verify_target(const ExperimentGraph &graph, const TargetSpec &spec, SynthesisReport *report = nullptr);

/// Index of the trigger vertex in SRV and AME graphs.
constexpr size_t kTriggerVertex = 3;

}  // namespace pairgraph

#endif
