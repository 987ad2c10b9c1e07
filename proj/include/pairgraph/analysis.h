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

#ifndef PAIRGRAPH_ANALYSIS_H
#define PAIRGRAPH_ANALYSIS_H

#include <map>
#include <span>
#include <string>
#include <vector>

#include "pairgraph/graph.h"
#include "pairgraph/state.h"

namespace pairgraph {

// ---------------------------------------------------------------------------
// Which SRV(A,B,C) states can four-vertex pair-source graphs produce?
// ---------------------------------------------------------------------------

enum class FeasibilityKind {
    /// A graph with exactly A perfect matchings realizes the state.
    Feasible,
    /// The state exists but would need more than three disjoint perfect
    /// matchings on four vertices.
    InfeasiblePairSources,
    /// No 3-party state has this rank vector with A terms (A > B*C).
    NonexistentState,
};

std::string to_string(FeasibilityKind kind);

/// Outcome of the SRV test with the numbers behind it.
///
/// For Feasible / InfeasiblePairSources, `lhs` is the number of terms the
/// three K4 matching classes can host, 1 + via_b + via_c, and `rhs` is A.
/// For NonexistentState, `lhs` is A and `rhs` is B*C.
struct FeasibilityVerdict {
    FeasibilityKind kind = FeasibilityKind::Feasible;
    size_t a = 0;
    size_t b = 0;
    size_t c = 0;
    /// min(1 + (A - B), C): terms sharing the trigger edge to b.
    size_t via_b = 0;
    /// min(1 + (A - C), B - 1): terms sharing the trigger edge to c.
    size_t via_c = 0;
    size_t lhs = 0;
    size_t rhs = 0;
};

/// Requires A >= B >= C >= 1 (std::invalid_argument otherwise).
FeasibilityVerdict srv_feasibility(size_t a, size_t b, size_t c);

/// One-line rendering, e.g. "infeasible-pair-sources: 1 + min(4, 2) + min(5, 2) = 5 < 6".
std::string describe(const FeasibilityVerdict &verdict);

/// All cells A >= B >= C >= 1 with A <= max_a, ordered by A, then B, then C.
std::vector<FeasibilityVerdict> srv_table(size_t max_a);

// ---------------------------------------------------------------------------
// Weight solving.
// ---------------------------------------------------------------------------

using TermGroups = std::map<Term, std::vector<PerfectMatching>>;

/// Perfect matchings keyed by the term they produce.
/// Throws std::invalid_argument for an odd vertex count.
TermGroups group_matchings_by_term(const ExperimentGraph &graph);

/// Edges forced to share one weight value.
struct WeightClass {
    std::string id;
    std::vector<EdgeId> members;
};

/// Classes for a W-state graph with excitation hub `hub`:
///   alpha: the half-red edges whose red end is the hub,
///   beta:  the half-red edges whose red end is away from the hub,
///   gamma: every other edge.
/// Empty classes are omitted.
std::vector<WeightClass> w_weight_classes(const ExperimentGraph &graph, size_t hub);

/// Classes for a general Dicke graph whose last `m` vertices form the red
/// block:
///   delta: black-black edges,  gamma: red-red edges,
///   alpha: half-red edges whose red end lies in the red block,
///   beta:  half-red edges whose red end lies in the black block.
/// Empty classes are omitted.
std::vector<WeightClass> dicke_weight_classes(const ExperimentGraph &graph, size_t m);

/// c * prod_j w_j^exponents[j], over the classes in order.
struct Monomial {
    std::vector<unsigned> exponents;
    double coefficient = 0;
};
using Polynomial = std::vector<Monomial>;

/// Coefficient of every term as a polynomial in the class weights, built
/// from the matchings of each term. Monomials with equal exponents are
/// merged; order follows first appearance.
std::map<Term, Polynomial> term_polynomials(const ExperimentGraph &graph, std::span<const WeightClass> classes);

double evaluate(const Polynomial &poly, std::span<const double> weights);

struct WeightSolution {
    enum class Method { ClosedForm, Numeric };

    std::map<std::string, double> weights;
    Method method = Method::Numeric;
    /// Largest spread of normalized amplitude magnitudes after re-simulation.
    double spread = 0;
    size_t restarts = 0;
};

/// Real weights per class that make every term coefficient equal, so the
/// re-simulated state is maximally entangled.
///
/// When every term coefficient is a single monomial the system is a set of
/// ratios and is solved in closed form (log-linear least squares). Otherwise
/// a damped Gauss-Newton (Levenberg-Marquardt) iteration starts from all-ones
/// and then from seeded random points, up to 100 restarts. Weights are
/// real and non-zero; signs are free. The result is always re-simulated.
///
/// Throws std::invalid_argument if classes do not partition the edges or no
/// class is pinned, and Infeasible when no verified solution is found.
WeightSolution solve_weights(
    const ExperimentGraph &graph,
    std::span<const WeightClass> classes,
    const std::map<std::string, double> &pinned);

/// Graph with every edge weight set from its class.
ExperimentGraph apply_weights(
    const ExperimentGraph &graph,
    std::span<const WeightClass> classes,
    const std::map<std::string, double> &weights);

struct WWeights {
    double alpha = 1;
    double beta = 1;
    double gamma = 1;
};

/// alpha = 1, beta = n - 1, gamma = 1. Requires even n >= 4.
WWeights w_weight_closed_form(size_t n);

}  // namespace pairgraph

#endif
