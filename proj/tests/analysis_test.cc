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


#include "pairgraph/analysis.h"

#include <cmath>
#include <gtest/gtest.h>
#include <numeric>
#include <random>
#include <stdexcept>

#include "pairgraph/constructors.h"
#include "pairgraph/errors.h"

using namespace pairgraph;

namespace {

bool inequality_holds(size_t a, size_t b, size_t c) {
    long A = a, B = b, C = c;
    return 1 + std::min(1 + A - B, C) + std::min(1 + A - C, B - 1) >= A;
}

QuantumState dense_random_state(std::mt19937_64 &rng, size_t da, size_t db, size_t dc) {
    std::normal_distribution<double> gauss;
    QuantumState s(3);
    for (uint32_t i = 0; i < da; i++) {
        for (uint32_t j = 0; j < db; j++) {
            for (uint32_t k = 0; k < dc; k++) {
                s.add({ModeColor{i}, ModeColor{j}, ModeColor{k}}, {gauss(rng), gauss(rng)});
            }
        }
    }
    return normalize(s);
}

size_t class_size(const std::vector<WeightClass> &classes, const std::string &id) {
    for (const auto &c : classes) {
        if (c.id == id) {
            return c.members.size();
        }
    }
    return 0;
}

}  // namespace

TEST(SrvFeasibility, Examples) {
    ASSERT_EQ(srv_feasibility(6, 3, 3).kind, FeasibilityKind::Feasible);
    ASSERT_EQ(srv_feasibility(4, 2, 2).kind, FeasibilityKind::Feasible);
    ASSERT_EQ(srv_feasibility(1, 1, 1).kind, FeasibilityKind::Feasible);
    ASSERT_EQ(srv_feasibility(6, 3, 2).kind, FeasibilityKind::InfeasiblePairSources);
    ASSERT_EQ(srv_feasibility(7, 3, 2).kind, FeasibilityKind::NonexistentState);
    ASSERT_THROW(srv_feasibility(2, 3, 1), std::invalid_argument);
    ASSERT_THROW(srv_feasibility(3, 2, 0), std::invalid_argument);
}

TEST(SrvFeasibility, Detail) {
    auto v = srv_feasibility(6, 3, 2);
    ASSERT_EQ(v.via_b, 2);
    ASSERT_EQ(v.via_c, 2);
    ASSERT_EQ(v.lhs, 5);
    ASSERT_EQ(v.rhs, 6);
    ASSERT_EQ(describe(v), "infeasible-pair-sources: 1 + min(4, 2) + min(5, 2) = 5 < 6");
    ASSERT_EQ(describe(srv_feasibility(7, 3, 2)), "nonexistent-state: A = 7 > B*C = 6");
    ASSERT_EQ(describe(srv_feasibility(6, 3, 3)), "feasible: 1 + min(4, 3) + min(4, 2) = 6 >= 6");
    ASSERT_EQ(to_string(FeasibilityKind::Feasible), "feasible");
}

TEST(SrvFeasibility, AgreesWithInequalityOracle) {
    for (const auto &cell : srv_table(20)) {
        if (cell.a > cell.b * cell.c) {
            ASSERT_EQ(cell.kind, FeasibilityKind::NonexistentState);
        } else if (inequality_holds(cell.a, cell.b, cell.c)) {
            ASSERT_EQ(cell.kind, FeasibilityKind::Feasible);
        } else {
            ASSERT_EQ(cell.kind, FeasibilityKind::InfeasiblePairSources);
        }
    }
}

TEST(SrvFeasibility, RankBoundMatchesRandomStates) {
    // Generic states with full support on A x B x C have SRV (A, B, C)
    // whenever A <= B*C, and no state ever violates the bound.
    std::mt19937_64 rng(8);
    for (size_t a = 1; a <= 5; a++) {
        for (size_t b = 1; b <= a; b++) {
            for (size_t c = 1; c <= b; c++) {
                auto srv = schmidt_rank_vector(dense_random_state(rng, a, b, c));
                ASSERT_LE(srv.ranks[0], srv.ranks[1] * srv.ranks[2]);
                if (a <= b * c) {
                    ASSERT_EQ(srv, (SRVector{{a, b, c}}));
                }
            }
        }
    }
}

TEST(SrvFeasibility, ShiftingAAndBTogetherKeepsFeasibility) {
    for (const auto &cell : srv_table(12)) {
        if (cell.kind != FeasibilityKind::Feasible || cell.b - 1 < cell.c || cell.c == 0 || cell.b < 2) {
            continue;
        }
        ASSERT_EQ(srv_feasibility(cell.a - 1, cell.b - 1, cell.c).kind, FeasibilityKind::Feasible);
    }
}

TEST(SrvFeasibility, LoweringAAloneCanBreakFeasibility) {
    ASSERT_EQ(srv_feasibility(5, 4, 4).kind, FeasibilityKind::Feasible);
    ASSERT_EQ(srv_feasibility(4, 4, 4).kind, FeasibilityKind::InfeasiblePairSources);
}

TEST(SrvTable, Contents) {
    auto table = srv_table(4);
    size_t expected = 0;
    for (size_t a = 1; a <= 4; a++) {
        expected += a * (a + 1) / 2;
    }
    ASSERT_EQ(table.size(), expected);
    for (size_t k = 1; k < table.size(); k++) {
        auto key = [](const FeasibilityVerdict &v) { return std::tuple(v.a, v.b, v.c); };
        ASSERT_LT(key(table[k - 1]), key(table[k]));
    }
    auto find = [&](size_t a, size_t b, size_t c) {
        for (const auto &v : table) {
            if (v.a == a && v.b == b && v.c == c) {
                return v.kind;
            }
        }
        throw std::logic_error("missing cell");
    };
    ASSERT_EQ(find(4, 2, 2), FeasibilityKind::Feasible);
    ASSERT_EQ(find(2, 2, 2), FeasibilityKind::Feasible);
    for (const auto &v : table) {
        if (v.c == 1 && v.a > v.b) {
            ASSERT_EQ(v.kind, FeasibilityKind::NonexistentState);
        }
    }
}

TEST(GroupMatchings, Examples) {
    auto s3a = group_matchings_by_term(general_dicke_graph(4, 1));
    ASSERT_EQ(s3a.size(), 4);
    ASSERT_EQ(s3a[term_from_string("0001")].size(), 3);
    ASSERT_EQ(s3a[term_from_string("0010")].size(), 1);
    ASSERT_EQ(s3a[term_from_string("0100")].size(), 1);
    ASSERT_EQ(s3a[term_from_string("1000")].size(), 1);

    auto square = group_matchings_by_term(ghz_graph(4, 2));
    ASSERT_EQ(square.size(), 2);
    for (const auto &[term, group] : square) {
        ASSERT_EQ(group.size(), 1);
    }

    std::vector<EdgeSpec> k4{{0, 1, 0, 0}, {0, 2, 0, 0}, {0, 3, 0, 0}, {1, 2, 0, 0}, {1, 3, 0, 0}, {2, 3, 0, 0}};
    auto black = group_matchings_by_term(ExperimentGraph::build(default_labels(4), k4));
    ASSERT_EQ(black.size(), 1);
    ASSERT_EQ(black.begin()->second.size(), 3);
}

TEST(GroupMatchings, SizesSumToMatchingCount) {
    for (const auto &g : {symmetric_dicke_graph(6), general_dicke_graph(6, 2), w_graph(8), srv_graph(6, 3, 3)}) {
        size_t total = 0;
        for (const auto &[term, group] : group_matchings_by_term(g)) {
            total += group.size();
        }
        ASSERT_EQ(total, count_perfect_matchings(g));
    }
}

TEST(WeightClasses, Partition) {
    auto g = w_graph_unweighted(4);
    auto w = w_weight_classes(g, 0);
    ASSERT_EQ(class_size(w, "alpha"), 3);
    ASSERT_EQ(class_size(w, "beta"), 3);
    ASSERT_EQ(class_size(w, "gamma"), 3);

    auto d = dicke_weight_classes(general_dicke_graph(6, 2), 2);
    ASSERT_EQ(class_size(d, "delta"), 6);
    ASSERT_EQ(class_size(d, "gamma"), 1);
    ASSERT_EQ(class_size(d, "alpha"), 8);
    ASSERT_EQ(class_size(d, "beta"), 8);

    auto one = dicke_weight_classes(general_dicke_graph(4, 1), 1);
    ASSERT_EQ(one.size(), 3);
    ASSERT_EQ(class_size(one, "gamma"), 0);
}

TEST(TermPolynomials, AgreeWithSimulation) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> weight(-2, 2);
    auto g = general_dicke_graph(6, 2);
    auto classes = dicke_weight_classes(g, 2);
    auto polys = term_polynomials(g, classes);
    for (int trial = 0; trial < 10; trial++) {
        std::vector<double> w;
        std::map<std::string, double> named;
        for (const auto &c : classes) {
            w.push_back(weight(rng));
            named[c.id] = w.back();
        }
        auto s = state_from_graph(apply_weights(g, classes, named));
        for (const auto &[term, poly] : polys) {
            ASSERT_NEAR(evaluate(poly, w), s.amplitude(term).real(), 1e-9);
        }
    }
}

TEST(TermPolynomials, HubGraphMonomials) {
    auto g = general_dicke_graph(4, 1);
    auto classes = dicke_weight_classes(g, 1);
    auto polys = term_polynomials(g, classes);
    // Classes are alpha, beta, delta.
    const auto &hub = polys[term_from_string("0001")];
    ASSERT_EQ(hub.size(), 1);
    ASSERT_EQ(hub[0].coefficient, 3);
    ASSERT_EQ(hub[0].exponents, (std::vector<unsigned>{1, 0, 1}));
    const auto &other = polys[term_from_string("0010")];
    ASSERT_EQ(other.size(), 1);
    ASSERT_EQ(other[0].exponents, (std::vector<unsigned>{0, 1, 1}));
}

TEST(SolveWeights, WBookFour) {
    auto g = w_graph_unweighted(4);
    auto classes = w_weight_classes(g, 0);
    auto sol = solve_weights(g, classes, {{"alpha", 1.0}, {"gamma", 1.0}});
    ASSERT_EQ(sol.method, WeightSolution::Method::ClosedForm);
    ASSERT_NEAR(sol.weights.at("beta"), 3, 1e-9);
    ASSERT_NEAR(sol.weights.at("alpha"), 1, 1e-15);
    ASSERT_LT(sol.spread, 1e-9);
}

TEST(SolveWeights, WBookFamilyMatchesClosedForm) {
    for (size_t n = 4; n <= 10; n += 2) {
        auto g = w_graph_unweighted(n);
        auto classes = w_weight_classes(g, 0);
        auto sol = solve_weights(g, classes, {{"alpha", 1.0}, {"gamma", 1.0}});
        auto closed = w_weight_closed_form(n);
        ASSERT_NEAR(sol.weights.at("beta"), closed.beta, 1e-9) << n;
        ASSERT_NEAR(closed.beta, n - 1.0, 0);
        auto s = normalize(state_from_graph(apply_weights(g, classes, sol.weights)));
        ASSERT_TRUE(states_equal(s, reference_state(WTarget{n})));
    }
    ASSERT_THROW(w_weight_closed_form(5), std::invalid_argument);
}

TEST(SolveWeights, GeneralDickeSixTwo) {
    auto g = general_dicke_graph(6, 2);
    auto classes = dicke_weight_classes(g, 2);
    auto sol = solve_weights(g, classes, {{"delta", 1.0}});
    ASSERT_EQ(sol.method, WeightSolution::Method::Numeric);
    ASSERT_LT(sol.spread, 1e-9);
    auto weighted = apply_weights(g, classes, sol.weights);
    auto s = normalize(state_from_graph(weighted));
    ASSERT_EQ(s.term_count(), 15);
    ASSERT_TRUE(is_maximally_entangled(s));
    ASSERT_TRUE(states_equal(s, reference_state(DickeTarget{6, 2}), 1e-8));
    for (const auto &[id, w] : sol.weights) {
        ASSERT_NE(w, 0) << id;
    }
}

TEST(SolveWeights, CommonScaleKeepsMaximalEntanglement) {
    auto g = general_dicke_graph(6, 2);
    auto classes = dicke_weight_classes(g, 2);
    auto sol = solve_weights(g, classes, {{"delta", 1.0}});
    auto scaled = sol.weights;
    for (auto &[id, w] : scaled) {
        w *= 2.7;
    }
    ASSERT_TRUE(is_maximally_entangled(normalize(state_from_graph(apply_weights(g, classes, scaled)))));
}

TEST(SolveWeights, Errors) {
    auto g = w_graph_unweighted(4);
    auto classes = w_weight_classes(g, 0);
    ASSERT_THROW(solve_weights(g, classes, {}), std::invalid_argument);
    std::vector<WeightClass> partial(classes.begin(), classes.begin() + 1);
    ASSERT_THROW(solve_weights(g, partial, {{"alpha", 1.0}}), std::invalid_argument);
    // Two terms with coefficients w and 0 can never be balanced: a graph whose
    // second term needs a missing edge.
    std::vector<EdgeSpec> specs{{0, 1, 0, 0}, {0, 1, 1, 1}, {0, 1, 1, 1}};
    auto lopsided = ExperimentGraph::build({"a", "b"}, specs);
    std::vector<WeightClass> one{{"w", {EdgeId{0}, EdgeId{1}, EdgeId{2}}}};
    ASSERT_THROW(solve_weights(lopsided, one, {{"w", 1.0}}), Infeasible);
}
