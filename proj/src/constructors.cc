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

#include "pairgraph/constructors.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>

#include "pairgraph/errors.h"

namespace pairgraph {

namespace {

void require_even(size_t n, size_t minimum, const char *what) {
    if (n < minimum || n % 2 != 0) {
        throw std::invalid_argument(
            std::string(what) + " needs an even number of photons >= " + std::to_string(minimum) + ", got " +
            std::to_string(n));
    }
}

ExperimentGraph build_default(size_t n, const std::vector<EdgeSpec> &edges) {
    return ExperimentGraph::build(default_labels(n), edges);
}

std::vector<std::string> trigger_labels() {
    return {"a", "b", "c", "t"};
}

}  // namespace

ExperimentGraph ghz_graph(size_t n, size_t d) {
    if (d < 2) {
        throw std::invalid_argument("GHZ graphs need local dimension d >= 2");
    }
    require_even(n, 4, "GHZ graph");
    if (d >= 4 || (d == 3 && n != 4)) {
        throw Unrealizable(
            "GHZ{" + std::to_string(n) + "," + std::to_string(d) +
            "} cannot be built from pair sources: it needs " + std::to_string(d) +
            " mutually disjoint perfect matchings, and GHZ{4,3} on K4 is the only high-dimensional GHZ "
            "state whose graph has that property");
    }
    std::vector<EdgeSpec> edges;
    if (d == 3) {
        edges = {
            {0, 1, 0, 0}, {2, 3, 0, 0}, {0, 2, 1, 1}, {1, 3, 1, 1}, {0, 3, 2, 2}, {1, 2, 2, 2},
        };
        return build_default(n, edges);
    }
    for (size_t k = 0; k + 1 < n; k += 2) {
        edges.push_back({k, k + 1, 0, 0});
    }
    // Mode-1 edges close the alternating Hamiltonian cycle 0-1-3-2-5-4-...
    edges.push_back({0, n - 2, 1, 1});
    edges.push_back({1, 3, 1, 1});
    for (size_t k = 2; k + 3 < n; k += 2) {
        edges.push_back({k, k + 3, 1, 1});
    }
    return build_default(n, edges);
}

namespace {

std::vector<EdgeSpec> book_edges(size_t n, double alpha, double beta) {
    constexpr size_t hub = 0;
    constexpr size_t base = 1;
    std::vector<EdgeSpec> edges;
    auto hub_pair = [&](size_t x) {
        edges.push_back({hub, x, 1, 0, alpha});
        edges.push_back({hub, x, 0, 1, beta});
    };
    hub_pair(base);
    for (size_t x = 2; x + 1 < n; x += 2) {
        size_t y = x + 1;
        hub_pair(x);
        hub_pair(y);
        edges.push_back({base, x, 0, 0});
        edges.push_back({base, y, 0, 0});
        edges.push_back({x, y, 0, 0});
    }
    return edges;
}

}  // namespace

ExperimentGraph w_graph(size_t n) {
    require_even(n, 4, "W graph");
    auto w = w_weight_closed_form(n);
    return build_default(n, book_edges(n, w.alpha, w.beta));
}

ExperimentGraph w_graph_unweighted(size_t n) {
    require_even(n, 4, "W graph");
    return build_default(n, book_edges(n, 1.0, 1.0));
}

ExperimentGraph symmetric_dicke_graph(size_t n) {
    require_even(n, 2, "symmetric Dicke graph");
    std::vector<EdgeSpec> edges;
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            edges.push_back({i, j, 0, 1});
            edges.push_back({i, j, 1, 0});
        }
    }
    return build_default(n, edges);
}

ExperimentGraph general_dicke_graph(size_t n, size_t m) {
    require_even(n, 2, "Dicke graph");
    if (m == 0 || m >= n) {
        throw std::invalid_argument("Dicke graph needs 0 < m < n");
    }
    size_t first_red = n - m;
    std::vector<EdgeSpec> edges;
    for (size_t i = 0; i < first_red; i++) {
        for (size_t j = i + 1; j < first_red; j++) {
            edges.push_back({i, j, 0, 0});
        }
    }
    for (size_t i = first_red; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            edges.push_back({i, j, 1, 1});
        }
    }
    for (size_t x = 0; x < first_red; x++) {
        for (size_t r = first_red; r < n; r++) {
            edges.push_back({x, r, 0, 1});
            edges.push_back({x, r, 1, 0});
        }
    }
    return build_default(n, edges);
}

namespace {

// Mode layout of an SRV witness. Term 0 pairs the trigger edge t-a with one
// b-c edge. The terms hosted by t-b share b-mode 0 and take c-modes
// `c_via_b`; the terms hosted by t-c share c-mode 0 and take b-modes
// `b_via_c`. Particle a takes a fresh mode in every term.
struct SrvLayout {
    uint32_t b0 = 0;
    uint32_t c0 = 0;
    std::vector<uint32_t> c_via_b;
    std::vector<uint32_t> b_via_c;
};

// Up to relabeling, a mode set is described by whether it contains modes 0
// and 1 (the only values b0 / c0 need) plus fresh modes 2, 3, ...
std::vector<std::vector<uint32_t>> canonical_mode_sets(size_t size, size_t dimension) {
    std::vector<std::vector<uint32_t>> out;
    for (int with0 = 1; with0 >= 0; with0--) {
        for (int with1 = 1; with1 >= 0; with1--) {
            std::vector<uint32_t> set;
            if (with0) {
                set.push_back(0);
            }
            if (with1) {
                set.push_back(1);
            }
            if (set.size() > size) {
                continue;
            }
            uint32_t fresh = 2;
            while (set.size() < size) {
                set.push_back(fresh++);
            }
            if (std::all_of(set.begin(), set.end(), [&](uint32_t v) {
                    return v < dimension;
                })) {
                out.push_back(std::move(set));
            }
        }
    }
    return out;
}

bool layout_fits(const SrvLayout &layout, size_t a, size_t b, size_t c) {
    std::set<std::pair<uint32_t, uint32_t>> pairs;
    pairs.emplace(layout.b0, layout.c0);
    for (uint32_t cm : layout.c_via_b) {
        pairs.emplace(0, cm);
    }
    for (uint32_t bm : layout.b_via_c) {
        pairs.emplace(bm, 0);
    }
    // Repeated (b, c) pairs would factor particle a out of those terms.
    if (pairs.size() != a) {
        return false;
    }
    std::set<uint32_t> bs;
    std::set<uint32_t> cs;
    for (const auto &[bm, cm] : pairs) {
        bs.insert(bm);
        cs.insert(cm);
    }
    return bs.size() == b && cs.size() == c;
}

std::vector<SrvLayout> srv_layouts(size_t a, size_t b, size_t c) {
    std::vector<SrvLayout> out;
    for (size_t via_b = std::min(a - 1, c); via_b + 1 > 0; via_b--) {
        size_t via_c = a - 1 - via_b;
        for (uint32_t b0 = 0; b0 < std::min<size_t>(b, 2); b0++) {
            for (uint32_t c0 = 0; c0 < std::min<size_t>(c, 2); c0++) {
                for (const auto &cset : canonical_mode_sets(via_b, c)) {
                    for (const auto &bset : canonical_mode_sets(via_c, b)) {
                        SrvLayout layout{b0, c0, cset, bset};
                        if (layout_fits(layout, a, b, c)) {
                            out.push_back(std::move(layout));
                        }
                    }
                }
            }
        }
        if (via_b == 0) {
            break;
        }
    }
    return out;
}

ExperimentGraph srv_layout_graph(const SrvLayout &layout) {
    constexpr size_t va = 0, vb = 1, vc = 2, vt = kTriggerVertex;
    std::vector<EdgeSpec> edges;
    uint32_t next_a = 0;
    edges.push_back({va, vt, next_a++, 0});
    edges.push_back({vb, vc, layout.b0, layout.c0});
    if (!layout.c_via_b.empty()) {
        edges.push_back({vb, vt, 0, 0});
        for (uint32_t cm : layout.c_via_b) {
            edges.push_back({va, vc, next_a++, cm});
        }
    }
    if (!layout.b_via_c.empty()) {
        edges.push_back({vc, vt, 0, 0});
        for (uint32_t bm : layout.b_via_c) {
            edges.push_back({va, vb, next_a++, bm});
        }
    }
    return ExperimentGraph::build(trigger_labels(), edges);
}

std::string check_srv(const ExperimentGraph &g, size_t a, size_t b, size_t c, SynthesisReport *report) {
    if (g.vertex_count() != 4) {
        return "SRV witness must have 4 vertices";
    }
    auto matchings = enumerate_perfect_matchings(g);
    auto raw = state_from_graph(g);
    if (report != nullptr) {
        report->matching_count = matchings.size();
        report->term_count = raw.term_count();
    }
    if (matchings.size() != a) {
        return "expected " + std::to_string(a) + " perfect matchings, found " + std::to_string(matchings.size());
    }
    if (raw.empty()) {
        return "graph produces no terms";
    }
    if (raw.modes_of(kTriggerVertex).size() != 1) {
        return "trigger mode is not constant";
    }
    auto state = normalize(strip_trigger(raw, kTriggerVertex));
    if (state.term_count() != a) {
        return "expected " + std::to_string(a) + " terms, found " + std::to_string(state.term_count());
    }
    if (!is_maximally_entangled(state)) {
        return "state is not maximally entangled";
    }
    auto srv = schmidt_rank_vector(state);
    SRVector want{{a, b, c}};
    if (!(srv == want)) {
        return "Schmidt-rank vector is " + to_string(srv) + ", expected " + to_string(want);
    }
    if (report != nullptr) {
        double lo = 1, hi = 0;
        for (const auto &[t, amp] : state.amplitudes()) {
            lo = std::min(lo, std::abs(amp));
            hi = std::max(hi, std::abs(amp));
        }
        report->deviation = hi - lo;
        report->check = "SRV " + to_string(srv) + " with " + std::to_string(a) + " equal-magnitude terms";
    }
    return "";
}

}  // namespace

ExperimentGraph srv_graph(size_t a, size_t b, size_t c) {
    auto verdict = srv_feasibility(a, b, c);
    if (verdict.kind != FeasibilityKind::Feasible) {
        throw Infeasible("SRV(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ") " + describe(verdict));
    }
    // Every layout keeps the three K4 matching classes apart, so parallel
    // edges cannot combine into unintended matchings; re-simulation confirms
    // it before a layout is accepted.
    for (const auto &layout : srv_layouts(a, b, c)) {
        auto g = srv_layout_graph(layout);
        if (check_srv(g, a, b, c, nullptr).empty()) {
            return g;
        }
    }
    throw VerificationFailure(
        "no verified SRV witness for feasible cell (" + std::to_string(a) + "," + std::to_string(b) + "," +
        std::to_string(c) + ")");
}

ExperimentGraph ame_graph(size_t parties, size_t d) {
    if (parties != 3) {
        throw std::invalid_argument("only 3-party AME states are supported");
    }
    if (d < 2) {
        throw std::invalid_argument("AME states need local dimension d >= 2");
    }
    if (d >= 3) {
        throw Unrealizable(
            "AME(3," + std::to_string(d) +
            ") would need more than three disjoint perfect matchings on four vertices; such a graph does not exist");
    }
    constexpr size_t va = 0, vb = 1, vc = 2, vt = kTriggerVertex;
    // (|01> + |10>)_ab |10>_ct + |0000> + |1100>
    std::vector<EdgeSpec> edges = {
        {va, vb, 0, 1},
        {va, vb, 1, 0},
        {vc, vt, 1, 0},
        {va, vt, 0, 0},
        {vb, vc, 0, 0},
        {vb, vt, 1, 0},
        {va, vc, 1, 0},
    };
    return ExperimentGraph::build(trigger_labels(), edges);
}

namespace {

double max_difference(const QuantumState &a, const QuantumState &b) {
    // Same phase alignment as states_equal.
    const Term *anchor = nullptr;
    double best = -1;
    for (const auto &[term, amp] : a.amplitudes()) {
        if (std::abs(amp) > best) {
            best = std::abs(amp);
            anchor = &term;
        }
    }
    if (anchor == nullptr) {
        return b.empty() ? 0.0 : 1.0;
    }
    Amplitude ta = a.amplitude(*anchor);
    Amplitude tb = b.amplitude(*anchor);
    if (std::abs(tb) < kPruneThreshold) {
        return 1.0;
    }
    Amplitude phase = (tb / std::abs(tb)) / (ta / std::abs(ta));
    double worst = 0;
    for (const auto &[term, amp] : a.amplitudes()) {
        worst = std::max(worst, std::abs(amp * phase - b.amplitude(term)));
    }
    for (const auto &[term, amp] : b.amplitudes()) {
        worst = std::max(worst, std::abs(a.amplitude(term) * phase - amp));
    }
    return worst;
}

std::string check_reference(
    const ExperimentGraph &g, const QuantumState &reference, std::optional<size_t> trigger, SynthesisReport *report) {
    if (g.vertex_count() % 2 != 0) {
        return "graph has an odd number of vertices";
    }
    auto raw = state_from_graph(g);
    if (report != nullptr) {
        report->matching_count = count_perfect_matchings(g);
        report->term_count = raw.term_count();
    }
    if (raw.empty()) {
        return "graph has no perfect matchings";
    }
    auto state = normalize(raw);
    if (trigger) {
        if (*trigger >= state.party_count()) {
            return "graph has no trigger vertex";
        }
        if (state.modes_of(*trigger).size() != 1) {
            return "trigger mode is not constant";
        }
        state = strip_trigger(state, *trigger);
    }
    if (state.party_count() != reference.party_count()) {
        return "graph has " + std::to_string(state.party_count()) + " parties, target has " +
               std::to_string(reference.party_count());
    }
    double diff = max_difference(state, reference);
    if (report != nullptr) {
        report->deviation = diff;
    }
    if (!states_equal(state, reference)) {
        return "simulated state differs from the reference (max deviation " + std::to_string(diff) + ")";
    }
    return "";
}

const char *dicke_pin(const std::vector<WeightClass> &classes) {
    for (const char *id : {"delta", "gamma", "alpha"}) {
        if (std::any_of(classes.begin(), classes.end(), [&](const WeightClass &c) {
                return c.id == id;
            })) {
            return id;
        }
    }
    return "beta";
}

struct GraphBuilder {
    ExperimentGraph operator()(const GhzTarget &t) const {
        return ghz_graph(t.n, t.d);
    }
    ExperimentGraph operator()(const WTarget &t) const {
        return w_graph(t.n);
    }
    ExperimentGraph operator()(const DickeTarget &t) const {
        if (2 * t.m == t.n) {
            return symmetric_dicke_graph(t.n);
        }
        auto g = general_dicke_graph(t.n, t.m);
        auto classes = dicke_weight_classes(g, t.m);
        auto solution = solve_weights(g, classes, {{dicke_pin(classes), 1.0}});
        return apply_weights(g, classes, solution.weights);
    }
    ExperimentGraph operator()(const SrvTarget &t) const {
        return srv_graph(t.a, t.b, t.c);
    }
    ExperimentGraph operator()(const AmeTarget &t) const {
        return ame_graph(t.parties, t.d);
    }
};

}  // namespace

std::string verify_target(const ExperimentGraph &graph, const TargetSpec &spec, SynthesisReport *report) {
    if (const auto *srv = std::get_if<SrvTarget>(&spec)) {
        if (srv->c < 1 || srv->b < srv->c || srv->a < srv->b) {
            return "SRV entries must satisfy A >= B >= C >= 1";
        }
        return check_srv(graph, srv->a, srv->b, srv->c, report);
    }
    std::optional<size_t> trigger;
    if (std::holds_alternative<AmeTarget>(spec)) {
        trigger = kTriggerVertex;
    }
    auto reference = reference_state(spec);
    std::string reason = check_reference(graph, reference, trigger, report);
    if (reason.empty() && report != nullptr) {
        report->check = "equals " + to_string(spec);
    }
    return reason;
}

Synthesis synthesize(const TargetSpec &spec) {
    ExperimentGraph graph = std::visit(GraphBuilder{}, spec);
    SynthesisReport report;
    std::string reason = verify_target(graph, spec, &report);
    if (!reason.empty()) {
        throw VerificationFailure("synthesized graph for " + to_string(spec) + " failed verification: " + reason);
    }
    auto matchings = enumerate_perfect_matchings(graph);
    report.matching_count = matchings.size();
    report.max_disjoint = max_disjoint_perfect_matchings(graph, matchings).count;
    auto state = normalize(state_from_graph(graph));
    return Synthesis{std::move(graph), std::move(state), std::move(report)};
}

}  // namespace pairgraph
