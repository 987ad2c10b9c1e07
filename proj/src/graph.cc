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

#include "pairgraph/graph.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace pairgraph {

ExperimentGraph ExperimentGraph::build(std::vector<std::string> vertex_labels, std::span<const EdgeSpec> edges) {
    if (vertex_labels.empty()) {
        throw std::invalid_argument("graph needs at least one vertex");
    }
    std::set<std::string> seen;
    for (const auto &label : vertex_labels) {
        if (!seen.insert(label).second) {
            throw std::invalid_argument("duplicate vertex label '" + label + "'");
        }
    }

    ExperimentGraph g;
    g.labels_ = std::move(vertex_labels);
    g.incidence_.resize(g.labels_.size());
    g.edges_.reserve(edges.size());
    for (const auto &spec : edges) {
        size_t k = g.edges_.size();
        if (spec.u >= g.labels_.size() || spec.v >= g.labels_.size()) {
            throw std::invalid_argument(
                "edge " + std::to_string(k) + " has an endpoint outside the " +
                std::to_string(g.labels_.size()) + " vertices");
        }
        if (spec.u == spec.v) {
            throw std::invalid_argument(
                "edge " + std::to_string(k) + " is a self-loop on vertex '" + g.labels_[spec.u] + "'");
        }
        if (!std::isfinite(spec.weight.real()) || !std::isfinite(spec.weight.imag())) {
            throw std::invalid_argument("edge " + std::to_string(k) + " has a non-finite weight");
        }
        Edge e;
        e.id = EdgeId(static_cast<uint32_t>(k));
        e.u = spec.u;
        e.v = spec.v;
        e.color_u = ModeColor(spec.color_u);
        e.color_v = ModeColor(spec.color_v);
        e.weight = spec.weight;
        g.incidence_[e.u].push_back(e.id);
        g.incidence_[e.v].push_back(e.id);
        g.edges_.push_back(e);
    }
    return g;
}

const Edge &ExperimentGraph::edge(EdgeId id) const {
    if (!has_edge(id)) {
        throw std::out_of_range("no edge with id " + std::to_string(id.value));
    }
    return edges_[id.value];
}

size_t ExperimentGraph::vertex_index(const std::string &label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw std::invalid_argument("unknown vertex label '" + label + "'");
    }
    return static_cast<size_t>(it - labels_.begin());
}

std::vector<EdgeSpec> ExperimentGraph::edge_specs() const {
    std::vector<EdgeSpec> specs;
    specs.reserve(edges_.size());
    for (const auto &e : edges_) {
        specs.push_back({e.u, e.v, e.color_u.value, e.color_v.value, e.weight});
    }
    return specs;
}

ExperimentGraph ExperimentGraph::with_weights(std::span<const Amplitude> weights) const {
    if (weights.size() != edges_.size()) {
        throw std::invalid_argument("weight list length does not match edge count");
    }
    auto specs = edge_specs();
    for (size_t k = 0; k < specs.size(); k++) {
        specs[k].weight = weights[k];
    }
    return build(labels_, specs);
}

ExperimentGraph ExperimentGraph::without_edge(EdgeId id) const {
    edge(id);
    auto specs = edge_specs();
    specs.erase(specs.begin() + id.value);
    return build(labels_, specs);
}

bool ExperimentGraph::operator==(const ExperimentGraph &other) const {
    if (labels_ != other.labels_ || edges_.size() != other.edges_.size()) {
        return false;
    }
    for (size_t k = 0; k < edges_.size(); k++) {
        const auto &a = edges_[k];
        const auto &b = other.edges_[k];
        if (a.u != b.u || a.v != b.v || a.color_u != b.color_u || a.color_v != b.color_v || a.weight != b.weight) {
            return false;
        }
    }
    return true;
}

std::vector<std::string> default_labels(size_t count) {
    std::vector<std::string> labels;
    labels.reserve(count);
    for (size_t k = 0; k < count; k++) {
        if (k < 26) {
            labels.emplace_back(1, static_cast<char>('a' + k));
        } else {
            labels.push_back("v" + std::to_string(k));
        }
    }
    return labels;
}

namespace {

// Branches on the lowest unmatched vertex over its incident edges.
template <typename Visit>
void walk_matchings(const ExperimentGraph &g, std::vector<char> &matched, std::vector<EdgeId> &stack, Visit &visit) {
    size_t n = g.vertex_count();
    size_t v = 0;
    while (v < n && matched[v]) {
        v++;
    }
    if (v == n) {
        visit(stack);
        return;
    }
    matched[v] = 1;
    for (EdgeId id : g.incident(v)) {
        size_t w = g.edges()[id.value].other(v);
        if (matched[w]) {
            continue;
        }
        matched[w] = 1;
        stack.push_back(id);
        walk_matchings(g, matched, stack, visit);
        stack.pop_back();
        matched[w] = 0;
    }
    matched[v] = 0;
}

}  // namespace

std::vector<PerfectMatching> enumerate_perfect_matchings(const ExperimentGraph &graph) {
    std::vector<PerfectMatching> result;
    if (graph.vertex_count() % 2 != 0) {
        return result;
    }
    std::vector<char> matched(graph.vertex_count(), 0);
    std::vector<EdgeId> stack;
    auto collect = [&](const std::vector<EdgeId> &ids) {
        PerfectMatching m{ids};
        std::sort(m.edge_ids.begin(), m.edge_ids.end());
        result.push_back(std::move(m));
    };
    walk_matchings(graph, matched, stack, collect);
    std::sort(result.begin(), result.end());
    return result;
}

uint64_t count_perfect_matchings(const ExperimentGraph &graph) {
    if (graph.vertex_count() % 2 != 0) {
        return 0;
    }
    uint64_t total = 0;
    std::vector<char> matched(graph.vertex_count(), 0);
    std::vector<EdgeId> stack;
    auto count = [&](const std::vector<EdgeId> &) {
        total++;
    };
    walk_matchings(graph, matched, stack, count);
    return total;
}

bool is_perfect_matching(const ExperimentGraph &graph, std::span<const EdgeId> edge_ids) {
    std::vector<int> cover(graph.vertex_count(), 0);
    for (EdgeId id : edge_ids) {
        const Edge &e = graph.edge(id);
        cover[e.u]++;
        cover[e.v]++;
    }
    return std::all_of(cover.begin(), cover.end(), [](int c) {
        return c == 1;
    });
}

namespace {

// Exact packing search. Each node picks the vertex with the fewest live edges
// (edges still used by some candidate) and its first live edge e, then either
// commits to one candidate containing e or drops every candidate using e.
// A packing uses distinct edges at every vertex, which bounds the remaining
// gain by the smallest live degree and by live edges / (n / 2).
class PackingSearch {
   public:
    PackingSearch(const ExperimentGraph &g, std::span<const PerfectMatching> matchings)
        : g_(g), matchings_(matchings), half_(g.vertex_count() / 2) {
        ceiling_ = matchings.size();
        for (size_t v = 0; v < g.vertex_count(); v++) {
            ceiling_ = std::min(ceiling_, g.incident(v).size());
        }
        ceiling_ = std::min(ceiling_, g.edge_count() / half_);
        ceiling_ = std::min(ceiling_, subset_bound());
    }

    std::vector<size_t> run() {
        std::vector<size_t> all(matchings_.size());
        for (size_t k = 0; k < all.size(); k++) {
            all[k] = k;
        }
        search(all);
        return best_;
    }

   private:
    // For a vertex set S with |S| = s: a perfect matching has at least one
    // edge leaving S when s is odd, and at least s - n/2 edges inside S when
    // s > n/2. Only edges that lie in some matching count. Skipped for large
    // graphs, where enumerating subsets costs more than it saves.
    size_t subset_bound() const {
        size_t n = g_.vertex_count();
        if (n > 16) {
            return SIZE_MAX;
        }
        std::vector<char> live(g_.edge_count(), 0);
        for (const auto &m : matchings_) {
            for (EdgeId id : m.edge_ids) {
                live[id.value] = 1;
            }
        }
        std::vector<std::pair<uint32_t, uint32_t>> ends;
        for (const auto &e : g_.edges()) {
            if (live[e.id.value]) {
                ends.emplace_back(uint32_t{1} << e.u, uint32_t{1} << e.v);
            }
        }
        size_t bound = SIZE_MAX;
        for (uint32_t set = 1; set + 1 < (uint32_t{1} << n); set++) {
            size_t s = std::popcount(set);
            size_t inside = 0;
            size_t crossing = 0;
            for (auto [bu, bv] : ends) {
                bool in_u = set & bu;
                bool in_v = set & bv;
                inside += in_u && in_v;
                crossing += in_u != in_v;
            }
            if (s % 2 == 1) {
                bound = std::min(bound, crossing);
            }
            if (2 * s > n) {
                bound = std::min(bound, inside / (s - n / 2));
            }
        }
        return bound;
    }

    bool uses(size_t m, EdgeId e) const {
        const auto &ids = matchings_[m].edge_ids;
        return std::binary_search(ids.begin(), ids.end(), e);
    }

    bool disjoint(size_t a, size_t b) const {
        const auto &x = matchings_[a].edge_ids;
        const auto &y = matchings_[b].edge_ids;
        size_t i = 0, j = 0;
        while (i < x.size() && j < y.size()) {
            if (x[i] == y[j]) {
                return false;
            }
            x[i] < y[j] ? i++ : j++;
        }
        return true;
    }

    void search(const std::vector<size_t> &cands) {
        if (chosen_.size() > best_.size()) {
            best_ = chosen_;
        }
        if (cands.empty() || best_.size() >= ceiling_) {
            return;
        }
        std::vector<char> live(g_.edge_count(), 0);
        for (size_t c : cands) {
            for (EdgeId id : matchings_[c].edge_ids) {
                live[id.value] = 1;
            }
        }
        size_t live_edges = std::count(live.begin(), live.end(), 1);
        size_t bound = std::min(cands.size(), live_edges / half_);
        size_t pivot_vertex = 0;
        size_t pivot_degree = SIZE_MAX;
        for (size_t v = 0; v < g_.vertex_count(); v++) {
            size_t degree = 0;
            for (EdgeId id : g_.incident(v)) {
                degree += live[id.value];
            }
            if (degree < pivot_degree) {
                pivot_degree = degree;
                pivot_vertex = v;
            }
        }
        bound = std::min(bound, pivot_degree);
        if (chosen_.size() + bound <= best_.size()) {
            return;
        }
        EdgeId e;
        for (EdgeId id : g_.incident(pivot_vertex)) {
            if (live[id.value]) {
                e = id;
                break;
            }
        }
        std::vector<size_t> without;
        for (size_t c : cands) {
            if (!uses(c, e)) {
                without.push_back(c);
            }
        }
        for (size_t c : cands) {
            if (!uses(c, e)) {
                continue;
            }
            std::vector<size_t> next;
            for (size_t d : without) {
                if (disjoint(c, d)) {
                    next.push_back(d);
                }
            }
            chosen_.push_back(c);
            search(next);
            chosen_.pop_back();
            if (best_.size() >= ceiling_) {
                return;
            }
        }
        search(without);
    }

    const ExperimentGraph &g_;
    std::span<const PerfectMatching> matchings_;
    size_t half_;
    size_t ceiling_ = 0;
    std::vector<size_t> chosen_;
    std::vector<size_t> best_;
};

}  // namespace

DisjointPacking max_disjoint_perfect_matchings(
    const ExperimentGraph &graph, std::span<const PerfectMatching> matchings) {
    DisjointPacking packing;
    if (matchings.empty()) {
        return packing;
    }
    PackingSearch search(graph, matchings);
    auto picked = search.run();
    std::sort(picked.begin(), picked.end());
    for (size_t k : picked) {
        packing.witness.push_back(matchings[k]);
    }
    packing.count = packing.witness.size();
    return packing;
}

DisjointPacking max_disjoint_perfect_matchings(const ExperimentGraph &graph) {
    auto matchings = enumerate_perfect_matchings(graph);
    return max_disjoint_perfect_matchings(graph, matchings);
}

}  // namespace pairgraph
