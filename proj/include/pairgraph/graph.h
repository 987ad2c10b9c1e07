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

#ifndef PAIRGRAPH_GRAPH_H
#define PAIRGRAPH_GRAPH_H

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pairgraph {

using Amplitude = std::complex<double>;

/// Photon mode number carried by one endpoint of an edge (polarization,
/// OAM index, ...). Rendered as a color when drawing the graph.
struct ModeColor {
    uint32_t value = 0;

    constexpr ModeColor() = default;
    constexpr explicit ModeColor(uint32_t v) : value(v) {
    }
    friend constexpr auto operator<=>(const ModeColor &, const ModeColor &) = default;
};

/// Identity of one edge (one crystal). Parallel edges have distinct ids.
struct EdgeId {
    uint32_t value = 0;

    constexpr EdgeId() = default;
    constexpr explicit EdgeId(uint32_t v) : value(v) {
    }
    friend constexpr auto operator<=>(const EdgeId &, const EdgeId &) = default;
};

struct Edge {
    EdgeId id;
    size_t u = 0;
    size_t v = 0;
    ModeColor color_u;
    ModeColor color_v;
    Amplitude weight{1.0, 0.0};

    bool touches(size_t vertex) const {
        return u == vertex || v == vertex;
    }
    size_t other(size_t vertex) const {
        return vertex == u ? v : u;
    }
    /// Mode of the photon this edge emits into `vertex`. Requires touches(vertex).
    ModeColor color_at(size_t vertex) const {
        return vertex == u ? color_u : color_v;
    }
};

/// Input record for ExperimentGraph::build.
struct EdgeSpec {
    size_t u = 0;
    size_t v = 0;
    uint32_t color_u = 0;
    uint32_t color_v = 0;
    Amplitude weight{1.0, 0.0};
};

/// Undirected edge-colored weighted multigraph. Vertices are optical paths,
/// edges are pair sources.
///
/// Immutable once built; "modifying" a graph means building a new one. Edge
/// ids are the positions in the edge list, so edge order is also id order.
class ExperimentGraph {
   public:
    /// Throws std::invalid_argument on duplicate labels, empty vertex set,
    /// out-of-range endpoints, self-loops or non-finite weights.
    static ExperimentGraph build(std::vector<std::string> vertex_labels, std::span<const EdgeSpec> edges);

    size_t vertex_count() const {
        return labels_.size();
    }
    const std::vector<std::string> &vertex_labels() const {
        return labels_;
    }
    const std::vector<Edge> &edges() const {
        return edges_;
    }
    size_t edge_count() const {
        return edges_.size();
    }
    /// Throws std::out_of_range for an id not in this graph.
    const Edge &edge(EdgeId id) const;
    bool has_edge(EdgeId id) const {
        return id.value < edges_.size();
    }
    /// Edge ids incident to `vertex`, ascending.
    const std::vector<EdgeId> &incident(size_t vertex) const {
        return incidence_[vertex];
    }
    /// Throws std::invalid_argument if no vertex has this label.
    size_t vertex_index(const std::string &label) const;

    /// Same topology and colors with edge weights replaced, in edge order.
    ExperimentGraph with_weights(std::span<const Amplitude> weights) const;
    /// Copy of the graph without one edge (ids of later edges shift down).
    ExperimentGraph without_edge(EdgeId id) const;

    std::vector<EdgeSpec> edge_specs() const;

    bool operator==(const ExperimentGraph &other) const;

   private:
    ExperimentGraph() = default;

    std::vector<std::string> labels_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> incidence_;
};

/// Labels a, b, c, ... z, then v26, v27, ...
std::vector<std::string> default_labels(size_t count);

/// A set of edges covering every vertex exactly once. Ids kept ascending.
struct PerfectMatching {
    std::vector<EdgeId> edge_ids;

    friend auto operator<=>(const PerfectMatching &, const PerfectMatching &) = default;
};

/// All perfect matchings, lexicographically ordered by their sorted edge ids.
/// Empty when the vertex count is odd or no matching exists.
std::vector<PerfectMatching> enumerate_perfect_matchings(const ExperimentGraph &graph);

/// Number of perfect matchings; same as enumerate_perfect_matchings(g).size()
/// without materializing the list.
uint64_t count_perfect_matchings(const ExperimentGraph &graph);

struct DisjointPacking {
    size_t count = 0;
    std::vector<PerfectMatching> witness;
};

/// Maximum set of pairwise edge-disjoint perfect matchings (exact search).
DisjointPacking max_disjoint_perfect_matchings(const ExperimentGraph &graph);
DisjointPacking max_disjoint_perfect_matchings(
    const ExperimentGraph &graph, std::span<const PerfectMatching> matchings);

/// True iff `edge_ids` covers every vertex exactly once.
/// Throws std::out_of_range for an id not present in the graph.
bool is_perfect_matching(const ExperimentGraph &graph, std::span<const EdgeId> edge_ids);

}  // namespace pairgraph

#endif
