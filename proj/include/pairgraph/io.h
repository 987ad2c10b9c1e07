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

#ifndef PAIRGRAPH_IO_H
#define PAIRGRAPH_IO_H

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "pairgraph/analysis.h"
#include "pairgraph/graph.h"
#include "pairgraph/state.h"

namespace pairgraph {

/// Current graph document version. Readers reject any other value.
constexpr int kGraphSchemaVersion = 1;

/// Malformed document. The message names the offending field, e.g.
/// "edges[2].color_u: expected a non-negative integer".
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Graph document (JSON):
///
///   {"schema_version": 1,
///    "vertices": ["a", "b"],
///    "edges": [{"u": "a", "v": "b", "color_u": 0, "color_v": 1,
///               "weight": {"re": 1.0, "im": 0.0}}]}
///
/// Edges refer to vertices by label and keep their order.
ExperimentGraph read_graph(std::istream &in);
ExperimentGraph read_graph_text(const std::string &text);
ExperimentGraph read_graph_file(const std::string &path);

/// Deterministic rendering (fixed key order, two-space indent, trailing newline).
std::string write_graph(const ExperimentGraph &graph);
void write_graph_file(const ExperimentGraph &graph, const std::string &path);

/// One line per term, sorted by term: "<term> <re> <im>", six decimals.
std::string format_state(const QuantumState &state);
/// Inverse of format_state. Throws std::invalid_argument on bad lines.
QuantumState parse_state(std::istream &in);

/// Graphviz rendering. Modes 0..7 map to black, red, green, blue, orange,
/// purple, cyan, magenta; a half-and-half edge becomes a split color
/// "c_u;0.5:c_v". Larger modes are drawn gray with a "u:v" label. Non-unit
/// weights appear as the edge label.
std::string export_dot(const ExperimentGraph &graph);

/// One crystal per edge, in edge order.
struct Crystal {
    std::string crystal_id;
    std::string path_1;
    std::string path_2;
    uint32_t mode_1 = 0;
    uint32_t mode_2 = 0;
    double relative_amplitude = 1;
};

struct ExperimentDocument {
    std::vector<Crystal> crystals;
};

/// Crystal ids are Roman numerals I, II, III, ... in edge order.
ExperimentDocument export_experiment(const ExperimentGraph &graph);
std::string write_experiment(const ExperimentDocument &doc);

std::string roman_numeral(size_t value);

/// Text grid of SRV verdicts, one block per A. Rows are B, columns C:
/// "F" feasible, "x" infeasible with pair sources, "#" nonexistent.
std::string format_srv_table(const std::vector<FeasibilityVerdict> &cells);
/// CSV with header "A,B,C,verdict,lhs,rhs".
std::string format_srv_table_csv(const std::vector<FeasibilityVerdict> &cells);

}  // namespace pairgraph

#endif
