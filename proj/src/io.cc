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

#include "pairgraph/io.h"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace pairgraph {

using Json = nlohmann::ordered_json;

namespace {

const Json &require(const Json &obj, const char *key, const std::string &where) {
    if (!obj.is_object()) {
        throw SchemaError(where + ": expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw SchemaError(where + "." + key + ": missing field");
    }
    return *it;
}

uint32_t read_mode(const Json &value, const std::string &where) {
    if (!value.is_number_integer() || value.get<int64_t>() < 0 || value.get<int64_t>() > UINT32_MAX) {
        throw SchemaError(where + ": expected a non-negative integer");
    }
    return static_cast<uint32_t>(value.get<int64_t>());
}

double read_number(const Json &value, const std::string &where) {
    if (!value.is_number()) {
        throw SchemaError(where + ": expected a number");
    }
    return value.get<double>();
}

ExperimentGraph graph_from_json(const Json &doc) {
    const Json &version = require(doc, "schema_version", "document");
    if (!version.is_number_integer()) {
        throw SchemaError("document.schema_version: expected an integer");
    }
    if (version.get<int64_t>() != kGraphSchemaVersion) {
        throw SchemaError(
            "document.schema_version: unsupported version " + std::to_string(version.get<int64_t>()) +
            " (expected " + std::to_string(kGraphSchemaVersion) + ")");
    }
    const Json &vertices = require(doc, "vertices", "document");
    if (!vertices.is_array() || vertices.empty()) {
        throw SchemaError("document.vertices: expected a non-empty array of labels");
    }
    std::vector<std::string> labels;
    std::map<std::string, size_t> index;
    for (size_t k = 0; k < vertices.size(); k++) {
        if (!vertices[k].is_string()) {
            throw SchemaError("vertices[" + std::to_string(k) + "]: expected a string");
        }
        auto label = vertices[k].get<std::string>();
        if (!index.emplace(label, k).second) {
            throw SchemaError("vertices[" + std::to_string(k) + "]: duplicate label '" + label + "'");
        }
        labels.push_back(std::move(label));
    }
    const Json &edges = require(doc, "edges", "document");
    if (!edges.is_array()) {
        throw SchemaError("document.edges: expected an array");
    }
    std::vector<EdgeSpec> specs;
    for (size_t k = 0; k < edges.size(); k++) {
        std::string where = "edges[" + std::to_string(k) + "]";
        const Json &e = edges[k];
        auto endpoint = [&](const char *key) {
            const Json &v = require(e, key, where);
            if (!v.is_string()) {
                throw SchemaError(where + "." + key + ": expected a vertex label");
            }
            auto it = index.find(v.get<std::string>());
            if (it == index.end()) {
                throw SchemaError(where + "." + key + ": unknown vertex '" + v.get<std::string>() + "'");
            }
            return it->second;
        };
        EdgeSpec spec;
        spec.u = endpoint("u");
        spec.v = endpoint("v");
        if (spec.u == spec.v) {
            throw SchemaError(where + ": self-loop on '" + labels[spec.u] + "'");
        }
        spec.color_u = read_mode(require(e, "color_u", where), where + ".color_u");
        spec.color_v = read_mode(require(e, "color_v", where), where + ".color_v");
        const Json &w = require(e, "weight", where);
        spec.weight = Amplitude{
            read_number(require(w, "re", where + ".weight"), where + ".weight.re"),
            read_number(require(w, "im", where + ".weight"), where + ".weight.im")};
        specs.push_back(spec);
    }
    try {
        return ExperimentGraph::build(std::move(labels), specs);
    } catch (const std::invalid_argument &ex) {
        throw SchemaError(std::string("document: ") + ex.what());
    }
}

Json parse_json(std::istream &in) {
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error &ex) {
        throw SchemaError(std::string("malformed JSON: ") + ex.what());
    }
}

}  // namespace

ExperimentGraph read_graph(std::istream &in) {
    return graph_from_json(parse_json(in));
}

ExperimentGraph read_graph_text(const std::string &text) {
    std::istringstream in(text);
    return read_graph(in);
}

ExperimentGraph read_graph_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return read_graph(in);
}

std::string write_graph(const ExperimentGraph &graph) {
    Json doc;
    doc["schema_version"] = kGraphSchemaVersion;
    doc["vertices"] = graph.vertex_labels();
    Json edges = Json::array();
    for (const auto &e : graph.edges()) {
        Json item;
        item["u"] = graph.vertex_labels()[e.u];
        item["v"] = graph.vertex_labels()[e.v];
        item["color_u"] = e.color_u.value;
        item["color_v"] = e.color_v.value;
        item["weight"] = Json{{"re", e.weight.real()}, {"im", e.weight.imag()}};
        edges.push_back(std::move(item));
    }
    doc["edges"] = std::move(edges);
    return doc.dump(2) + "\n";
}

void write_graph_file(const ExperimentGraph &graph, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << write_graph(graph);
}

namespace {

std::string fixed6(double x) {
    if (std::abs(x) < 5e-7) {
        x = 0;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", x);
    return buf;
}

}  // namespace

std::string format_state(const QuantumState &state) {
    std::string out;
    for (const auto &[term, amp] : state.amplitudes()) {
        out += term_to_string(term) + " " + fixed6(amp.real()) + " " + fixed6(amp.imag()) + "\n";
    }
    return out;
}

QuantumState parse_state(std::istream &in) {
    std::vector<std::pair<Term, Amplitude>> rows;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') {
            continue;
        }
        std::istringstream fields(line);
        std::string term_text;
        double re = 0;
        double im = 0;
        if (!(fields >> term_text >> re)) {
            throw std::invalid_argument("state line " + std::to_string(line_no) + ": expected '<term> <re> [<im>]'");
        }
        fields >> im;
        rows.emplace_back(term_from_string(term_text), Amplitude{re, im});
    }
    if (rows.empty()) {
        throw std::invalid_argument("state listing has no terms");
    }
    QuantumState state(rows.front().first.size());
    for (const auto &[term, amp] : rows) {
        state.add(term, amp);
    }
    return state;
}

namespace {

constexpr std::array<const char *, 8> kPalette = {
    "black", "red", "green", "blue", "orange", "purple", "cyan", "magenta"};

std::string quote(const std::string &s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') {
            out += '\\';
        }
        out += ch;
    }
    return out + "\"";
}

std::string weight_text(Amplitude w) {
    std::ostringstream out;
    out.precision(6);
    if (w.imag() == 0) {
        out << w.real();
    } else {
        out << w.real() << (w.imag() < 0 ? "-" : "+") << std::abs(w.imag()) << "i";
    }
    return out.str();
}

}  // namespace

std::string export_dot(const ExperimentGraph &graph) {
    std::string out = "graph experiment {\n";
    out += "  node [shape=circle];\n";
    for (const auto &label : graph.vertex_labels()) {
        out += "  " + quote(label) + ";\n";
    }
    const auto &labels = graph.vertex_labels();
    for (const auto &e : graph.edges()) {
        std::vector<std::string> attrs;
        uint32_t cu = e.color_u.value;
        uint32_t cv = e.color_v.value;
        std::string label;
        if (cu < kPalette.size() && cv < kPalette.size()) {
            if (cu == cv) {
                attrs.push_back("color=" + quote(kPalette[cu]));
            } else {
                attrs.push_back("color=" + quote(std::string(kPalette[cu]) + ";0.5:" + kPalette[cv]));
            }
        } else {
            attrs.push_back("color=\"gray\"");
            label = std::to_string(cu) + ":" + std::to_string(cv);
        }
        if (e.weight != Amplitude{1.0, 0.0}) {
            label += (label.empty() ? "" : " ") + std::string("w=") + weight_text(e.weight);
        }
        if (!label.empty()) {
            attrs.push_back("label=" + quote(label));
        }
        out += "  " + quote(labels[e.u]) + " -- " + quote(labels[e.v]) + " [";
        for (size_t k = 0; k < attrs.size(); k++) {
            out += (k ? ", " : "") + attrs[k];
        }
        out += "];\n";
    }
    return out + "}\n";
}

std::string roman_numeral(size_t value) {
    static const std::pair<size_t, const char *> table[] = {
        {1000, "M"}, {900, "CM"}, {500, "D"}, {400, "CD"}, {100, "C"}, {90, "XC"}, {50, "L"},
        {40, "XL"},  {10, "X"},   {9, "IX"},  {5, "V"},   {4, "IV"},  {1, "I"}};
    std::string out;
    for (const auto &[v, sym] : table) {
        while (value >= v) {
            out += sym;
            value -= v;
        }
    }
    return out;
}

ExperimentDocument export_experiment(const ExperimentGraph &graph) {
    ExperimentDocument doc;
    const auto &labels = graph.vertex_labels();
    for (const auto &e : graph.edges()) {
        doc.crystals.push_back(
            {roman_numeral(e.id.value + 1), labels[e.u], labels[e.v], e.color_u.value, e.color_v.value,
             std::abs(e.weight)});
    }
    return doc;
}

std::string write_experiment(const ExperimentDocument &doc) {
    Json crystals = Json::array();
    for (const auto &c : doc.crystals) {
        Json item;
        item["crystal_id"] = c.crystal_id;
        item["path_1"] = c.path_1;
        item["path_2"] = c.path_2;
        item["mode_1"] = c.mode_1;
        item["mode_2"] = c.mode_2;
        item["relative_amplitude"] = c.relative_amplitude;
        crystals.push_back(std::move(item));
    }
    Json out;
    out["crystals"] = std::move(crystals);
    return out.dump(2) + "\n";
}

namespace {

char verdict_symbol(FeasibilityKind kind) {
    switch (kind) {
        case FeasibilityKind::Feasible:
            return 'F';
        case FeasibilityKind::InfeasiblePairSources:
            return 'x';
        case FeasibilityKind::NonexistentState:
            return '#';
    }
    return '?';
}

}  // namespace

std::string format_srv_table(const std::vector<FeasibilityVerdict> &cells) {
    std::map<size_t, std::map<size_t, std::map<size_t, FeasibilityKind>>> grid;
    for (const auto &v : cells) {
        grid[v.a][v.b][v.c] = v.kind;
    }
    std::string out = "# F = feasible, x = infeasible with pair sources, # = nonexistent\n";
    for (const auto &[a, rows] : grid) {
        out += "A=" + std::to_string(a) + "\n";
        out += "  B\\C";
        for (size_t c = 1; c <= a; c++) {
            out += " " + std::to_string(c);
        }
        out += "\n";
        for (const auto &[b, row] : rows) {
            std::string line = "  " + std::to_string(b);
            while (line.size() < 6) {
                line += ' ';
            }
            for (size_t c = 1; c <= b; c++) {
                auto it = row.find(c);
                line += (c > 1 ? std::string(std::to_string(c).size(), ' ') : std::string());
                line += it == row.end() ? '.' : verdict_symbol(it->second);
            }
            out += line + "\n";
        }
    }
    return out;
}

std::string format_srv_table_csv(const std::vector<FeasibilityVerdict> &cells) {
    std::string out = "A,B,C,verdict,lhs,rhs\n";
    for (const auto &v : cells) {
        out += std::to_string(v.a) + "," + std::to_string(v.b) + "," + std::to_string(v.c) + "," + to_string(v.kind) +
               "," + std::to_string(v.lhs) + "," + std::to_string(v.rhs) + "\n";
    }
    return out;
}

}  // namespace pairgraph
