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


// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion and exits
// non-zero if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "pairgraph/analysis.h"
#include "pairgraph/constructors.h"
#include "pairgraph/errors.h"
#include "pairgraph/io.h"

using namespace pairgraph;

namespace {

// Collects failure notes for one criterion.
struct Check {
    std::vector<std::string> problems;
    std::string summary;

    void expect(bool ok, const std::string &what) {
        if (!ok) {
            problems.push_back(what);
        }
    }
};

int failures = 0;

void report(int id, const std::string &title, const std::function<void(Check &)> &body) {
    Check check;
    try {
        body(check);
    } catch (const std::exception &ex) {
        check.problems.push_back(std::string("exception: ") + ex.what());
    }
    bool ok = check.problems.empty();
    failures += !ok;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "AC" << id << " " << title;
    if (!check.summary.empty()) {
        std::cout << " (" << check.summary << ")";
    }
    for (size_t k = 0; k < check.problems.size() && k < 5; k++) {
        std::cout << (k ? "; " : ": ") << check.problems[k];
    }
    if (check.problems.size() > 5) {
        std::cout << "; ... " << check.problems.size() - 5 << " more";
    }
    std::cout << std::endl;
}

template <typename F>
bool throws_unrealizable(F f) {
    try {
        f();
    } catch (const Unrealizable &) {
        return true;
    } catch (...) {
    }
    return false;
}

uint64_t double_factorial(uint64_t k) {
    uint64_t r = 1;
    for (; k > 1; k -= 2) {
        r *= k;
    }
    return r;
}

size_t factorial(size_t k) {
    return k <= 1 ? 1 : k * factorial(k - 1);
}

size_t binomial(size_t n, size_t k) {
    size_t r = 1;
    for (size_t i = 1; i <= k; i++) {
        r = r * (n - k + i) / i;
    }
    return r;
}

ExperimentGraph complete_graph(size_t n) {
    std::vector<EdgeSpec> specs;
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            specs.push_back({i, j, 0, 0});
        }
    }
    return ExperimentGraph::build(default_labels(n), specs);
}

Term matching_term(const ExperimentGraph &g, const PerfectMatching &pm) {
    Term t(g.vertex_count());
    for (EdgeId id : pm.edge_ids) {
        const Edge &e = g.edge(id);
        t[e.u] = e.color_u;
        t[e.v] = e.color_v;
    }
    return t;
}

size_t half_red_edges(const ExperimentGraph &g, const PerfectMatching &pm) {
    size_t count = 0;
    for (EdgeId id : pm.edge_ids) {
        const Edge &e = g.edge(id);
        count += (e.color_u == ModeColor{1}) != (e.color_v == ModeColor{1});
    }
    return count;
}

// Largest |amplitude| difference after aligning global phase on `b`'s
// largest term.
double max_deviation(const QuantumState &a, const QuantumState &b) {
    Term anchor;
    double best = -1;
    for (const auto &[t, amp] : b.amplitudes()) {
        if (std::abs(amp) > best) {
            best = std::abs(amp);
            anchor = t;
        }
    }
    Amplitude pa = a.amplitude(anchor);
    Amplitude phase = std::abs(pa) > 0 ? b.amplitude(anchor) / pa * std::abs(pa) / std::abs(b.amplitude(anchor))
                                       : Amplitude(1);
    std::set<Term> terms;
    for (const auto &[t, amp] : a.amplitudes()) {
        terms.insert(t);
    }
    for (const auto &[t, amp] : b.amplitudes()) {
        terms.insert(t);
    }
    double dev = 0;
    for (const auto &t : terms) {
        dev = std::max(dev, std::abs(a.amplitude(t) * phase - b.amplitude(t)));
    }
    return dev;
}

ExperimentGraph random_graph(std::mt19937_64 &rng, size_t n, size_t max_edges, uint32_t max_color) {
    std::uniform_int_distribution<size_t> vertex(0, n - 1);
    std::uniform_int_distribution<size_t> count(0, max_edges);
    std::uniform_int_distribution<uint32_t> color(0, max_color);
    std::uniform_real_distribution<double> weight(-2, 2);
    std::vector<EdgeSpec> specs;
    size_t m = count(rng);
    while (specs.size() < m) {
        size_t u = vertex(rng), v = vertex(rng);
        if (u != v) {
            specs.push_back({u, v, color(rng), color(rng), {weight(rng), weight(rng)}});
        }
    }
    return ExperimentGraph::build(default_labels(n), specs);
}

int run_shell(const std::string &command) {
    int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string capture(const std::string &command) {
    std::string out;
    FILE *pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
        return out;
    }
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) {
        out.append(buf, got);
    }
    pclose(pipe);
    return out;
}

void ghz_family(Check &c) {
    for (size_t n = 4; n <= 12; n += 2) {
        auto s = synthesize(GhzTarget{n, 2});
        c.expect(s.report.matching_count == 2, "GHZ{" + std::to_string(n) + ",2} matchings");
        QuantumState ref(n);
        ref.add(Term(n, ModeColor{0}), M_SQRT1_2);
        ref.add(Term(n, ModeColor{1}), M_SQRT1_2);
        c.expect(max_deviation(s.state, ref) < 1e-9, "GHZ{" + std::to_string(n) + ",2} state");
        c.expect(schmidt_rank_vector(s.state).ranks == std::vector<size_t>(n, 2), "GHZ SRV not all 2s");
    }
    auto g43 = ghz_graph(4, 3);
    c.expect(max_disjoint_perfect_matchings(g43).count == 3, "GHZ{4,3} disjoint matchings");
    QuantumState ghz43(4);
    for (uint32_t k = 0; k < 3; k++) {
        ghz43.add(Term(4, ModeColor{k}), 1 / std::sqrt(3.0));
    }
    c.expect(max_deviation(normalize(state_from_graph(g43)), ghz43) < 1e-9, "GHZ{4,3} state");
    c.expect(throws_unrealizable([] { ghz_graph(6, 3); }), "ghz_graph(6,3) not rejected");
    c.expect(throws_unrealizable([] { ghz_graph(4, 4); }), "ghz_graph(4,4) not rejected");
    c.summary = "n = 4..12, d = 2; (4,3); (6,3), (4,4) rejected";
}

void matching_oracle(Check &c) {
    double k12 = 0;
    for (size_t n = 2; n <= 12; n += 2) {
        auto start = std::chrono::steady_clock::now();
        size_t got = enumerate_perfect_matchings(complete_graph(n)).size();
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        c.expect(got == double_factorial(n - 1), "K" + std::to_string(n) + " gave " + std::to_string(got));
        if (n == 12) {
            k12 = secs;
        }
    }
    c.expect(k12 < 10, "K12 took " + std::to_string(k12) + " s");
    std::ostringstream s;
    s << "K2..K12, K12 = 10395 matchings in " << k12 << " s";
    c.summary = s.str();
}

void w_family(Check &c) {
    for (size_t n = 4; n <= 10; n += 2) {
        auto g = w_graph(n);
        QuantumState ref(n);
        for (size_t k = 0; k < n; k++) {
            Term t(n, ModeColor{0});
            t[k] = ModeColor{1};
            ref.add(t, 1 / std::sqrt(double(n)));
        }
        c.expect(max_deviation(normalize(state_from_graph(g)), ref) < 1e-9, "W" + std::to_string(n) + " state");

        auto unit = w_graph_unweighted(n);
        std::map<Term, size_t> multiplicity;
        for (const auto &pm : enumerate_perfect_matchings(unit)) {
            c.expect(half_red_edges(unit, pm) == 1, "matching without exactly one half-red edge");
            multiplicity[matching_term(unit, pm)]++;
        }
        auto s = state_from_graph(unit);
        std::vector<double> mags;
        for (const auto &[t, amp] : s.amplitudes()) {
            mags.push_back(std::abs(amp));
        }
        std::sort(mags.begin(), mags.end());
        c.expect(mags.size() == n && std::abs(mags.back() / mags.front() - (n - 1.0)) < 1e-12 &&
                     std::abs(mags[n - 2] - mags.front()) < 1e-12,
                 "W" + std::to_string(n) + " unit-weight ratio");
    }
    c.summary = "n = 4..10";
}

void symmetric_dicke(Check &c) {
    for (size_t n : {4, 6}) {
        auto g = symmetric_dicke_graph(n);
        std::map<Term, size_t> multiplicity;
        for (const auto &pm : enumerate_perfect_matchings(g)) {
            multiplicity[matching_term(g, pm)]++;
        }
        c.expect(multiplicity.size() == binomial(n, n / 2), "term count");
        for (const auto &[t, count] : multiplicity) {
            c.expect(count == factorial(n / 2), "multiplicity");
            c.expect(size_t(std::count(t.begin(), t.end(), ModeColor{1})) == n / 2, "excitation count");
        }
        QuantumState ref(n);
        for (const auto &[t, count] : multiplicity) {
            ref.add(t, 1 / std::sqrt(double(binomial(n, n / 2))));
        }
        c.expect(max_deviation(normalize(state_from_graph(g)), ref) < 1e-9, "state");
    }
    c.summary = "n = 4, 6";
}

void dicke_solver(Check &c) {
    auto g = general_dicke_graph(6, 2);
    auto classes = dicke_weight_classes(g, 2);
    auto sol = solve_weights(g, classes, {{"delta", 1.0}});
    auto s = normalize(state_from_graph(apply_weights(g, classes, sol.weights)));
    double lo = 1e9, hi = 0;
    for (const auto &[t, amp] : s.amplitudes()) {
        lo = std::min(lo, std::abs(amp));
        hi = std::max(hi, std::abs(amp));
    }
    c.expect(s.term_count() == 15, "D(6,2) term count");
    c.expect(hi - lo < 1e-9, "D(6,2) spread " + std::to_string(hi - lo));
    for (size_t n = 4; n <= 10; n += 2) {
        auto w = w_graph_unweighted(n);
        auto wc = w_weight_classes(w, 0);
        auto num = solve_weights(w, wc, {{"alpha", 1.0}, {"gamma", 1.0}});
        c.expect(std::abs(num.weights.at("beta") - w_weight_closed_form(n).beta) < 1e-9, "W beta mismatch");
    }
    std::ostringstream out;
    out << "D(6,2) spread " << hi - lo << "; W4..W10 beta = n - 1";
    c.summary = out.str();
}

void srv_checks(Check &c) {
    auto srv422 = QuantumState::from_terms(3, {{"000", 0.5}, {"101", 0.5}, {"210", 0.5}, {"311", 0.5}});
    c.expect(schmidt_rank_vector(srv422) == SRVector{{4, 2, 2}}, "(4,2,2) example SRV");
    c.expect(srv_feasibility(6, 3, 3).kind == FeasibilityKind::Feasible, "(6,3,3)");
    c.expect(srv_feasibility(4, 2, 2).kind == FeasibilityKind::Feasible, "(4,2,2)");
    c.expect(srv_feasibility(6, 3, 2).kind == FeasibilityKind::InfeasiblePairSources, "(6,3,2)");
    c.expect(srv_feasibility(7, 3, 2).kind == FeasibilityKind::NonexistentState, "(7,3,2)");
    size_t cells = 0;
    for (const auto &v : srv_table(8)) {
        if (v.kind != FeasibilityKind::Feasible) {
            continue;
        }
        cells++;
        std::string name = "(" + std::to_string(v.a) + "," + std::to_string(v.b) + "," + std::to_string(v.c) + ")";
        auto g = srv_graph(v.a, v.b, v.c);
        auto full = normalize(state_from_graph(g));
        c.expect(count_perfect_matchings(g) == v.a, name + " matchings");
        c.expect(full.modes_of(kTriggerVertex).size() == 1, name + " trigger varies");
        auto s = strip_trigger(full, kTriggerVertex);
        c.expect(s.term_count() == v.a, name + " terms");
        c.expect(is_maximally_entangled(s), name + " not maximally entangled");
        c.expect(schmidt_rank_vector(s) == SRVector{{v.a, v.b, v.c}}, name + " SRV");
    }
    c.summary = std::to_string(cells) + " feasible cells with A <= 8 built and verified";
}

void ame_checks(Check &c) {
    auto g = ame_graph(3, 2);
    c.expect(count_perfect_matchings(g) == 4, "matching count");
    auto expected = QuantumState::from_terms(4, {{"0000", 0.5}, {"0110", 0.5}, {"1010", 0.5}, {"1100", 0.5}});
    c.expect(max_deviation(normalize(state_from_graph(g)), expected) < 1e-9, "state");
    c.expect(throws_unrealizable([] { ame_graph(3, 3); }), "d = 3 not rejected");
}

void disjoint_bound(Check &c) {
    std::mt19937_64 rng(20260);
    const int graphs = 1000;
    int exceeded = 0;
    int mutual_exceeded = 0;
    std::string example;
    for (int k = 0; k < graphs; k++) {
        auto g = random_graph(rng, 4, 20, 2);
        auto all = enumerate_perfect_matchings(g);
        auto packing = max_disjoint_perfect_matchings(g, all);
        if (packing.count > 3) {
            exceeded++;
            if (example.empty()) {
                example = std::to_string(g.edge_count()) + " edges, " + std::to_string(packing.count) + " disjoint";
            }
        }
        if (packing.count == all.size() && all.size() > 3) {
            mutual_exceeded++;
        }
    }
    c.expect(exceeded == 0, std::to_string(exceeded) + " of " + std::to_string(graphs) +
                                " multigraphs have more than 3 edge-disjoint perfect matchings (first: " + example +
                                ")");
    c.summary = std::to_string(graphs) + " random 4-vertex multigraphs, <= 20 edges; graphs whose matchings are "
                "all mutually disjoint with more than 3 matchings: " + std::to_string(mutual_exceeded);
}

std::string target_flags(const TargetSpec &spec) {
    struct Visitor {
        std::string operator()(const GhzTarget &t) const {
            return "--target ghz --n " + std::to_string(t.n) + " --d " + std::to_string(t.d);
        }
        std::string operator()(const WTarget &t) const {
            return "--target w --n " + std::to_string(t.n);
        }
        std::string operator()(const DickeTarget &t) const {
            return "--target dicke --n " + std::to_string(t.n) + " --m " + std::to_string(t.m);
        }
        std::string operator()(const SrvTarget &t) const {
            return "--target srv --A " + std::to_string(t.a) + " --B " + std::to_string(t.b) + " --C " +
                   std::to_string(t.c);
        }
        std::string operator()(const AmeTarget &t) const {
            return "--target ame --parties " + std::to_string(t.parties) + " --d " + std::to_string(t.d);
        }
    };
    return std::visit(Visitor{}, spec);
}

std::vector<TargetSpec> feasible_matrix() {
    std::vector<TargetSpec> specs;
    for (size_t n = 4; n <= 12; n += 2) {
        specs.push_back(GhzTarget{n, 2});
    }
    specs.push_back(GhzTarget{4, 3});
    for (size_t n = 4; n <= 12; n += 2) {
        specs.push_back(WTarget{n});
    }
    for (size_t n : {4, 6}) {
        for (size_t m = 1; m < n; m++) {
            specs.push_back(DickeTarget{n, m});
        }
    }
    specs.push_back(DickeTarget{8, 2});
    specs.push_back(DickeTarget{8, 4});
    for (const auto &v : srv_table(8)) {
        if (v.kind == FeasibilityKind::Feasible) {
            specs.push_back(SrvTarget{v.a, v.b, v.c});
        }
    }
    specs.push_back(AmeTarget{3, 2});
    return specs;
}

void round_trips(Check &c) {
    std::mt19937_64 rng(424242);
    for (int k = 0; k < 50; k++) {
        std::uniform_int_distribution<size_t> size(2, 10);
        auto g = random_graph(rng, size(rng), 24, 11);
        std::string text = write_graph(g);
        auto back = read_graph_text(text);
        c.expect(back == g, "graph round trip");
        c.expect(write_graph(back) == text, "document round trip");
    }

    const std::string bin = PAIRGRAPH_CLI_PATH;
    auto dir = std::filesystem::temp_directory_path() / "pairgraph_acceptance";
    std::filesystem::create_directories(dir);
    auto graph_path = (dir / "graph.json").string();
    auto specs = feasible_matrix();
    for (const auto &spec : specs) {
        std::string flags = target_flags(spec);
        int synth = run_shell(bin + " synth " + flags + " --out " + graph_path);
        int verify = run_shell(bin + " verify " + graph_path + " " + flags + " > /dev/null");
        c.expect(synth == 0 && verify == 0, "verify(synth(" + to_string(spec) + ")) exit " + std::to_string(verify));
    }

    std::vector<std::string> commands{
        "synth --target dicke --n 6 --m 2",
        "synth --target w --n 8",
        "synth --target srv --A 6 --B 3 --C 3",
        "table --max-a 10",
        "table --max-a 10 --format csv",
        "feasible 6 3 2",
    };
    std::vector<std::string> piped{"simulate", "srv --trigger 3", "classify", "export-dot", "export-experiment"};
    for (const auto &cmd : commands) {
        c.expect(capture(bin + " " + cmd) == capture(bin + " " + cmd), "unstable output: " + cmd);
    }
    for (const auto &cmd : piped) {
        std::string line = bin + " synth --target srv --A 5 --B 3 --C 2 | " + bin + " " + cmd;
        std::string first = capture(line);
        c.expect(!first.empty() && first == capture(line), "unstable output: " + cmd);
    }
    std::filesystem::remove_all(dir);
    c.summary = "50 random graphs; " + std::to_string(specs.size()) + " feasible specs through the CLI";
}

}  // namespace

int main() {
    report(1, "GHZ family", ghz_family);
    report(2, "matching count oracle on K_n", matching_oracle);
    report(3, "W family", w_family);
    report(4, "symmetric Dicke", symmetric_dicke);
    report(5, "general Dicke weights and W closed form", dicke_solver);
    report(6, "SRV rank vectors, feasibility and witnesses", srv_checks);
    report(7, "AME(3,2)", ame_checks);
    report(8, "at most 3 disjoint perfect matchings on 4 vertices", disjoint_bound);
    report(9, "round trips, verify(synth) and CLI stability", round_trips);
    return failures == 0 ? 0 : 1;
}
