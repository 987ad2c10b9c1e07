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

#include "pairgraph/state.h"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pairgraph {

std::string term_to_string(const Term &term) {
    bool wide = std::any_of(term.begin(), term.end(), [](ModeColor c) {
        return c.value > 9;
    });
    std::string out;
    for (size_t k = 0; k < term.size(); k++) {
        if (wide && k > 0) {
            out += ',';
        }
        out += std::to_string(term[k].value);
    }
    return out;
}

Term term_from_string(std::string_view text) {
    Term term;
    if (text.find(',') != std::string_view::npos) {
        size_t start = 0;
        while (start <= text.size()) {
            size_t end = text.find(',', start);
            if (end == std::string_view::npos) {
                end = text.size();
            }
            auto piece = text.substr(start, end - start);
            if (piece.empty() || !std::all_of(piece.begin(), piece.end(), ::isdigit)) {
                throw std::invalid_argument("bad term '" + std::string(text) + "'");
            }
            term.emplace_back(static_cast<uint32_t>(std::stoul(std::string(piece))));
            start = end + 1;
        }
        return term;
    }
    for (char ch : text) {
        if (ch < '0' || ch > '9') {
            throw std::invalid_argument("bad term '" + std::string(text) + "'");
        }
        term.emplace_back(static_cast<uint32_t>(ch - '0'));
    }
    if (term.empty()) {
        throw std::invalid_argument("empty term");
    }
    return term;
}

QuantumState::QuantumState(size_t party_count) : party_count_(party_count) {
}

QuantumState QuantumState::from_terms(
    size_t party_count, std::initializer_list<std::pair<std::string_view, Amplitude>> terms) {
    QuantumState s(party_count);
    for (const auto &[text, amp] : terms) {
        s.add(term_from_string(text), amp);
    }
    return s;
}

Amplitude QuantumState::amplitude(const Term &term) const {
    auto it = amplitudes_.find(term);
    return it == amplitudes_.end() ? Amplitude{0.0, 0.0} : it->second;
}

void QuantumState::add(const Term &term, Amplitude amp) {
    if (term.size() != party_count_) {
        throw std::invalid_argument(
            "term " + term_to_string(term) + " does not have " + std::to_string(party_count_) + " parties");
    }
    auto [it, inserted] = amplitudes_.try_emplace(term, Amplitude{0.0, 0.0});
    it->second += amp;
    if (std::abs(it->second) < kPruneThreshold) {
        amplitudes_.erase(it);
    }
}

double QuantumState::norm_squared() const {
    double total = 0;
    for (const auto &[term, amp] : amplitudes_) {
        total += std::norm(amp);
    }
    return total;
}

bool QuantumState::is_normalized(double tol) const {
    return std::abs(norm_squared() - 1.0) <= tol;
}

std::vector<ModeColor> QuantumState::modes_of(size_t party) const {
    std::vector<ModeColor> modes;
    for (const auto &[term, amp] : amplitudes_) {
        modes.push_back(term[party]);
    }
    std::sort(modes.begin(), modes.end());
    modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
    return modes;
}

QuantumState state_from_graph(const ExperimentGraph &graph) {
    if (graph.vertex_count() % 2 != 0) {
        throw std::invalid_argument(
            "graph has an odd number of vertices (" + std::to_string(graph.vertex_count()) + ")");
    }
    QuantumState state(graph.vertex_count());
    Term term(graph.vertex_count());
    for (const auto &m : enumerate_perfect_matchings(graph)) {
        Amplitude amp{1.0, 0.0};
        for (EdgeId id : m.edge_ids) {
            const Edge &e = graph.edge(id);
            term[e.u] = e.color_u;
            term[e.v] = e.color_v;
            amp *= e.weight;
        }
        state.add(term, amp);
    }
    return state;
}

QuantumState normalize(const QuantumState &state) {
    if (state.empty()) {
        throw std::invalid_argument("cannot normalize an empty state");
    }
    double scale = 1.0 / std::sqrt(state.norm_squared());
    QuantumState out(state.party_count());
    for (const auto &[term, amp] : state.amplitudes()) {
        out.add(term, amp * scale);
    }
    return out;
}

namespace {

uint64_t binomial(uint64_t n, uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    uint64_t r = 1;
    for (uint64_t i = 1; i <= k; i++) {
        r = r * (n - k + i) / i;
    }
    return r;
}

QuantumState dicke_state(size_t n, size_t m) {
    if (n > 62) {
        throw std::invalid_argument("Dicke reference limited to 62 parties");
    }
    QuantumState s(n);
    double amp = 1.0 / std::sqrt(static_cast<double>(binomial(n, m)));
    Term term(n);
    for (uint64_t bits = 0; bits < (uint64_t{1} << n); bits++) {
        if (static_cast<size_t>(std::popcount(bits)) != m) {
            continue;
        }
        for (size_t k = 0; k < n; k++) {
            term[k] = ModeColor((bits >> (n - 1 - k)) & 1);
        }
        s.add(term, amp);
    }
    return s;
}

struct ReferenceBuilder {
    QuantumState operator()(const GhzTarget &t) const {
        if (t.n < 1 || t.d < 1) {
            throw std::invalid_argument("GHZ needs n >= 1 and d >= 1");
        }
        QuantumState s(t.n);
        double amp = 1.0 / std::sqrt(static_cast<double>(t.d));
        for (size_t i = 0; i < t.d; i++) {
            s.add(Term(t.n, ModeColor(static_cast<uint32_t>(i))), amp);
        }
        return s;
    }
    QuantumState operator()(const WTarget &t) const {
        if (t.n < 2) {
            throw std::invalid_argument("W needs n >= 2");
        }
        return dicke_state(t.n, 1);
    }
    QuantumState operator()(const DickeTarget &t) const {
        if (t.m == 0 || t.m >= t.n) {
            throw std::invalid_argument("Dicke needs 0 < m < n");
        }
        return dicke_state(t.n, t.m);
    }
    QuantumState operator()(const SrvTarget &) const {
        throw std::invalid_argument("SRV targets have no canonical reference state");
    }
    QuantumState operator()(const AmeTarget &t) const {
        if (t.parties != 3) {
            throw std::invalid_argument("AME reference only defined for 3 parties");
        }
        if (t.d < 1) {
            throw std::invalid_argument("AME needs d >= 1");
        }
        QuantumState s(3);
        double amp = 1.0 / static_cast<double>(t.d);
        for (size_t i = 0; i < t.d; i++) {
            for (size_t j = 0; j < t.d; j++) {
                s.add(
                    Term{
                        ModeColor(static_cast<uint32_t>(i)),
                        ModeColor(static_cast<uint32_t>(j)),
                        ModeColor(static_cast<uint32_t>((i + j) % t.d))},
                    amp);
            }
        }
        return s;
    }
};

struct SpecPrinter {
    std::string operator()(const GhzTarget &t) const {
        return "GHZ{" + std::to_string(t.n) + "," + std::to_string(t.d) + "}";
    }
    std::string operator()(const WTarget &t) const {
        return "W{" + std::to_string(t.n) + "}";
    }
    std::string operator()(const DickeTarget &t) const {
        return "Dicke{" + std::to_string(t.n) + "," + std::to_string(t.m) + "}";
    }
    std::string operator()(const SrvTarget &t) const {
        return "SRV{" + std::to_string(t.a) + "," + std::to_string(t.b) + "," + std::to_string(t.c) + "}";
    }
    std::string operator()(const AmeTarget &t) const {
        return "AME{" + std::to_string(t.parties) + "," + std::to_string(t.d) + "}";
    }
};

}  // namespace

std::string to_string(const TargetSpec &spec) {
    return std::visit(SpecPrinter{}, spec);
}

QuantumState reference_state(const TargetSpec &spec) {
    return std::visit(ReferenceBuilder{}, spec);
}

std::string to_string(const SRVector &srv) {
    std::string out = "(";
    for (size_t k = 0; k < srv.ranks.size(); k++) {
        if (k > 0) {
            out += ",";
        }
        out += std::to_string(srv.ranks[k]);
    }
    return out + ")";
}

size_t reduced_rank(const QuantumState &state, size_t party) {
    if (party >= state.party_count()) {
        throw std::out_of_range("party index out of range");
    }
    if (state.empty()) {
        return 0;
    }
    // Coefficient matrix psi[mode of party][rest of the term]; the reduced
    // density matrix of the party is psi * psi^dagger.
    std::map<ModeColor, Eigen::Index> rows;
    std::map<Term, Eigen::Index> cols;
    for (const auto &[term, amp] : state.amplitudes()) {
        rows.try_emplace(term[party], static_cast<Eigen::Index>(rows.size()));
        Term rest = term;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(party));
        cols.try_emplace(std::move(rest), static_cast<Eigen::Index>(cols.size()));
    }
    Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (const auto &[term, amp] : state.amplitudes()) {
        Term rest = term;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(party));
        psi(rows.at(term[party]), cols.at(rest)) = amp;
    }
    Eigen::MatrixXcd rho = psi * psi.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    const auto &eig = solver.eigenvalues();
    double largest = eig.maxCoeff();
    if (largest <= 0) {
        return 0;
    }
    size_t rank = 0;
    for (Eigen::Index k = 0; k < eig.size(); k++) {
        if (eig(k) > kTolerance * largest) {
            rank++;
        }
    }
    return rank;
}

SRVector schmidt_rank_vector(const QuantumState &state) {
    if (state.party_count() < 2) {
        throw std::invalid_argument("Schmidt-rank vector needs at least two parties");
    }
    if (!state.is_normalized()) {
        throw std::invalid_argument("Schmidt-rank vector needs a normalized state");
    }
    SRVector srv;
    for (size_t p = 0; p < state.party_count(); p++) {
        srv.ranks.push_back(reduced_rank(state, p));
    }
    std::sort(srv.ranks.begin(), srv.ranks.end(), std::greater<>());
    return srv;
}

bool is_maximally_entangled(const QuantumState &state, double tol) {
    if (state.empty()) {
        return true;
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0;
    for (const auto &[term, amp] : state.amplitudes()) {
        double mag = std::abs(amp);
        lo = std::min(lo, mag);
        hi = std::max(hi, mag);
    }
    return hi - lo <= tol;
}

QuantumState strip_trigger(const QuantumState &state, size_t party) {
    if (party >= state.party_count()) {
        throw std::out_of_range("trigger index out of range");
    }
    if (state.party_count() < 2) {
        throw std::invalid_argument("cannot strip the only party of a state");
    }
    if (state.modes_of(party).size() > 1) {
        throw std::invalid_argument(
            "party " + std::to_string(party) + " is not a trigger: its mode varies across terms");
    }
    QuantumState out(state.party_count() - 1);
    for (const auto &[term, amp] : state.amplitudes()) {
        Term rest = term;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(party));
        out.add(rest, amp);
    }
    return out;
}

bool states_equal(const QuantumState &a, const QuantumState &b, double tol) {
    if (a.party_count() != b.party_count()) {
        return false;
    }
    if (a.empty() || b.empty()) {
        return a.empty() && b.empty();
    }
    const Term *anchor = nullptr;
    double best = -1;
    for (const auto &[term, amp] : a.amplitudes()) {
        if (std::abs(amp) > best) {
            best = std::abs(amp);
            anchor = &term;
        }
    }
    Amplitude ta = a.amplitude(*anchor);
    Amplitude tb = b.amplitude(*anchor);
    if (std::abs(tb) < kPruneThreshold) {
        return false;
    }
    Amplitude phase = (tb / std::abs(tb)) / (ta / std::abs(ta));
    for (const auto &[term, amp] : a.amplitudes()) {
        if (std::abs(amp * phase - b.amplitude(term)) > tol) {
            return false;
        }
    }
    for (const auto &[term, amp] : b.amplitudes()) {
        if (std::abs(a.amplitude(term) * phase - amp) > tol) {
            return false;
        }
    }
    return true;
}

std::string to_string(const StateClass &label) {
    switch (label.kind) {
        case StateClass::Kind::Ghz:
            return "GHZ{" + std::to_string(label.n) + "," + std::to_string(label.k) + "}";
        case StateClass::Kind::W:
            return "W{" + std::to_string(label.n) + "}";
        case StateClass::Kind::Dicke:
            return "Dicke{" + std::to_string(label.n) + "," + std::to_string(label.k) + "}";
        case StateClass::Kind::Other:
            break;
    }
    return "Other";
}

namespace {

using Relabeling = std::vector<std::map<ModeColor, ModeColor>>;

QuantumState relabel(const QuantumState &state, const Relabeling &maps) {
    QuantumState out(state.party_count());
    for (const auto &[term, amp] : state.amplitudes()) {
        Term t = term;
        for (size_t p = 0; p < t.size(); p++) {
            t[p] = maps[p].at(t[p]);
        }
        out.add(t, amp);
    }
    return out;
}

bool matches_ghz(const QuantumState &state, double tol, size_t &d_out) {
    size_t n = state.party_count();
    size_t d = state.term_count();
    if (d < 2) {
        return false;
    }
    Relabeling maps(n);
    uint32_t k = 0;
    for (const auto &[term, amp] : state.amplitudes()) {
        for (size_t p = 0; p < n; p++) {
            if (!maps[p].emplace(term[p], ModeColor(k)).second) {
                return false;
            }
        }
        k++;
    }
    d_out = d;
    return states_equal(relabel(state, maps), reference_state(GhzTarget{n, d}), tol);
}

// Dicke states have exactly two modes per party. The excited mode of each
// party is pinned by how often it occurs; at m = n/2 both modes occur
// equally often, so party 0 is fixed and the rest follow from their
// co-occurrence with it.
bool matches_dicke(const QuantumState &state, double tol, size_t &m_out) {
    size_t n = state.party_count();
    if (n < 2 || n > 62) {
        return false;
    }
    std::vector<std::vector<ModeColor>> modes(n);
    for (size_t p = 0; p < n; p++) {
        modes[p] = state.modes_of(p);
        if (modes[p].size() != 2) {
            return false;
        }
    }
    for (size_t m = 1; 2 * m <= n; m++) {
        if (binomial(n, m) != state.term_count()) {
            continue;
        }
        uint64_t excited_count = binomial(n - 1, m - 1);
        Relabeling maps(n);
        bool ok = true;
        auto assign = [&](size_t p, ModeColor excited) {
            for (ModeColor c : modes[p]) {
                maps[p][c] = ModeColor(c == excited ? 1 : 0);
            }
        };
        if (2 * m != n) {
            for (size_t p = 0; p < n && ok; p++) {
                std::map<ModeColor, uint64_t> counts;
                for (const auto &[term, amp] : state.amplitudes()) {
                    counts[term[p]]++;
                }
                ModeColor excited = counts[modes[p][0]] == excited_count ? modes[p][0] : modes[p][1];
                ok = counts[excited] == excited_count;
                assign(p, excited);
            }
        } else {
            ModeColor anchor = modes[0][0];
            assign(0, anchor);
            uint64_t both = m >= 2 ? binomial(n - 2, m - 2) : 0;
            for (size_t p = 1; p < n && ok; p++) {
                std::map<ModeColor, uint64_t> joint;
                for (const auto &[term, amp] : state.amplitudes()) {
                    if (term[0] == anchor) {
                        joint[term[p]]++;
                    }
                }
                bool first = joint[modes[p][0]] == both;
                bool second = joint[modes[p][1]] == both;
                ok = first != second;
                assign(p, first ? modes[p][0] : modes[p][1]);
            }
        }
        if (ok && states_equal(relabel(state, maps), dicke_state(n, m), tol)) {
            m_out = m;
            return true;
        }
    }
    return false;
}

}  // namespace

StateClass classify(const QuantumState &state, double tol) {
    StateClass label;
    size_t n = state.party_count();
    if (n < 2 || state.empty()) {
        return label;
    }
    size_t k = 0;
    if (matches_ghz(state, tol, k)) {
        return {StateClass::Kind::Ghz, n, k};
    }
    if (matches_dicke(state, tol, k)) {
        if (k == 1) {
            return {StateClass::Kind::W, n, 1};
        }
        return {StateClass::Kind::Dicke, n, k};
    }
    return label;
}

}  // namespace pairgraph
