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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "pairgraph/errors.h"

namespace pairgraph {

std::string to_string(FeasibilityKind kind) {
    switch (kind) {
        case FeasibilityKind::Feasible:
            return "feasible";
        case FeasibilityKind::InfeasiblePairSources:
            return "infeasible-pair-sources";
        case FeasibilityKind::NonexistentState:
            return "nonexistent-state";
    }
    return "unknown";
}

FeasibilityVerdict srv_feasibility(size_t a, size_t b, size_t c) {
    if (c < 1 || b < c || a < b) {
        throw std::invalid_argument(
            "SRV entries must satisfy A >= B >= C >= 1, got (" + std::to_string(a) + "," + std::to_string(b) + "," +
            std::to_string(c) + ")");
    }
    FeasibilityVerdict v;
    v.a = a;
    v.b = b;
    v.c = c;
    v.via_b = std::min(1 + (a - b), c);
    v.via_c = std::min(1 + (a - c), b - 1);
    if (a > b * c) {
        v.kind = FeasibilityKind::NonexistentState;
        v.lhs = a;
        v.rhs = b * c;
        return v;
    }
    v.lhs = 1 + v.via_b + v.via_c;
    v.rhs = a;
    v.kind = v.lhs >= a ? FeasibilityKind::Feasible : FeasibilityKind::InfeasiblePairSources;
    return v;
}

std::string describe(const FeasibilityVerdict &v) {
    std::string head = to_string(v.kind) + ": ";
    if (v.kind == FeasibilityKind::NonexistentState) {
        return head + "A = " + std::to_string(v.a) + " > B*C = " + std::to_string(v.b * v.c);
    }
    std::string sum = "1 + min(" + std::to_string(1 + v.a - v.b) + ", " + std::to_string(v.c) + ") + min(" +
                      std::to_string(1 + v.a - v.c) + ", " + std::to_string(v.b - 1) + ") = " + std::to_string(v.lhs);
    return head + sum + (v.kind == FeasibilityKind::Feasible ? " >= " : " < ") + std::to_string(v.rhs);
}

std::vector<FeasibilityVerdict> srv_table(size_t max_a) {
    std::vector<FeasibilityVerdict> cells;
    for (size_t a = 1; a <= max_a; a++) {
        for (size_t b = 1; b <= a; b++) {
            for (size_t c = 1; c <= b; c++) {
                cells.push_back(srv_feasibility(a, b, c));
            }
        }
    }
    return cells;
}

TermGroups group_matchings_by_term(const ExperimentGraph &graph) {
    if (graph.vertex_count() % 2 != 0) {
        throw std::invalid_argument("graph has an odd number of vertices");
    }
    TermGroups groups;
    Term term(graph.vertex_count());
    for (auto &m : enumerate_perfect_matchings(graph)) {
        for (EdgeId id : m.edge_ids) {
            const Edge &e = graph.edge(id);
            term[e.u] = e.color_u;
            term[e.v] = e.color_v;
        }
        groups[term].push_back(std::move(m));
    }
    return groups;
}

namespace {

bool half_red(const Edge &e) {
    return (e.color_u.value == 1) != (e.color_v.value == 1);
}

size_t red_end(const Edge &e) {
    return e.color_u.value == 1 ? e.u : e.v;
}

std::vector<WeightClass> drop_empty(std::vector<WeightClass> classes) {
    std::erase_if(classes, [](const WeightClass &c) {
        return c.members.empty();
    });
    return classes;
}

}  // namespace

std::vector<WeightClass> w_weight_classes(const ExperimentGraph &graph, size_t hub) {
    std::vector<WeightClass> classes{{"alpha", {}}, {"beta", {}}, {"gamma", {}}};
    for (const auto &e : graph.edges()) {
        size_t slot = 2;
        if (half_red(e)) {
            slot = red_end(e) == hub ? 0 : 1;
        }
        classes[slot].members.push_back(e.id);
    }
    return drop_empty(std::move(classes));
}

std::vector<WeightClass> dicke_weight_classes(const ExperimentGraph &graph, size_t m) {
    size_t first_red = graph.vertex_count() - std::min(m, graph.vertex_count());
    std::vector<WeightClass> classes{{"alpha", {}}, {"beta", {}}, {"gamma", {}}, {"delta", {}}};
    for (const auto &e : graph.edges()) {
        size_t slot;
        if (half_red(e)) {
            slot = red_end(e) >= first_red ? 0 : 1;
        } else if (e.color_u.value == 1) {
            slot = 2;
        } else {
            slot = 3;
        }
        classes[slot].members.push_back(e.id);
    }
    return drop_empty(std::move(classes));
}

namespace {

std::vector<size_t> class_of_edges(const ExperimentGraph &graph, std::span<const WeightClass> classes) {
    constexpr size_t kNone = static_cast<size_t>(-1);
    std::vector<size_t> owner(graph.edge_count(), kNone);
    std::set<std::string> ids;
    for (size_t j = 0; j < classes.size(); j++) {
        if (!ids.insert(classes[j].id).second) {
            throw std::invalid_argument("duplicate weight class '" + classes[j].id + "'");
        }
        for (EdgeId id : classes[j].members) {
            graph.edge(id);
            if (owner[id.value] != kNone) {
                throw std::invalid_argument(
                    "edge " + std::to_string(id.value) + " belongs to more than one weight class");
            }
            owner[id.value] = j;
        }
    }
    for (size_t k = 0; k < owner.size(); k++) {
        if (owner[k] == kNone) {
            throw std::invalid_argument("edge " + std::to_string(k) + " is not in any weight class");
        }
    }
    return owner;
}

}  // namespace

std::map<Term, Polynomial> term_polynomials(const ExperimentGraph &graph, std::span<const WeightClass> classes) {
    auto owner = class_of_edges(graph, classes);
    std::map<Term, Polynomial> polys;
    for (const auto &[term, matchings] : group_matchings_by_term(graph)) {
        Polynomial poly;
        for (const auto &m : matchings) {
            std::vector<unsigned> exps(classes.size(), 0);
            for (EdgeId id : m.edge_ids) {
                exps[owner[id.value]]++;
            }
            auto it = std::find_if(poly.begin(), poly.end(), [&](const Monomial &mono) {
                return mono.exponents == exps;
            });
            if (it == poly.end()) {
                poly.push_back({std::move(exps), 1.0});
            } else {
                it->coefficient += 1.0;
            }
        }
        polys.emplace(term, std::move(poly));
    }
    return polys;
}

double evaluate(const Polynomial &poly, std::span<const double> weights) {
    double total = 0;
    for (const auto &mono : poly) {
        double v = mono.coefficient;
        for (size_t j = 0; j < mono.exponents.size(); j++) {
            v *= std::pow(weights[j], static_cast<int>(mono.exponents[j]));
        }
        total += v;
    }
    return total;
}

ExperimentGraph apply_weights(
    const ExperimentGraph &graph,
    std::span<const WeightClass> classes,
    const std::map<std::string, double> &weights) {
    auto owner = class_of_edges(graph, classes);
    std::vector<Amplitude> w(graph.edge_count());
    for (size_t k = 0; k < w.size(); k++) {
        const auto &id = classes[owner[k]].id;
        auto it = weights.find(id);
        if (it == weights.end()) {
            throw std::invalid_argument("no weight given for class '" + id + "'");
        }
        w[k] = Amplitude{it->second, 0.0};
    }
    return graph.with_weights(w);
}

WWeights w_weight_closed_form(size_t n) {
    if (n < 4 || n % 2 != 0) {
        throw std::invalid_argument("W-state weights need an even n >= 4");
    }
    return WWeights{1.0, static_cast<double>(n - 1), 1.0};
}

namespace {

constexpr size_t kMaxRestarts = 100;
constexpr size_t kMaxIterations = 400;

// Residuals c_k / mean(c) - 1 over all term coefficients. Dividing by the
// mean removes the trivial all-zero root.
class CoefficientSystem {
   public:
    CoefficientSystem(std::vector<Polynomial> polys, std::vector<double> base, std::vector<size_t> unknowns)
        : polys_(std::move(polys)), base_(std::move(base)), unknowns_(std::move(unknowns)) {
    }

    size_t terms() const {
        return polys_.size();
    }
    size_t dims() const {
        return unknowns_.size();
    }

    std::vector<double> full(const Eigen::VectorXd &x) const {
        auto w = base_;
        for (size_t j = 0; j < unknowns_.size(); j++) {
            w[unknowns_[j]] = x(static_cast<Eigen::Index>(j));
        }
        return w;
    }

    // Returns false when the mean coefficient vanishes.
    bool residual(const Eigen::VectorXd &x, Eigen::VectorXd &r, Eigen::MatrixXd *jac) const {
        auto w = full(x);
        auto t = static_cast<Eigen::Index>(terms());
        auto p = static_cast<Eigen::Index>(dims());
        Eigen::VectorXd c(t);
        Eigen::MatrixXd dc = Eigen::MatrixXd::Zero(t, p);
        for (Eigen::Index k = 0; k < t; k++) {
            c(k) = evaluate(polys_[static_cast<size_t>(k)], w);
            if (jac == nullptr) {
                continue;
            }
            for (const auto &mono : polys_[static_cast<size_t>(k)]) {
                for (Eigen::Index j = 0; j < p; j++) {
                    size_t cls = unknowns_[static_cast<size_t>(j)];
                    unsigned e = mono.exponents[cls];
                    if (e == 0) {
                        continue;
                    }
                    double v = mono.coefficient * e * std::pow(w[cls], static_cast<int>(e) - 1);
                    for (size_t i = 0; i < w.size(); i++) {
                        if (i != cls) {
                            v *= std::pow(w[i], static_cast<int>(mono.exponents[i]));
                        }
                    }
                    dc(k, j) += v;
                }
            }
        }
        double mean = c.mean();
        if (std::abs(mean) < 1e-300) {
            return false;
        }
        r = c / mean - Eigen::VectorXd::Ones(t);
        if (jac != nullptr) {
            Eigen::RowVectorXd dmean = dc.colwise().mean();
            *jac = (dc * mean - c * dmean) / (mean * mean);
        }
        return r.allFinite();
    }

   private:
    std::vector<Polynomial> polys_;
    std::vector<double> base_;
    std::vector<size_t> unknowns_;
};

bool levenberg_marquardt(const CoefficientSystem &sys, Eigen::VectorXd &x) {
    Eigen::VectorXd r;
    Eigen::MatrixXd jac;
    if (!sys.residual(x, r, &jac)) {
        return false;
    }
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    for (size_t it = 0; it < kMaxIterations; it++) {
        if (r.lpNorm<Eigen::Infinity>() < 1e-14) {
            return true;
        }
        Eigen::MatrixXd normal = jac.transpose() * jac;
        Eigen::VectorXd grad = jac.transpose() * r;
        bool stepped = false;
        while (lambda < 1e12) {
            Eigen::MatrixXd damped = normal;
            damped.diagonal() += lambda * (normal.diagonal().array() + 1.0).matrix();
            Eigen::VectorXd step = damped.ldlt().solve(-grad);
            Eigen::VectorXd candidate = x + step;
            Eigen::VectorXd r2;
            if (sys.residual(candidate, r2, nullptr) && r2.squaredNorm() < cost) {
                x = candidate;
                lambda = std::max(lambda / 10, 1e-12);
                sys.residual(x, r, &jac);
                cost = r.squaredNorm();
                stepped = true;
                break;
            }
            lambda *= 10;
        }
        if (!stepped) {
            break;
        }
    }
    return r.lpNorm<Eigen::Infinity>() < 1e-12;
}

double magnitude_spread(const QuantumState &s) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0;
    for (const auto &[term, amp] : s.amplitudes()) {
        lo = std::min(lo, std::abs(amp));
        hi = std::max(hi, std::abs(amp));
    }
    return s.empty() ? 0.0 : hi - lo;
}

// Re-simulates and reports the amplitude spread, or a negative value when
// the weights do not give a maximally entangled state with every term.
double verify_weights(
    const ExperimentGraph &graph,
    std::span<const WeightClass> classes,
    const std::map<std::string, double> &weights,
    size_t expected_terms) {
    for (const auto &[id, w] : weights) {
        if (!std::isfinite(w) || std::abs(w) < 1e-9) {
            return -1;
        }
    }
    auto state = state_from_graph(apply_weights(graph, classes, weights));
    if (state.term_count() != expected_terms) {
        return -1;
    }
    auto normalized = normalize(state);
    if (!is_maximally_entangled(normalized)) {
        return -1;
    }
    return magnitude_spread(normalized);
}

}  // namespace

WeightSolution solve_weights(
    const ExperimentGraph &graph,
    std::span<const WeightClass> classes,
    const std::map<std::string, double> &pinned) {
    if (pinned.empty()) {
        throw std::invalid_argument("at least one weight class must be pinned");
    }
    auto poly_map = term_polynomials(graph, classes);
    if (poly_map.empty()) {
        throw Infeasible("graph has no perfect matchings");
    }

    std::vector<double> base(classes.size(), 1.0);
    std::vector<size_t> unknowns;
    std::vector<bool> is_pinned(classes.size(), false);
    for (const auto &[id, value] : pinned) {
        auto it = std::find_if(classes.begin(), classes.end(), [&](const WeightClass &c) {
            return c.id == id;
        });
        if (it == classes.end()) {
            throw std::invalid_argument("pinned class '" + id + "' does not exist");
        }
        size_t j = static_cast<size_t>(it - classes.begin());
        base[j] = value;
        is_pinned[j] = true;
    }
    for (size_t j = 0; j < classes.size(); j++) {
        if (!is_pinned[j]) {
            unknowns.push_back(j);
        }
    }

    std::vector<Polynomial> polys;
    for (auto &[term, poly] : poly_map) {
        polys.push_back(std::move(poly));
    }
    size_t term_count = polys.size();

    auto assignment = [&](const std::vector<double> &w) {
        std::map<std::string, double> out;
        for (size_t j = 0; j < classes.size(); j++) {
            out[classes[j].id] = w[j];
        }
        return out;
    };

    WeightSolution solution;

    // Closed form: single-monomial coefficients reduce "all equal" to ratios,
    // which are linear in log-weights.
    bool monomial = std::all_of(polys.begin(), polys.end(), [](const Polynomial &p) {
        return p.size() == 1 && p[0].coefficient > 0;
    });
    bool positive_pins = std::all_of(pinned.begin(), pinned.end(), [](const auto &kv) {
        return kv.second > 0;
    });
    if (monomial && positive_pins) {
        auto rows = static_cast<Eigen::Index>(term_count - 1);
        auto cols = static_cast<Eigen::Index>(unknowns.size());
        Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(rows, cols);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
        for (Eigen::Index k = 0; k < rows; k++) {
            const auto &cur = polys[static_cast<size_t>(k)][0];
            const auto &next = polys[static_cast<size_t>(k) + 1][0];
            rhs(k) = std::log(next.coefficient / cur.coefficient);
            for (size_t j = 0; j < classes.size(); j++) {
                double de = static_cast<double>(cur.exponents[j]) - static_cast<double>(next.exponents[j]);
                if (is_pinned[j]) {
                    rhs(k) -= de * std::log(base[j]);
                }
            }
            for (Eigen::Index j = 0; j < cols; j++) {
                size_t cls = unknowns[static_cast<size_t>(j)];
                lhs(k, j) = static_cast<double>(polys[static_cast<size_t>(k)][0].exponents[cls]) -
                            static_cast<double>(polys[static_cast<size_t>(k) + 1][0].exponents[cls]);
            }
        }
        Eigen::VectorXd logs = cols > 0 && rows > 0 ? Eigen::VectorXd(lhs.completeOrthogonalDecomposition().solve(rhs))
                                                    : Eigen::VectorXd::Zero(cols);
        if (rows == 0 || (lhs * logs - rhs).lpNorm<Eigen::Infinity>() < 1e-10) {
            auto w = base;
            for (size_t j = 0; j < unknowns.size(); j++) {
                w[unknowns[j]] = std::exp(logs(static_cast<Eigen::Index>(j)));
            }
            auto weights = assignment(w);
            double spread = verify_weights(graph, classes, weights, term_count);
            if (spread >= 0) {
                solution.weights = std::move(weights);
                solution.method = WeightSolution::Method::ClosedForm;
                solution.spread = spread;
                return solution;
            }
        }
    }

    CoefficientSystem sys(polys, base, unknowns);
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> magnitude(0.25, 2.0);
    std::bernoulli_distribution negative(0.5);
    double best_residual = std::numeric_limits<double>::infinity();
    for (size_t attempt = 0; attempt <= kMaxRestarts; attempt++) {
        Eigen::VectorXd x = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(unknowns.size()));
        if (attempt > 0) {
            for (Eigen::Index j = 0; j < x.size(); j++) {
                x(j) = magnitude(rng) * (negative(rng) ? -1.0 : 1.0);
            }
        }
        bool converged = levenberg_marquardt(sys, x);
        Eigen::VectorXd r;
        if (sys.residual(x, r, nullptr)) {
            best_residual = std::min(best_residual, r.lpNorm<Eigen::Infinity>());
        }
        if (!converged) {
            continue;
        }
        auto weights = assignment(sys.full(x));
        double spread = verify_weights(graph, classes, weights, term_count);
        if (spread >= 0) {
            solution.weights = std::move(weights);
            solution.method = WeightSolution::Method::Numeric;
            solution.spread = spread;
            solution.restarts = attempt;
            return solution;
        }
    }
    throw Infeasible(
        "no real weights make all " + std::to_string(term_count) +
        " term coefficients equal (best relative residual " + std::to_string(best_residual) + ")");
}

}  // namespace pairgraph
