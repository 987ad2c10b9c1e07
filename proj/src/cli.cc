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

#include "pairgraph/cli.h"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "pairgraph/analysis.h"
#include "pairgraph/constructors.h"
#include "pairgraph/errors.h"
#include "pairgraph/io.h"

namespace pairgraph {

namespace {

struct TargetFlags {
    std::string target;
    size_t n = 0;
    size_t d = 0;
    size_t m = 0;
    size_t a = 0;
    size_t b = 0;
    size_t c = 0;
    size_t parties = 3;
};

void add_target_flags(CLI::App *cmd, TargetFlags &flags, bool required) {
    auto *opt = cmd->add_option("--target", flags.target, "ghz | w | dicke | srv | ame")
                    ->check(CLI::IsMember({"ghz", "w", "dicke", "srv", "ame"}));
    if (required) {
        opt->required();
    }
    cmd->add_option("--n", flags.n, "number of photons");
    cmd->add_option("--d", flags.d, "local dimension (ghz, ame)");
    cmd->add_option("--m", flags.m, "excitations (dicke)");
    cmd->add_option("--A", flags.a, "largest Schmidt rank (srv)");
    cmd->add_option("--B", flags.b, "middle Schmidt rank (srv)");
    cmd->add_option("--C", flags.c, "smallest Schmidt rank (srv)");
    cmd->add_option("--parties", flags.parties, "parties (ame)");
}

TargetSpec target_from_flags(const TargetFlags &f) {
    auto need = [&](size_t value, const char *flag) {
        if (value == 0) {
            throw std::invalid_argument(std::string("--target ") + f.target + " needs " + flag);
        }
    };
    if (f.target == "ghz") {
        need(f.n, "--n");
        need(f.d, "--d");
        return GhzTarget{f.n, f.d};
    }
    if (f.target == "w") {
        need(f.n, "--n");
        return WTarget{f.n};
    }
    if (f.target == "dicke") {
        need(f.n, "--n");
        need(f.m, "--m");
        return DickeTarget{f.n, f.m};
    }
    if (f.target == "srv") {
        need(f.a, "--A");
        need(f.b, "--B");
        need(f.c, "--C");
        return SrvTarget{f.a, f.b, f.c};
    }
    need(f.d, "--d");
    return AmeTarget{f.parties, f.d};
}

ExperimentGraph load_graph(const std::string &path, std::istream &in) {
    if (path.empty() || path == "-") {
        return read_graph(in);
    }
    return read_graph_file(path);
}

void emit(const std::string &text, const std::string &path, std::ostream &out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path);
    if (!file) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    file << text;
}

QuantumState simulated(const ExperimentGraph &g) {
    if (g.vertex_count() % 2 != 0) {
        throw std::invalid_argument(
            "graph has an odd number of vertices (" + std::to_string(g.vertex_count()) +
            "); pair sources always emit an even number of photons");
    }
    return state_from_graph(g);
}

}  // namespace

int cli_main(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err) {
    CLI::App app{"Design and simulate pair-source photonic experiments as colored multigraphs", "pairgraph"};
    app.require_subcommand(1);

    TargetFlags synth_flags;
    std::string synth_out;
    auto *synth = app.add_subcommand("synth", "build a graph realizing a target state");
    add_target_flags(synth, synth_flags, true);
    synth->add_option("--out", synth_out, "output file (default: stdout)");

    std::string graph_path;
    auto *simulate = app.add_subcommand("simulate", "print the normalized post-selected state of a graph");
    simulate->add_option("graph", graph_path, "graph document (default: stdin)");

    std::optional<size_t> trigger;
    auto *srv = app.add_subcommand("srv", "print the Schmidt-rank vector of a graph's state");
    srv->add_option("graph", graph_path, "graph document (default: stdin)");
    srv->add_option("--trigger", trigger, "vertex index to strip as a trigger first");

    auto *classify_cmd = app.add_subcommand("classify", "name the state family of a graph's state");
    classify_cmd->add_option("graph", graph_path, "graph document (default: stdin)");
    classify_cmd->add_option("--trigger", trigger, "vertex index to strip as a trigger first");

    std::vector<size_t> abc;
    auto *feasible = app.add_subcommand("feasible", "check whether SRV(A,B,C) can be built from pair sources");
    feasible->add_option("ranks", abc, "A B C")->expected(3)->required();

    size_t max_a = 0;
    std::string format = "text";
    auto *table = app.add_subcommand("table", "print the SRV feasibility grid");
    table->add_option("--max-a", max_a, "largest A")->required()->check(CLI::Range(size_t{2}, size_t{64}));
    table->add_option("--format", format, "text | csv")->check(CLI::IsMember({"text", "csv"}));

    std::string export_out;
    auto *dot = app.add_subcommand("export-dot", "render a graph as Graphviz DOT");
    dot->add_option("graph", graph_path, "graph document (default: stdin)");
    dot->add_option("--out", export_out, "output file (default: stdout)");

    auto *experiment = app.add_subcommand("export-experiment", "list the crystals of the corresponding setup");
    experiment->add_option("graph", graph_path, "graph document (default: stdin)");
    experiment->add_option("--out", export_out, "output file (default: stdout)");

    TargetFlags verify_flags;
    std::string expected_path;
    auto *verify = app.add_subcommand("verify", "check a graph against a target or an expected state");
    verify->add_option("graph", graph_path, "graph document (default: stdin)");
    add_target_flags(verify, verify_flags, false);
    verify->add_option("--expected", expected_path, "expected state listing (as printed by simulate)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*synth) {
            auto result = synthesize(target_from_flags(synth_flags));
            emit(write_graph(result.graph), synth_out, out);
            return kExitOk;
        }
        if (*simulate) {
            auto state = simulated(load_graph(graph_path, in));
            if (state.empty()) {
                err << "graph has no perfect matchings; the post-selected state is empty\n";
                return kExitOk;
            }
            out << format_state(normalize(state));
            return kExitOk;
        }
        if (*srv || *classify_cmd) {
            auto raw = simulated(load_graph(graph_path, in));
            if (raw.empty()) {
                err << "graph has no perfect matchings\n";
                return kExitRejected;
            }
            auto state = normalize(raw);
            if (trigger) {
                state = strip_trigger(state, *trigger);
            }
            if (*srv) {
                auto ranks = schmidt_rank_vector(state).ranks;
                for (size_t k = 0; k < ranks.size(); k++) {
                    out << (k ? " " : "") << ranks[k];
                }
                out << "\n";
            } else {
                out << to_string(classify(state)) << "\n";
            }
            return kExitOk;
        }
        if (*feasible) {
            auto verdict = srv_feasibility(abc[0], abc[1], abc[2]);
            out << describe(verdict) << "\n";
            return verdict.kind == FeasibilityKind::Feasible ? kExitOk : kExitRejected;
        }
        if (*table) {
            auto cells = srv_table(max_a);
            out << (format == "csv" ? format_srv_table_csv(cells) : format_srv_table(cells));
            return kExitOk;
        }
        if (*dot) {
            emit(export_dot(load_graph(graph_path, in)), export_out, out);
            return kExitOk;
        }
        if (*experiment) {
            emit(write_experiment(export_experiment(load_graph(graph_path, in))), export_out, out);
            return kExitOk;
        }
        if (*verify) {
            if (verify_flags.target.empty() == expected_path.empty()) {
                err << "verify needs exactly one of --target or --expected\n";
                return kExitUsage;
            }
            auto graph = load_graph(graph_path, in);
            std::string reason;
            if (!expected_path.empty()) {
                std::ifstream file(expected_path);
                if (!file) {
                    throw std::invalid_argument("cannot open '" + expected_path + "'");
                }
                auto expected = normalize(parse_state(file));
                auto raw = simulated(graph);
                if (raw.empty()) {
                    reason = "graph has no perfect matchings";
                } else if (!states_equal(normalize(raw), expected, 1e-6)) {
                    reason = "simulated state differs from the expected state";
                }
            } else {
                reason = verify_target(graph, target_from_flags(verify_flags));
            }
            if (!reason.empty()) {
                err << "verify failed: " << reason << "\n";
                return kExitRejected;
            }
            out << "ok\n";
            return kExitOk;
        }
    } catch (const Unrealizable &ex) {
        err << "unrealizable: " << ex.what() << "\n";
        return kExitRejected;
    } catch (const Infeasible &ex) {
        err << "infeasible: " << ex.what() << "\n";
        return kExitRejected;
    } catch (const VerificationFailure &ex) {
        err << "internal error: " << ex.what() << "\n";
        return kExitInternal;
    } catch (const std::exception &ex) {
        err << "error: " << ex.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace pairgraph
