#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "esmc/esmc.hpp"

namespace esmc::cli {

enum ExitCode : int {
    ok = 0,
    mismatch = 1,
    domain_failure = 2,
    usage = 64,
    bad_input = 66,
};

inline nlohmann::ordered_json report_record(const ConnectivityReport& r) {
    nlohmann::ordered_json j;
    j["connected"] = r.connected;
    j["m"] = r.m;
    if (!r.connected)
        return j;
    j["bridges"] = r.bridges;
    j["adj_bridge_pairs"] = r.adj_bridge_pairs;
    j["nbr_bridge_pairs"] = r.nbr_bridge_pairs;
    j["pair_cuts"] = r.pair_cuts;
    j["adj_pair_cuts"] = r.adj_pair_cuts;
    j["nbr_pair_cuts"] = r.nbr_pair_cuts;
    j["mu_b"] = r.mu_b();
    j["mu_c"] = r.mu_c();
    j["rho"] = *r.rho();
    return j;
}

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline DegreeSequence load_degrees(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open degree file '" + path + "'");
    try {
        return read_degree_file(in);
    } catch (const DegreeSequenceError& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open edge list '" + path + "'");
    try {
        return read_edge_list(in);
    } catch (const GraphError& e) {
        throw InputError(path + ": " + e.what());
    }
}

struct GenerateArgs {
    std::optional<std::size_t> n;
    std::optional<double> tau;
    std::string degrees_file;
    std::string heuristic = "sb";
    double q_plus = 0.1;
    std::optional<double> q_minus;
    double alpha = 0.1;
    std::uint64_t fixed_w = 1;
    std::string metric = "clustering";
    std::optional<std::uint64_t> delta;
    std::optional<double> gamma;
    std::uint64_t cap = 10'000;
    std::uint64_t seed = 1;
    std::uint64_t max_transitions = 1'000'000;
    std::uint64_t max_rejections = 1'000'000;
    bool ignore_pair_cuts = false;
    std::string out_file;
    std::string trace_file;
};

struct ExperimentArgs {
    double tau_from = 2.0;
    double tau_to = 3.0;
    double tau_step = 0.1;
    std::size_t runs = 600;
    std::size_t n = 1000;
    std::vector<std::string> heuristics{"gmz", "vl", "sb"};
    std::vector<double> q_plus{0.1};
    std::vector<double> alpha{0.1};
    std::vector<std::string> metrics{"clustering"};
    std::uint64_t cap = 10'000;
    std::optional<std::uint64_t> delta;
    std::optional<double> gamma;
    std::uint64_t seed = 1;
    std::uint64_t max_transitions = 1'000'000;
    unsigned threads = 1;
    bool ignore_pair_cuts = false;
    bool no_time = false;
    std::string out_file;
};

struct RhoArgs {
    std::string in_file;
    bool oracle = false;
    bool ignore_pair_cuts = false;
};

struct CheckArgs {
    std::string degrees_file;
};

inline int cmd_generate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
    RunConfig rc;
    try {
        rc.heuristic.kind = parse_heuristic(a.heuristic);
        rc.metric = parse_metric(a.metric);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
    if (!a.degrees_file.empty()) {
        if (a.n || a.tau) {
            err << "error: --degrees excludes --n and --tau\n";
            return usage;
        }
        const DegreeSequence seq = load_degrees(a.degrees_file);
        const Realizability r = is_realizable(seq);
        if (!r.ok()) {
            err << "error: degree sequence is not realizable: " << to_string(r) << '\n';
            return domain_failure;
        }
        rc.degrees = seq;
    } else if (a.n && a.tau) {
        rc.degrees = PowerLawSpec{*a.tau, *a.n};
    } else {
        err << "error: give either --degrees or both --n and --tau\n";
        return usage;
    }
    rc.heuristic.q_plus = a.q_plus;
    rc.heuristic.q_minus = a.q_minus;
    rc.heuristic.alpha = a.alpha;
    rc.heuristic.cap = a.cap;
    rc.heuristic.fixed_w = a.fixed_w;
    const HaltingDefaults hd = halting_defaults(rc.metric);
    rc.delta = a.delta.value_or(hd.delta);
    rc.gamma = a.gamma.value_or(hd.gamma);
    rc.seed = a.seed;
    rc.max_transitions = a.max_transitions;
    rc.max_rejections = a.max_rejections;
    rc.ignore_pair_cuts = a.ignore_pair_cuts;
    rc.keep_trace = !a.trace_file.empty();
    try {
        rc.validate();
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }

    RunResult result;
    try {
        result = run(rc);
    } catch (const RejectionCapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return domain_failure;
    }

    std::ostream* summary = &out;
    if (a.out_file.empty()) {
        write_edge_list(out, result.graph);
        summary = &err;
    } else {
        std::ofstream f(a.out_file);
        if (!f) {
            err << "error: cannot write '" << a.out_file << "'\n";
            return bad_input;
        }
        write_edge_list(f, result.graph);
    }
    if (rc.keep_trace) {
        std::ofstream f(a.trace_file);
        if (!f) {
            err << "error: cannot write '" << a.trace_file << "'\n";
            return bad_input;
        }
        write_trace_csv(f, result.stats);
    }

    const RunStats& s = result.stats;
    nlohmann::ordered_json j;
    j["n"] = result.graph.node_count();
    j["m"] = result.graph.edge_count();
    j["heuristic"] = a.heuristic;
    j["metric"] = to_string(rc.metric);
    j["transitions"] = s.t;
    j["g_final"] = s.g_final;
    j["g_bar_final"] = s.g_bar_final;
    j["net_switches"] = s.net_switches;
    j["applied"] = s.applied_total;
    j["undone"] = s.undone_total;
    j["rollbacks"] = s.rollbacks;
    j["w_final"] = s.w_final;
    j["rejected_sequences"] = s.rejected_sequences;
    j["hit_transition_cap"] = s.hit_transition_cap;
    if (s.rho_final)
        j["rho_final"] = *s.rho_final;
    j["run_seconds"] = s.run_seconds;
    j["total_seconds"] = s.total_seconds;
    *summary << j.dump() << '\n';
    return ok;
}

inline int cmd_experiment(const ExperimentArgs& a, std::ostream& out, std::ostream& err) {
    ExperimentConfig cfg;
    cfg.taus = tau_grid(a.tau_from, a.tau_to, a.tau_step);
    if (cfg.taus.empty()) {
        err << "error: empty tau grid\n";
        return usage;
    }
    if (a.runs < 1 || a.n < 2) {
        err << "error: need --runs >= 1 and --n >= 2\n";
        return usage;
    }
    cfg.n = a.n;
    cfg.runs = a.runs;
    try {
        for (const std::string& h : a.heuristics) {
            HeuristicParams p;
            p.kind = parse_heuristic(h);
            p.cap = a.cap;
            if (p.kind == HeuristicKind::vl) {
                for (double q : a.q_plus) {
                    p.q_plus = q;
                    cfg.heuristics.push_back(p);
                }
            } else if (p.kind == HeuristicKind::sb) {
                for (double al : a.alpha) {
                    p.alpha = al;
                    cfg.heuristics.push_back(p);
                }
            } else {
                cfg.heuristics.push_back(p);
            }
        }
        cfg.metrics.clear();
        for (const std::string& m : a.metrics)
            cfg.metrics.push_back(parse_metric(m));
        for (const auto& p : cfg.heuristics)
            p.validate();
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
    cfg.seed = a.seed;
    cfg.threads = a.threads;
    cfg.ignore_pair_cuts = a.ignore_pair_cuts;
    cfg.max_transitions = a.max_transitions;
    cfg.delta = a.delta;
    cfg.gamma = a.gamma;

    std::vector<ExperimentRow> rows;
    try {
        rows = run_experiment(cfg);
    } catch (const RejectionCapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return domain_failure;
    }
    if (a.out_file.empty()) {
        write_experiment_csv(out, rows, !a.no_time);
    } else {
        std::ofstream f(a.out_file);
        if (!f) {
            err << "error: cannot write '" << a.out_file << "'\n";
            return bad_input;
        }
        write_experiment_csv(f, rows, !a.no_time);
    }
    return ok;
}

inline int cmd_rho(const RhoArgs& a, std::ostream& out, std::ostream& err) {
    const Graph g = load_graph(a.in_file);
    if (g.node_count() == 0) {
        err << "error: graph has no nodes\n";
        return bad_input;
    }
    const ConnectivityReport rep = analyze(g, {a.ignore_pair_cuts});
    out << report_record(rep).dump() << '\n';
    if (!a.oracle)
        return ok;

    OracleReport oracle;
    try {
        oracle = oracle_report(g);
    } catch (const OracleTooLarge& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
    ConnectivityReport expected = oracle.report;
    if (a.ignore_pair_cuts && expected.connected) {
        expected.pair_cuts = expected.adj_pair_cuts = expected.nbr_pair_cuts = 0;
        expected.pair_switch_cuts = 0;
        expected.pair_cuts_ignored = true;
    }
    out << report_record(expected).dump() << '\n';
    const bool match = expected == rep;
    out << (match ? "MATCH" : "MISMATCH") << '\n';
    return match ? ok : mismatch;
}

inline int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream&) {
    const DegreeSequence seq = load_degrees(a.degrees_file);
    const Realizability r = is_realizable(seq);
    out << to_string(r) << '\n';
    return r.ok() ? ok : domain_failure;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Connected random graphs with a given degree sequence by edge switching"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "Generate one connected random graph");
    g->add_option("--n", gen.n, "Node count for power-law degrees");
    g->add_option("--tau", gen.tau, "Power-law exponent");
    g->add_option("--degrees", gen.degrees_file, "Degree file (whitespace-separated integers)");
    g->add_option("--heuristic", gen.heuristic, "gmz, vl, sb, or fixed");
    g->add_option("--q-plus", gen.q_plus, "VL growth factor q+");
    g->add_option("--q-minus", gen.q_minus, "VL shrink factor q- (default q+/(e-1))");
    g->add_option("--alpha", gen.alpha, "SB target success probability");
    g->add_option("--w", gen.fixed_w, "Budget for --heuristic fixed");
    g->add_option("--metric", gen.metric, "clustering or distance");
    g->add_option("--delta", gen.delta, "Halting window length");
    g->add_option("--gamma", gen.gamma, "Halting relative tolerance");
    g->add_option("--cap", gen.cap, "Upper bound W on w");
    g->add_option("--seed", gen.seed, "Random seed");
    g->add_option("--max-transitions", gen.max_transitions, "Safety cap on transitions");
    g->add_option("--max-rejections", gen.max_rejections, "Cap on rejected degree sequences");
    g->add_flag("--ignore-pair-cuts", gen.ignore_pair_cuts, "SB: rho = 1 - mu_b");
    g->add_option("--out", gen.out_file, "Edge-list output file (default stdout)");
    g->add_option("--trace", gen.trace_file, "Per-transition CSV trace");

    ExperimentArgs exp;
    auto* e = app.add_subcommand("experiment", "Sweep tau and aggregate R_conv, R_switch, R_w, R_time");
    e->add_option("--tau-from", exp.tau_from);
    e->add_option("--tau-to", exp.tau_to);
    e->add_option("--tau-step", exp.tau_step);
    e->add_option("--runs", exp.runs, "Degree sequences per tau");
    e->add_option("--n", exp.n);
    e->add_option("--heuristic", exp.heuristics, "Comma-separated: gmz,vl,sb,fixed")->delimiter(',');
    e->add_option("--q-plus", exp.q_plus, "VL q+ values")->delimiter(',');
    e->add_option("--alpha", exp.alpha, "SB alpha values")->delimiter(',');
    e->add_option("--metric", exp.metrics, "clustering,distance")->delimiter(',');
    e->add_option("--cap", exp.cap);
    e->add_option("--delta", exp.delta);
    e->add_option("--gamma", exp.gamma);
    e->add_option("--seed", exp.seed);
    e->add_option("--max-transitions", exp.max_transitions);
    e->add_option("--threads", exp.threads);
    e->add_flag("--ignore-pair-cuts", exp.ignore_pair_cuts);
    e->add_flag("--no-time", exp.no_time, "Leave r_time_s empty for reproducible output");
    e->add_option("--out", exp.out_file, "CSV output file (default stdout)");

    RhoArgs rho;
    auto* r = app.add_subcommand("rho", "Connectivity census and rho of an edge list");
    r->add_option("--in", rho.in_file, "Edge-list file")->required();
    r->add_flag("--oracle", rho.oracle, "Cross-check against exhaustive enumeration");
    r->add_flag("--ignore-pair-cuts", rho.ignore_pair_cuts);

    CheckArgs chk;
    auto* c = app.add_subcommand("check", "Realizability of a degree file");
    c->add_option("--degrees", chk.degrees_file, "Degree file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& pe) {
        err << "error: " << pe.what() << '\n';
        return usage;
    }

    try {
        if (g->parsed())
            return cmd_generate(gen, out, err);
        if (e->parsed())
            return cmd_experiment(exp, out, err);
        if (r->parsed())
            return cmd_rho(rho, out, err);
        return cmd_check(chk, out, err);
    } catch (const InputError& ie) {
        err << "error: " << ie.what() << '\n';
        return bad_input;
    }
}

} // namespace esmc::cli
