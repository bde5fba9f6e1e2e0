#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "esmc/connectivity.hpp"
#include "esmc/construct.hpp"
#include "esmc/degree_sequence.hpp"
#include "esmc/graph.hpp"
#include "esmc/heuristics.hpp"
#include "esmc/metrics.hpp"
#include "esmc/random.hpp"

namespace esmc {

// ---------------------------------------------------------------------------
// Running mean of g and the halting rule

// Holds g_bar(t) = (g(0) + ... + g(t)) / (t + 1) for the last delta + 1 values of t.
class GBarWindow {
public:
    explicit GBarWindow(std::uint64_t delta) : ring_(delta + 1, 0.0) {
        if (delta < 1)
            throw std::invalid_argument("delta must be >= 1");
    }

    void push(double g) {
        sum_ += g;
        ++count_;
        ring_[(count_ - 1) % ring_.size()] = sum_ / static_cast<double>(count_);
    }

    bool empty() const { return count_ == 0; }
    std::uint64_t delta() const { return ring_.size() - 1; }
    // Index t of the latest value; requires !empty().
    std::uint64_t t() const { return count_ - 1; }
    double g_bar() const { return ring_[(count_ - 1) % ring_.size()]; }

    // g_bar(z) for z in [t - delta, t].
    double g_bar_at(std::uint64_t z) const {
        if (z > t() || t() - z > delta())
            throw std::out_of_range("g_bar index outside the window");
        return ring_[z % ring_.size()];
    }

private:
    double sum_ = 0.0;
    std::uint64_t count_ = 0;
    std::vector<double> ring_;
};

// Halts after transition t when t >= delta and every g_bar(z), t-delta < z <= t,
// is within relative distance gamma of g_bar(t - delta). A zero reference
// halts only if the whole window is zero.
inline bool halted(const GBarWindow& window, std::uint64_t t, std::uint64_t delta, double gamma) {
    if (window.empty() || t < delta || window.t() != t || delta > window.delta())
        return false;
    const double ref = window.g_bar_at(t - delta);
    for (std::uint64_t z = t - delta + 1; z <= t; ++z) {
        const double v = window.g_bar_at(z);
        if (ref == 0.0) {
            if (v != 0.0)
                return false;
        } else if (!(std::fabs((v - ref) / ref) <= gamma)) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Transitions

struct TransitionResult {
    std::uint64_t attempts = 0;
    std::uint64_t applied = 0;
    bool undone = false;
    std::uint64_t new_w = 0;
    std::optional<double> rho; // set when the test computed (or re-recorded) rho
};

// One chain: the graph being randomized, its w policy, and the switches of the
// transition in flight.
class Chain {
public:
    Chain(Graph graph, HeuristicParams params, bool ignore_pair_cuts = false)
        : graph_(std::move(graph)), heuristic_(make_heuristic(params)), ignore_pair_cuts_(ignore_pair_cuts) {
        if (params.kind == HeuristicKind::sb) {
            const ConnectivityReport rep = analyze(graph_, {ignore_pair_cuts_});
            if (!rep.connected)
                throw std::invalid_argument("chain must start from a connected graph");
            current_rho_ = *rep.rho();
            last_report_ = rep;
            heuristic_ = sb_seed(heuristic_, current_rho_);
        }
    }

    const Graph& graph() const { return graph_; }
    const HeuristicState& heuristic() const { return heuristic_; }
    std::uint64_t w() const { return heuristic_.w; }
    // rho of the current graph (SB only).
    double current_rho() const { return current_rho_; }
    const std::optional<ConnectivityReport>& last_report() const { return last_report_; }

    // w switch attempts, one connectivity test, rollback on failure, then the w update.
    TransitionResult transition(RandomStream& rng) {
        TransitionResult res;
        res.attempts = heuristic_.w;
        journal_.clear();
        if (graph_.edge_count() >= 2) {
            for (std::uint64_t i = 0; i < res.attempts; ++i) {
                AttemptOutcome a = attempt_switch(graph_, rng);
                if (a.record)
                    journal_.record(*a.record);
            }
        }
        res.applied = journal_.size();

        bool success = true;
        if (heuristic_.params.kind == HeuristicKind::sb) {
            ConnectivityReport rep = analyze(graph_, {ignore_pair_cuts_});
            success = rep.connected;
            if (success) {
                current_rho_ = *rep.rho();
                last_report_ = rep;
            }
            // After a rollback the graph is the previous one, whose rho is known.
            res.rho = current_rho_;
        } else {
            success = res.applied == 0 || is_connected(graph_);
        }

        if (!success) {
            rollback(graph_, journal_);
            res.undone = true;
        }
        journal_.clear();
        heuristic_ = update(heuristic_, success, res.rho);
        res.new_w = heuristic_.w;
        return res;
    }

    Graph release() && { return std::move(graph_); }

private:
    Graph graph_;
    HeuristicState heuristic_;
    SwitchJournal journal_;
    bool ignore_pair_cuts_ = false;
    double current_rho_ = 1.0;
    std::optional<ConnectivityReport> last_report_;
};

// ---------------------------------------------------------------------------
// Runs

struct HaltingDefaults {
    std::uint64_t delta;
    double gamma;
};

inline HaltingDefaults halting_defaults(MetricKind k) {
    return k == MetricKind::clustering ? HaltingDefaults{60, 1e-4} : HaltingDefaults{30, 1e-3};
}

struct RunConfig {
    std::variant<DegreeSequence, PowerLawSpec> degrees = PowerLawSpec{};
    HeuristicParams heuristic;
    MetricKind metric = MetricKind::clustering;
    std::uint64_t delta = 60;
    double gamma = 1e-4;
    std::uint64_t max_transitions = 1'000'000;
    std::uint64_t seed = 1;
    bool ignore_pair_cuts = false;
    bool halting = true;    // false: always run max_transitions
    bool keep_trace = false;
    std::uint64_t max_rejections = 1'000'000;

    void validate() const {
        if (delta < 1)
            throw std::invalid_argument("delta must be >= 1");
        if (!(gamma > 0.0))
            throw std::invalid_argument("gamma must be > 0");
        heuristic.validate();
        if (const auto* spec = std::get_if<PowerLawSpec>(&degrees))
            spec->validate();
    }
};

struct TraceRow {
    std::uint64_t t = 0;
    double g = 0.0;
    double g_bar = 0.0;
    std::uint64_t w = 0;
    std::uint64_t applied = 0;
    bool undone = false;
    std::optional<double> rho;
};

struct RunStats {
    std::uint64_t t = 0;
    double g_final = 0.0;
    double g_bar_final = 0.0;
    std::uint64_t net_switches = 0;
    std::uint64_t applied_total = 0;
    std::uint64_t undone_total = 0;
    std::uint64_t w_final = 0;
    std::uint64_t rollbacks = 0;
    std::uint64_t rejected_sequences = 0;
    bool hit_transition_cap = false;
    std::optional<double> rho_final;
    std::optional<double> mu_b_final;
    std::optional<double> mu_c_final;
    double run_seconds = 0.0;   // construction + chain, excluding degree sampling
    double total_seconds = 0.0; // everything
    std::vector<TraceRow> trace;
};

struct RunResult {
    DegreeSequence degrees;
    Graph graph;
    RunStats stats;
};

class RunError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline bool has_degree_sequence(const Graph& g, const DegreeSequence& seq) {
    if (g.node_count() != seq.size())
        return false;
    const auto d = g.degrees();
    for (std::size_t j = 0; j < d.size(); ++j)
        if (d[j] != seq[j])
            return false;
    return true;
}

inline RunResult run(const RunConfig& config, RandomStream& rng) {
    using clock = std::chrono::steady_clock;
    config.validate();
    const auto total_start = clock::now();

    RunStats stats;
    DegreeSequence seq;
    if (const auto* explicit_seq = std::get_if<DegreeSequence>(&config.degrees)) {
        const Realizability r = is_realizable(*explicit_seq);
        if (!r.ok())
            throw RunError("degree sequence is not realizable: " + to_string(r));
        seq = *explicit_seq;
    } else {
        SampledSequence s = sample_realizable(std::get<PowerLawSpec>(config.degrees), rng, config.max_rejections);
        seq = std::move(s.sequence);
        stats.rejected_sequences = s.rejected;
    }

    const auto run_start = clock::now();
    Chain chain(initial_graph(seq), config.heuristic, config.ignore_pair_cuts);

    GBarWindow window(config.delta);
    double g = evaluate(config.metric, chain.graph());
    window.push(g);
    if (config.keep_trace) {
        std::optional<double> rho0;
        if (config.heuristic.kind == HeuristicKind::sb)
            rho0 = chain.current_rho();
        stats.trace.push_back({0, g, window.g_bar(), chain.w(), 0, false, rho0});
    }

    std::uint64_t t = 0;
    bool stopped = false;
    while (t < config.max_transitions) {
        const TransitionResult tr = chain.transition(rng);
        ++t;
        if (tr.undone) {
            ++stats.rollbacks;
            stats.undone_total += tr.applied;
            // The graph is back to the previous state, so g is unchanged.
        } else if (tr.applied > 0) {
            g = evaluate(config.metric, chain.graph());
        }
        stats.applied_total += tr.applied;
        window.push(g);
#ifndef NDEBUG
        if (!is_connected(chain.graph()) || !has_degree_sequence(chain.graph(), seq))
            throw std::logic_error("chain left the space of connected realizations");
#endif
        if (config.keep_trace)
            stats.trace.push_back({t, g, window.g_bar(), tr.new_w, tr.applied, tr.undone, tr.rho});
        if (config.halting && halted(window, t, config.delta, config.gamma)) {
            stopped = true;
            break;
        }
    }
    stats.hit_transition_cap = !stopped;

    stats.t = t;
    stats.g_final = g;
    stats.g_bar_final = window.g_bar();
    stats.net_switches = stats.applied_total - stats.undone_total;
    stats.w_final = chain.w();
    if (config.heuristic.kind == HeuristicKind::sb && chain.last_report()) {
        stats.rho_final = chain.current_rho();
        stats.mu_b_final = chain.last_report()->mu_b();
        stats.mu_c_final = chain.last_report()->mu_c();
    }

    Graph final_graph = std::move(chain).release();
    if (!is_connected(final_graph) || !has_degree_sequence(final_graph, seq))
        throw std::logic_error("final graph is not a connected realization of the degree sequence");

    const auto end = clock::now();
    stats.run_seconds = std::chrono::duration<double>(end - run_start).count();
    stats.total_seconds = std::chrono::duration<double>(end - total_start).count();
    return {std::move(seq), std::move(final_graph), std::move(stats)};
}

inline RunResult run(const RunConfig& config) {
    RandomStream rng(config.seed);
    return run(config, rng);
}

inline void write_trace_csv(std::ostream& out, const RunStats& stats) {
    out << "t,g,g_bar,w,applied,undone,rho\n";
    out << std::setprecision(12);
    for (const TraceRow& r : stats.trace) {
        out << r.t << ',' << r.g << ',' << r.g_bar << ',' << r.w << ',' << r.applied << ',' << (r.undone ? 1 : 0)
            << ',';
        if (r.rho)
            out << *r.rho;
        out << '\n';
    }
}

// ---------------------------------------------------------------------------
// Experiments

struct ExperimentConfig {
    std::vector<double> taus;
    std::size_t n = 1000;
    std::size_t runs = 1;
    std::vector<HeuristicParams> heuristics;
    std::vector<MetricKind> metrics{MetricKind::clustering};
    std::uint64_t seed = 1;
    unsigned threads = 1;
    bool ignore_pair_cuts = false;
    std::uint64_t max_transitions = 1'000'000;
    std::optional<std::uint64_t> delta; // per-metric default when unset
    std::optional<double> gamma;
};

struct ExperimentRow {
    double tau = 0.0;
    HeuristicKind heuristic = HeuristicKind::gmz;
    double param = 0.0;
    MetricKind metric = MetricKind::clustering;
    std::size_t runs = 0;
    double r_conv = 0.0;
    double r_switch = 0.0;
    double r_w = 0.0;
    double r_time_s = 0.0;
    double mean_mu_b = 0.0; // SB only
    std::uint64_t capped_runs = 0;
};

// Run i of every (tau, heuristic, metric) cell uses seed + i, so all cells at
// one tau share their degree sequences. Aggregation is by index, so the
// thread count does not affect results.
inline std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg) {
    if (cfg.runs < 1)
        throw std::invalid_argument("an experiment needs at least one run");
    if (cfg.taus.empty() || cfg.heuristics.empty() || cfg.metrics.empty())
        throw std::invalid_argument("empty experiment grid");

    struct Cell {
        double tau;
        HeuristicParams heuristic;
        MetricKind metric;
    };
    std::vector<Cell> cells;
    for (double tau : cfg.taus)
        for (const auto& h : cfg.heuristics)
            for (MetricKind metric : cfg.metrics)
                cells.push_back({tau, h, metric});

    const std::size_t jobs = cells.size() * cfg.runs;
    std::vector<RunStats> results(jobs);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

    auto worker = [&] {
        for (;;) {
            const std::size_t job = next.fetch_add(1);
            if (job >= jobs || failed.load())
                return;
            const Cell& cell = cells[job / cfg.runs];
            const std::size_t index = job % cfg.runs;
            RunConfig rc;
            rc.degrees = PowerLawSpec{cell.tau, cfg.n};
            rc.heuristic = cell.heuristic;
            rc.metric = cell.metric;
            const HaltingDefaults hd = halting_defaults(cell.metric);
            rc.delta = cfg.delta.value_or(hd.delta);
            rc.gamma = cfg.gamma.value_or(hd.gamma);
            rc.max_transitions = cfg.max_transitions;
            rc.seed = cfg.seed + index;
            rc.ignore_pair_cuts = cfg.ignore_pair_cuts;
            try {
                RunResult r = run(rc);
                results[job] = std::move(r.stats);
            } catch (...) {
                if (!failed.exchange(true))
                    failure = std::current_exception();
                return;
            }
        }
    };

    const unsigned threads = std::max(1u, cfg.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    std::vector<ExperimentRow> rows;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        ExperimentRow row;
        row.tau = cells[c].tau;
        row.heuristic = cells[c].heuristic.kind;
        row.param = cells[c].heuristic.reported_param();
        row.metric = cells[c].metric;
        row.runs = cfg.runs;
        double g = 0, g_bar = 0, sw = 0, w = 0, time = 0, mu_b = 0;
        for (std::size_t i = 0; i < cfg.runs; ++i) {
            const RunStats& s = results[c * cfg.runs + i];
            g += s.g_final;
            g_bar += s.g_bar_final;
            sw += static_cast<double>(s.net_switches);
            w += static_cast<double>(s.w_final);
            time += s.run_seconds;
            mu_b += s.mu_b_final.value_or(0.0);
            row.capped_runs += s.hit_transition_cap;
        }
        const auto k = static_cast<double>(cfg.runs);
        row.r_conv = g / g_bar;
        row.r_switch = sw / k;
        row.r_w = w / k;
        row.r_time_s = time / k;
        row.mean_mu_b = mu_b / k;
        rows.push_back(row);
    }
    return rows;
}

inline void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows, bool with_time = true) {
    out << "tau,heuristic,param,metric,runs,r_conv,r_switch,r_w,r_time_s\n";
    out << std::setprecision(10);
    for (const ExperimentRow& r : rows) {
        out << r.tau << ',' << to_string(r.heuristic) << ',' << r.param << ',' << to_string(r.metric) << ','
            << r.runs << ',' << r.r_conv << ',' << r.r_switch << ',' << r.r_w << ',';
        if (with_time)
            out << r.r_time_s;
        out << '\n';
    }
}

// Inclusive grid from..to by step; empty when step <= 0 or to < from.
inline std::vector<double> tau_grid(double from, double to, double step) {
    std::vector<double> out;
    if (!(step > 0.0) || to < from)
        return out;
    const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(std::round((from + static_cast<double>(i) * step) * 1e9) / 1e9);
    return out;
}

} // namespace esmc
