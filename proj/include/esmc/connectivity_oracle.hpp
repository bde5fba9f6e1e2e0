#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "esmc/connectivity.hpp"
#include "esmc/graph.hpp"

namespace esmc {

class OracleTooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr NodeId oracle_max_nodes = 16;
inline constexpr std::size_t oracle_max_edges = 40;

// Ground truth by exhaustion. The census comes from removal tests and direct
// inspection; mu_b and mu_c come from applying every (pair, orientation)
// switch and testing the result.
struct OracleReport {
    ConnectivityReport report;
    std::uint64_t events_on_adjacent_or_neighbor = 0; // must be zero
    std::uint64_t blocked_on_plain_pairs = 0;         // must be zero
    std::uint64_t mixed_pair_events = 0;              // bridge + non-bridge; must be zero
    std::uint64_t applied = 0;
    std::uint64_t blocked = 0;
    std::uint64_t adjacent = 0;
};

namespace detail {

using Mask = std::uint32_t;

struct MaskGraph {
    NodeId n = 0;
    std::vector<Mask> adj;

    explicit MaskGraph(const Graph& g) : n(g.node_count()), adj(g.node_count(), 0) {
        for (const Edge& e : g.edges())
            toggle(e);
    }

    void toggle(const Edge& e) {
        adj[e.u] ^= Mask{1} << e.v;
        adj[e.v] ^= Mask{1} << e.u;
    }

    bool has(NodeId a, NodeId b) const { return (adj[a] >> b & 1u) != 0; }

    bool connected() const {
        if (n <= 1)
            return true;
        const Mask all = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
        Mask seen = 1, frontier = 1;
        while (frontier) {
            Mask next = 0;
            for (Mask f = frontier; f; f &= f - 1)
                next |= adj[std::countr_zero(f)];
            frontier = next & ~seen;
            seen |= next;
        }
        return seen == all;
    }
};

} // namespace detail

inline OracleReport oracle_report(const Graph& g) {
    if (g.node_count() > oracle_max_nodes || g.edge_count() > oracle_max_edges)
        throw OracleTooLarge("oracle handles at most " + std::to_string(oracle_max_nodes) + " nodes and "
                             + std::to_string(oracle_max_edges) + " edges");

    OracleReport out;
    ConnectivityReport& rep = out.report;
    const std::vector<Edge>& edges = g.edges();
    const std::size_t m = edges.size();
    rep.m = m;

    detail::MaskGraph mg(g);
    rep.connected = mg.connected();
    if (!rep.connected)
        return out;

    std::vector<bool> is_bridge(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        mg.toggle(edges[i]);
        is_bridge[i] = !mg.connected();
        mg.toggle(edges[i]);
        rep.bridges += is_bridge[i];
    }

    auto joined_by_other = [&](const Edge& e, const Edge& f) {
        return mg.has(e.u, f.u) || mg.has(e.u, f.v) || mg.has(e.v, f.u) || mg.has(e.v, f.v);
    };

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const Edge& e = edges[i];
            const Edge& f = edges[j];
            const bool adjacent = e.shares_node_with(f);
            const bool neighbor = !adjacent && joined_by_other(e, f);
            const bool both_bridges = is_bridge[i] && is_bridge[j];

            if (both_bridges) {
                rep.adj_bridge_pairs += adjacent;
                rep.nbr_bridge_pairs += neighbor;
            } else if (!is_bridge[i] && !is_bridge[j]) {
                mg.toggle(e);
                mg.toggle(f);
                const bool cut = !mg.connected();
                mg.toggle(e);
                mg.toggle(f);
                if (cut) {
                    ++rep.pair_cuts;
                    rep.adj_pair_cuts += adjacent;
                    rep.nbr_pair_cuts += neighbor;
                }
            }

            for (const bool flip : {false, true}) {
                if (adjacent) {
                    ++out.adjacent;
                    continue;
                }
                const NodeId x = flip ? f.v : f.u;
                const NodeId y = flip ? f.u : f.v;
                const Edge add1 = Edge::normalized(e.u, x);
                const Edge add2 = Edge::normalized(e.v, y);
                if (mg.has(add1.u, add1.v) || mg.has(add2.u, add2.v)) {
                    ++out.blocked;
                    out.blocked_on_plain_pairs += !neighbor;
                    continue;
                }
                ++out.applied;
                mg.toggle(e);
                mg.toggle(f);
                mg.toggle(add1);
                mg.toggle(add2);
                const bool disconnects = !mg.connected();
                mg.toggle(add2);
                mg.toggle(add1);
                mg.toggle(f);
                mg.toggle(e);
                if (!disconnects)
                    continue;
                if (neighbor)
                    ++out.events_on_adjacent_or_neighbor;
                if (both_bridges)
                    ++rep.bridge_switch_cuts;
                else
                    ++rep.pair_switch_cuts;
                if (is_bridge[i] != is_bridge[j])
                    ++out.mixed_pair_events;
            }
        }
    }
    return out;
}

} // namespace esmc
