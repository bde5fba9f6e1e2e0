#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "esmc/connectivity.hpp"
#include "esmc/degree_sequence.hpp"
#include "esmc/graph.hpp"

namespace esmc {

class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Havel-Hakimi realization. Repeatedly takes the node with the highest
// residual degree and joins it to the nodes with the next highest residuals;
// ties go to the lowest node index. The result may be disconnected.
inline Graph havel_hakimi(const DegreeSequence& seq) {
    const auto n = static_cast<NodeId>(seq.size());
    std::vector<Degree> residual = seq.degrees();
    Graph g(n);

    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    auto by_residual = [&](NodeId a, NodeId b) {
        return residual[a] != residual[b] ? residual[a] > residual[b] : a < b;
    };

    for (;;) {
        std::sort(order.begin(), order.end(), by_residual);
        const NodeId hub = order[0];
        const Degree need = residual[hub];
        if (need == 0)
            break;
        if (need >= n)
            throw ConstructionError("degree sequence is not graphical");
        for (Degree i = 1; i <= need; ++i) {
            const NodeId other = order[i];
            if (residual[other] == 0)
                throw ConstructionError("degree sequence is not graphical");
            g.add_edge(hub, other);
            --residual[other];
        }
        residual[hub] = 0;
    }
    return g;
}

struct MergeResult {
    std::size_t merges = 0;
};

// Component labels in order of lowest node id; returns the component count.
inline std::size_t label_components(const Graph& g, std::vector<std::uint32_t>& label) {
    const NodeId n = g.node_count();
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    label.assign(n, unset);
    std::vector<NodeId> stack;
    std::uint32_t next = 0;
    for (NodeId s = 0; s < n; ++s) {
        if (label[s] != unset)
            continue;
        label[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const NodeId x = stack.back();
            stack.pop_back();
            for (const Incidence& inc : g.incident(x)) {
                if (label[inc.neighbor] == unset) {
                    label[inc.neighbor] = next;
                    stack.push_back(inc.neighbor);
                }
            }
        }
        ++next;
    }
    return next;
}

// Merges components with one switch each: a non-bridge edge of some component
// against any edge of another component, in the orientation that adds two
// cross edges. Deterministic.
inline MergeResult make_connected(Graph& g) {
    MergeResult result;
    std::vector<std::uint32_t> label;
    for (;;) {
        const std::size_t components = label_components(g, label);
        if (components <= 1)
            return result;

        const std::vector<bool> bridge = bridge_flags(g);
        std::optional<EdgeIndex> cycle_edge;
        for (EdgeIndex s = 0; s < g.edge_count(); ++s) {
            if (!bridge[s]) {
                cycle_edge = s;
                break;
            }
        }
        if (!cycle_edge)
            throw ConstructionError("disconnected graph without a cycle cannot be merged");

        const std::uint32_t home = label[g.edge(*cycle_edge).u];
        std::optional<EdgeIndex> other_edge;
        for (EdgeIndex s = 0; s < g.edge_count(); ++s) {
            if (label[g.edge(s).u] != home) {
                other_edge = s;
                break;
            }
        }
        if (!other_edge)
            throw ConstructionError("disconnected graph has an edgeless component");

        // Endpoints lie in different components, so neither orientation can be
        // blocked or adjacent.
        const SwitchOutcome out = switch_edges(g, *cycle_edge, *other_edge, Orientation::a);
        if (out.status != SwitchStatus::applied)
            throw ConstructionError("component merge switch was refused");
        ++result.merges;
    }
}

// Deterministic connected simple graph with exactly the given degree sequence.
inline Graph initial_graph(const DegreeSequence& seq) {
    const Realizability r = is_realizable(seq);
    if (!r.ok())
        throw ConstructionError("degree sequence is not realizable: " + to_string(r));
    Graph g = havel_hakimi(seq);
    make_connected(g);
    return g;
}

} // namespace esmc
