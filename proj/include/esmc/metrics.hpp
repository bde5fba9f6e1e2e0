#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "esmc/graph.hpp"

namespace esmc {

enum class MetricKind { clustering, average_distance };

inline std::string to_string(MetricKind k) {
    return k == MetricKind::clustering ? "clustering" : "distance";
}

inline MetricKind parse_metric(const std::string& s) {
    if (s == "clustering") return MetricKind::clustering;
    if (s == "distance") return MetricKind::average_distance;
    throw std::invalid_argument("unknown metric '" + s + "'");
}

inline std::uint64_t triangle_count(const Graph& g) {
    std::uint64_t closed = 0; // each triangle once per edge
    for (const Edge& e : g.edges()) {
        NodeId small = e.u, big = e.v;
        if (g.degree(small) > g.degree(big))
            std::swap(small, big);
        for (const Incidence& inc : g.incident(small))
            if (inc.neighbor != big && g.has_edge(inc.neighbor, big))
                ++closed;
    }
    return closed / 3;
}

// 3 * triangles / connected triples, with triples = sum_j C(d_j, 2). O(d_1 m).
inline double clustering_coefficient(const Graph& g) {
    std::uint64_t triples = 0;
    for (NodeId x = 0; x < g.node_count(); ++x) {
        const std::uint64_t d = g.degree(x);
        if (d >= 2)
            triples += d * (d - 1) / 2;
    }
    if (triples == 0)
        return 0.0;
    return 3.0 * static_cast<double>(triangle_count(g)) / static_cast<double>(triples);
}

// Mean shortest-path length over unordered node pairs, one BFS per node.
inline double average_distance(const Graph& g) {
    const NodeId n = g.node_count();
    if (n < 2)
        return 0.0;
    constexpr auto unreached = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> dist(n);
    std::vector<NodeId> queue(n);
    std::uint64_t total = 0;
    for (NodeId s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), unreached);
        dist[s] = 0;
        std::size_t head = 0, tail = 0;
        queue[tail++] = s;
        while (head < tail) {
            const NodeId x = queue[head++];
            for (const Incidence& inc : g.incident(x)) {
                if (dist[inc.neighbor] == unreached) {
                    dist[inc.neighbor] = dist[x] + 1;
                    total += dist[inc.neighbor];
                    queue[tail++] = inc.neighbor;
                }
            }
        }
        if (tail != n)
            throw std::invalid_argument("average distance is undefined on a disconnected graph");
    }
    return static_cast<double>(total) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

inline double evaluate(MetricKind kind, const Graph& g) {
    return kind == MetricKind::clustering ? clustering_coefficient(g) : average_distance(g);
}

} // namespace esmc
