#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "esmc/degree_sequence.hpp"
#include "esmc/random.hpp"

namespace esmc {

using NodeId = std::uint32_t;
using EdgeIndex = std::uint32_t;

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Edge {
    NodeId u = 0;
    NodeId v = 0;

    static Edge normalized(NodeId a, NodeId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

    bool touches(NodeId x) const { return u == x || v == x; }
    bool shares_node_with(const Edge& o) const { return touches(o.u) || touches(o.v); }

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Incidence {
    NodeId neighbor;
    EdgeIndex slot;
};

// Simple undirected graph over a fixed node set. Edges live in numbered slots;
// a switch rewrites two slots in place so that a uniform slot draw stays a
// uniform edge draw.
class Graph {
public:
    Graph() = default;

    explicit Graph(NodeId n) : n_(n), adjacency_(n) {}

    static Graph from_edges(NodeId n, std::span<const Edge> pairs) {
        Graph g(n);
        g.edges_.reserve(pairs.size());
        g.where_.reserve(pairs.size());
        g.members_.reserve(pairs.size() * 2);
        for (const Edge& e : pairs)
            g.add_edge(e.u, e.v);
        return g;
    }

    static Graph from_edges(NodeId n, std::initializer_list<Edge> pairs) {
        return from_edges(n, std::span<const Edge>(pairs.begin(), pairs.size()));
    }

    NodeId node_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeIndex slot) const { return edges_.at(slot); }

    std::span<const Incidence> incident(NodeId x) const { return adjacency_[x]; }
    std::size_t degree(NodeId x) const { return adjacency_[x].size(); }

    std::vector<Degree> degrees() const {
        std::vector<Degree> d(n_);
        for (NodeId x = 0; x < n_; ++x)
            d[x] = static_cast<Degree>(adjacency_[x].size());
        return d;
    }

    bool has_edge(NodeId a, NodeId b) const {
        if (a == b)
            return false;
        return members_.count(key(a, b)) != 0;
    }

    // Appends a new slot. Throws on self-loops, duplicates, or out-of-range endpoints.
    EdgeIndex add_edge(NodeId a, NodeId b) {
        if (a >= n_ || b >= n_)
            throw GraphError("edge (" + std::to_string(a) + "," + std::to_string(b)
                             + ") has an endpoint outside [0," + std::to_string(n_) + ")");
        if (a == b)
            throw GraphError("self-loop at node " + std::to_string(a));
        if (has_edge(a, b))
            throw GraphError("duplicate edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
        const auto slot = static_cast<EdgeIndex>(edges_.size());
        edges_.push_back(Edge::normalized(a, b));
        where_.push_back({0, 0});
        attach(slot);
        return slot;
    }

    // Swaps the content of a slot. The caller guarantees that `e` is absent and
    // not a self-loop; used by the switch primitive and rollback.
    void rewrite_slot(EdgeIndex slot, Edge e) {
        detach(slot);
        edges_[slot] = Edge::normalized(e.u, e.v);
        attach(slot);
    }

    // Two graphs are equal when they have the same node count and the same
    // edge in every slot.
    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

    // Edge set as a sorted list, independent of slot layout.
    std::vector<Edge> sorted_edges() const {
        std::vector<Edge> out = edges_;
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::uint64_t key(NodeId a, NodeId b) const {
        if (a > b)
            std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }

    void attach(EdgeIndex slot) {
        const Edge& e = edges_[slot];
        where_[slot] = {static_cast<std::uint32_t>(adjacency_[e.u].size()),
                        static_cast<std::uint32_t>(adjacency_[e.v].size())};
        adjacency_[e.u].push_back({e.v, slot});
        adjacency_[e.v].push_back({e.u, slot});
        members_.insert(key(e.u, e.v));
    }

    void detach(EdgeIndex slot) {
        const Edge& e = edges_[slot];
        unlink(e.u, where_[slot][0]);
        unlink(e.v, where_[slot][1]);
        members_.erase(key(e.u, e.v));
    }

    // Swap-remove position `pos` from x's incidence list, fixing the moved entry's back-pointer.
    void unlink(NodeId x, std::uint32_t pos) {
        auto& list = adjacency_[x];
        const Incidence moved = list.back();
        list[pos] = moved;
        list.pop_back();
        if (pos < list.size()) {
            const Edge& me = edges_[moved.slot];
            where_[moved.slot][me.u == x ? 0 : 1] = pos;
        }
    }

    NodeId n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::array<std::uint32_t, 2>> where_; // position of each slot in adjacency_[u], adjacency_[v]
    std::vector<std::vector<Incidence>> adjacency_;
    std::unordered_set<std::uint64_t> members_;
};

// ---------------------------------------------------------------------------
// Edge switch

enum class Orientation { a, b };

enum class SwitchStatus { applied, adjacent, blocked };

struct SwitchRecord {
    EdgeIndex first = 0;
    EdgeIndex second = 0;
    Edge removed_first;
    Edge removed_second;
    Edge added_first;
    Edge added_second;

    friend bool operator==(const SwitchRecord&, const SwitchRecord&) = default;
};

struct SwitchOutcome {
    SwitchStatus status = SwitchStatus::adjacent;
    std::optional<SwitchRecord> record;
};

// With slot `first` = (j,k) and slot `second` = (x,y), orientation a installs
// (j,x),(k,y) and orientation b installs (j,y),(k,x). The graph is left as is
// when the edges share a node or a replacement edge already exists.
inline SwitchOutcome switch_edges(Graph& g, EdgeIndex first, EdgeIndex second, Orientation orientation) {
    if (first >= g.edge_count() || second >= g.edge_count() || first == second)
        throw GraphError("switch needs two distinct valid edge indices");
    const Edge e1 = g.edge(first);
    const Edge e2 = g.edge(second);
    if (e1.shares_node_with(e2))
        return {SwitchStatus::adjacent, std::nullopt};

    const NodeId j = e1.u, k = e1.v;
    NodeId x = e2.u, y = e2.v;
    if (orientation == Orientation::b)
        std::swap(x, y);
    if (g.has_edge(j, x) || g.has_edge(k, y))
        return {SwitchStatus::blocked, std::nullopt};

    SwitchRecord rec{first, second, e1, e2, Edge::normalized(j, x), Edge::normalized(k, y)};
    g.rewrite_slot(first, rec.added_first);
    g.rewrite_slot(second, rec.added_second);
    return {SwitchStatus::applied, rec};
}

// Switches applied since the last checkpoint, oldest first.
class SwitchJournal {
public:
    void record(const SwitchRecord& r) { records_.push_back(r); }
    const std::vector<SwitchRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }
    void clear() { records_.clear(); }

private:
    std::vector<SwitchRecord> records_;
};

// Replays the journal backwards, restoring every slot; leaves the journal empty.
inline void rollback(Graph& g, SwitchJournal& journal) {
    const auto& recs = journal.records();
    for (auto it = recs.rbegin(); it != recs.rend(); ++it) {
        g.rewrite_slot(it->first, it->removed_first);
        g.rewrite_slot(it->second, it->removed_second);
    }
    journal.clear();
}

struct AttemptOutcome {
    SwitchStatus status = SwitchStatus::adjacent;
    EdgeIndex first = 0;
    EdgeIndex second = 0;
    Orientation orientation = Orientation::a;
    std::optional<SwitchRecord> record;
};

// Uniform unordered slot pair, then a fair orientation coin: every
// (pair, orientation) has probability 1/(m(m-1)).
inline AttemptOutcome attempt_switch(Graph& g, RandomStream& rng) {
    const std::uint64_t m = g.edge_count();
    if (m < 2)
        throw GraphError("a switch attempt needs at least two edges");
    auto i = static_cast<EdgeIndex>(rng.uniform_below(m));
    auto j = static_cast<EdgeIndex>(rng.uniform_below(m - 1));
    if (j >= i)
        ++j;
    if (i > j)
        std::swap(i, j);
    const Orientation o = rng.coin() ? Orientation::b : Orientation::a;
    SwitchOutcome s = switch_edges(g, i, j, o);
    return {s.status, i, j, o, s.record};
}

// ---------------------------------------------------------------------------
// Edge-list text format: "n m" then m lines "u v".

inline Graph read_edge_list(std::istream& in) {
    long long n = -1, m = -1;
    if (!(in >> n >> m) || n < 0 || m < 0 || n > static_cast<long long>(UINT32_MAX))
        throw GraphError("edge list must start with non-negative \"n m\"");
    Graph g(static_cast<NodeId>(n));
    for (long long i = 0; i < m; ++i) {
        long long u = -1, v = -1;
        if (!(in >> u >> v))
            throw GraphError("edge list ended after " + std::to_string(i) + " of " + std::to_string(m) + " edges");
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw GraphError("edge " + std::to_string(i) + " has an endpoint outside [0," + std::to_string(n) + ")");
        g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
    std::string extra;
    if (in >> extra)
        throw GraphError("trailing content after " + std::to_string(m) + " edges: '" + extra + "'");
    return g;
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.node_count() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges())
        out << e.u << ' ' << e.v << '\n';
}

} // namespace esmc
