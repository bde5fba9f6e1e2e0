#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "esmc/graph.hpp"

namespace esmc {

// True iff the graph has a single connected component. O(n + m).
inline bool is_connected(const Graph& g) {
    const NodeId n = g.node_count();
    if (n <= 1)
        return true;
    std::vector<char> seen(n, 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    NodeId reached = 1;
    while (!stack.empty()) {
        const NodeId x = stack.back();
        stack.pop_back();
        for (const Incidence& inc : g.incident(x)) {
            if (!seen[inc.neighbor]) {
                seen[inc.neighbor] = 1;
                ++reached;
                stack.push_back(inc.neighbor);
            }
        }
    }
    return reached == n;
}

// Per-slot bridge flags over a DFS forest (low-link). Works on disconnected graphs.
inline std::vector<bool> bridge_flags(const Graph& g) {
    const NodeId n = g.node_count();
    constexpr auto unvisited = static_cast<std::uint32_t>(-1);
    constexpr auto no_slot = static_cast<EdgeIndex>(-1);
    std::vector<std::uint32_t> level(n, unvisited), low(n, 0), cursor(n, 0);
    std::vector<EdgeIndex> parent_slot(n, no_slot);
    std::vector<NodeId> parent(n, 0);
    std::vector<bool> bridge(g.edge_count(), false);
    std::vector<NodeId> stack;

    for (NodeId root = 0; root < n; ++root) {
        if (level[root] != unvisited)
            continue;
        level[root] = low[root] = 0;
        stack.push_back(root);
        while (!stack.empty()) {
            const NodeId x = stack.back();
            const auto inc = g.incident(x);
            bool descended = false;
            while (cursor[x] < inc.size()) {
                const Incidence a = inc[cursor[x]++];
                if (a.slot == parent_slot[x])
                    continue;
                if (level[a.neighbor] == unvisited) {
                    parent[a.neighbor] = x;
                    parent_slot[a.neighbor] = a.slot;
                    level[a.neighbor] = low[a.neighbor] = level[x] + 1;
                    stack.push_back(a.neighbor);
                    descended = true;
                    break;
                }
                low[x] = std::min(low[x], level[a.neighbor]);
            }
            if (descended)
                continue;
            stack.pop_back();
            if (parent_slot[x] != no_slot) {
                const NodeId p = parent[x];
                low[p] = std::min(low[p], low[x]);
                if (low[x] > level[p])
                    bridge[parent_slot[x]] = true;
            }
        }
    }
    return bridge;
}

// Census of the switches that can disconnect a connected graph.
//
// A switch on two nonadjacent edges disconnects the graph only when the
// edges form a cut (two bridges, or a pair of non-bridges that is a 2-edge
// cut) and no other edge joins two of their four endpoints; such a pair has
// exactly one disconnecting orientation out of the m(m-1) equally likely
// (pair, orientation) choices.
struct ConnectivityReport {
    bool connected = false;
    std::uint64_t m = 0;
    std::uint64_t bridges = 0;
    std::uint64_t adj_bridge_pairs = 0;
    std::uint64_t nbr_bridge_pairs = 0;
    std::uint64_t pair_cuts = 0;
    std::uint64_t adj_pair_cuts = 0;
    std::uint64_t nbr_pair_cuts = 0;
    // Numerators of mu_b and mu_c over m(m-1).
    std::uint64_t bridge_switch_cuts = 0;
    std::uint64_t pair_switch_cuts = 0;
    bool pair_cuts_ignored = false;

    std::uint64_t switch_choices() const { return m < 2 ? 0 : m * (m - 1); }

    double mu_b() const { return ratio(bridge_switch_cuts); }
    double mu_c() const { return ratio(pair_switch_cuts); }

    // Exact numerator of rho over switch_choices(); rho is 1 when no switch exists.
    std::uint64_t rho_numerator() const {
        return switch_choices() - bridge_switch_cuts - pair_switch_cuts;
    }

    std::optional<double> rho() const {
        if (!connected)
            return std::nullopt;
        if (switch_choices() == 0)
            return 1.0;
        return static_cast<double>(rho_numerator()) / static_cast<double>(switch_choices());
    }

    friend bool operator==(const ConnectivityReport&, const ConnectivityReport&) = default;

private:
    double ratio(std::uint64_t num) const {
        return switch_choices() == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(switch_choices());
    }
};

struct AnalyzeOptions {
    bool ignore_pair_cuts = false;
    NodeId root = 0;
};

namespace detail {

inline std::uint64_t choose2(std::uint64_t k) { return k < 2 ? 0 : k * (k - 1) / 2; }

struct PairTally {
    std::uint64_t adjacent = 0;
    std::uint64_t neighbor = 0;

    void add(const Graph& g, const Edge& e, const Edge& f) {
        if (e.shares_node_with(f))
            ++adjacent;
        else if (g.has_edge(e.u, f.u) || g.has_edge(e.u, f.v) || g.has_edge(e.v, f.u) || g.has_edge(e.v, f.v))
            ++neighbor;
    }
};

// Edges of one cover class, in cyclic order around the cycle they share.
// Removing all of them leaves one piece between each consecutive pair, so
// only pairs one or two steps apart can share a node or be joined by another
// edge.
inline void tally_class(const Graph& g, const std::vector<Edge>& cls, PairTally& tally) {
    const std::size_t s = cls.size();
    if (s <= 4) {
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = i + 1; j < s; ++j)
                tally.add(g, cls[i], cls[j]);
        return;
    }
    for (std::size_t i = 0; i < s; ++i) {
        tally.add(g, cls[i], cls[(i + 1) % s]);
        tally.add(g, cls[i], cls[(i + 2) % s]);
    }
}

// Working arrays of analyze, kept between calls so that repeated censuses of
// graphs of similar size do not go back to the allocator.
struct AnalyzeScratch {
    std::vector<std::uint32_t> level, cursor;
    std::vector<NodeId> parent;
    std::vector<EdgeIndex> parent_slot;
    std::vector<std::int64_t> cover;
    std::vector<std::uint64_t> b, bb, bbb, nb, bnb;
    std::vector<std::pair<NodeId, NodeId>> back;
    std::vector<NodeId> preorder, stack, skip, covered, sorted;
    std::vector<std::uint32_t> level_count, sweep, top, count;
    std::vector<Edge> cls;
};

inline AnalyzeScratch& thread_scratch() {
    thread_local AnalyzeScratch scratch;
    return scratch;
}

} // namespace detail

// One depth-first search yields connectivity and the bridge-pair census;
// the pair-cut census follows in linear time from the cover counts it leaves behind.
//
// Bridge pairs: per node j the search keeps b_j, bb_j, bbb_j, nb_j, bnb_j, the
// numbers of downward paths from j made of one bridge, two bridges, three
// bridges, a non-bridge then a bridge, and bridge, non-bridge, bridge. At the
// end of j's exploration C(b_j,2) + bb_j adjacent bridge pairs and
// bb_j(b_j-1) + bbb_j + b_j nb_j + bnb_j neighbor bridge pairs are counted.
//
// Pair cuts: two tree edges form a 2-edge cut iff the same set of back edges
// covers both; a back edge forms one with each tree edge it alone covers.
// Along a root path, two tree edges have the same cover set iff their cover
// counts agree and so does the covering back edge whose target is deepest.
// That back edge is assigned to every tree edge by sweeping back edges in
// order of decreasing target depth over a union-find that skips tree edges
// already assigned.
inline ConnectivityReport analyze(const Graph& g, AnalyzeOptions opts, detail::AnalyzeScratch& s) {
    const NodeId n = g.node_count();
    ConnectivityReport rep;
    rep.m = g.edge_count();
    rep.pair_cuts_ignored = opts.ignore_pair_cuts;
    if (n == 0 || opts.root >= n)
        return rep;

    constexpr auto unvisited = static_cast<std::uint32_t>(-1);
    constexpr auto no_slot = static_cast<EdgeIndex>(-1);

    auto& level = s.level;
    auto& cursor = s.cursor;
    auto& parent = s.parent;
    auto& parent_slot = s.parent_slot;
    auto& cover = s.cover; // back edges over the edge to the parent, once the node is finished
    auto& b = s.b;
    auto& bb = s.bb;
    auto& bbb = s.bbb;
    auto& nb = s.nb;
    auto& bnb = s.bnb;
    auto& back = s.back; // (source, ancestor target)
    auto& preorder = s.preorder;
    auto& stack = s.stack;
    level.assign(n, unvisited);
    cursor.assign(n, 0);
    parent.assign(n, 0);
    parent_slot.assign(n, no_slot);
    cover.assign(n, 0);
    for (auto* v : {&b, &bb, &bbb, &nb, &bnb})
        v->assign(n, 0);
    back.clear();
    preorder.clear();
    stack.clear();

    std::uint64_t bridges = 0, adj_bridges = 0, nbr_bridges = 0;

    level[opts.root] = 0;
    preorder.push_back(opts.root);
    stack.push_back(opts.root);
    while (!stack.empty()) {
        const NodeId x = stack.back();
        const auto inc = g.incident(x);
        bool descended = false;
        while (cursor[x] < inc.size()) {
            const Incidence a = inc[cursor[x]++];
            if (a.slot == parent_slot[x])
                continue;
            const NodeId y = a.neighbor;
            if (level[y] == unvisited) {
                parent[y] = x;
                parent_slot[y] = a.slot;
                level[y] = level[x] + 1;
                preorder.push_back(y);
                stack.push_back(y);
                descended = true;
                break;
            }
            if (level[y] < level[x]) {
                ++cover[x];
                --cover[y];
                if (!opts.ignore_pair_cuts)
                    back.emplace_back(x, y);
            }
        }
        if (descended)
            continue;
        stack.pop_back();

        // x is finished: its b is final, so back edges leaving x feed nb of their targets.
        for (const Incidence& a : inc)
            if (a.slot != parent_slot[x] && level[a.neighbor] < level[x])
                nb[a.neighbor] += b[x];

        bridges += b[x];
        adj_bridges += detail::choose2(b[x]) + bb[x];
        nbr_bridges += (b[x] == 0 ? 0 : bb[x] * (b[x] - 1)) + bbb[x] + b[x] * nb[x] + bnb[x];

        if (parent_slot[x] != no_slot) {
            const NodeId p = parent[x];
            cover[p] += cover[x];
            if (cover[x] == 0) {
                ++b[p];
                bb[p] += b[x];
                bbb[p] += bb[x];
                bnb[p] += nb[x];
            } else {
                nb[p] += b[x];
            }
        }
    }

    if (preorder.size() != n)
        return rep;

    rep.connected = true;
    rep.bridges = bridges;
    rep.adj_bridge_pairs = adj_bridges;
    rep.nbr_bridge_pairs = nbr_bridges;
    rep.bridge_switch_cuts = detail::choose2(bridges) - adj_bridges - nbr_bridges;

    if (opts.ignore_pair_cuts || back.empty())
        return rep;

    const auto nback = static_cast<std::uint32_t>(back.size());

    // Back edges by decreasing target level, ties by discovery order.
    auto& level_count = s.level_count;
    level_count.assign(n + 1, 0);
    for (const auto& [src, tgt] : back)
        ++level_count[n - level[tgt]];
    std::partial_sum(level_count.begin(), level_count.end(), level_count.begin());
    auto& sweep = s.sweep;
    sweep.resize(nback);
    for (std::uint32_t i = nback; i-- > 0;)
        sweep[--level_count[n - level[back[i].second]]] = i;

    auto& skip = s.skip;
    skip.resize(n);
    std::iota(skip.begin(), skip.end(), NodeId{0});
    auto find = [&](NodeId v) {
        while (skip[v] != v) {
            skip[v] = skip[skip[v]];
            v = skip[v];
        }
        return v;
    };
    constexpr auto no_back = static_cast<std::uint32_t>(-1);
    auto& top = s.top;
    top.assign(n, no_back);
    for (std::uint32_t bi : sweep) {
        const auto [src, tgt] = back[bi];
        NodeId v = find(src);
        while (level[v] > level[tgt]) {
            top[v] = bi;
            skip[v] = parent[v];
            v = find(parent[v]);
        }
    }

    // Group covered tree edges by (top, cover), keeping preorder (= depth order
    // within a group, since a group lies on one root path).
    auto& covered = s.covered;
    covered.clear();
    for (NodeId v : preorder)
        if (cover[v] > 0)
            covered.push_back(v);

    auto counting_sort = [&](std::vector<NodeId>& items, std::size_t buckets, auto key) {
        auto& count = s.count;
        auto& out = s.sorted;
        count.assign(buckets + 1, 0);
        for (NodeId v : items)
            ++count[key(v) + 1];
        std::partial_sum(count.begin(), count.end(), count.begin());
        out.resize(items.size());
        for (NodeId v : items)
            out[count[key(v)]++] = v;
        items.swap(out);
    };
    counting_sort(covered, nback + 1, [&](NodeId v) { return static_cast<std::size_t>(cover[v]); });
    counting_sort(covered, nback, [&](NodeId v) { return static_cast<std::size_t>(top[v]); });

    std::uint64_t pair_cuts = 0;
    detail::PairTally tally;
    auto& cls = s.cls;
    for (std::size_t i = 0; i < covered.size();) {
        const NodeId head = covered[i];
        std::size_t j = i;
        cls.clear();
        while (j < covered.size() && top[covered[j]] == top[head] && cover[covered[j]] == cover[head]) {
            const NodeId v = covered[j];
            cls.push_back(Edge::normalized(parent[v], v));
            ++j;
        }
        if (cover[head] == 1) {
            const auto [src, tgt] = back[top[head]];
            cls.push_back(Edge::normalized(src, tgt));
        }
        pair_cuts += detail::choose2(cls.size());
        detail::tally_class(g, cls, tally);
        i = j;
    }

    rep.pair_cuts = pair_cuts;
    rep.adj_pair_cuts = tally.adjacent;
    rep.nbr_pair_cuts = tally.neighbor;
    rep.pair_switch_cuts = pair_cuts - tally.adjacent - tally.neighbor;
    return rep;
}

inline ConnectivityReport analyze(const Graph& g, AnalyzeOptions opts = {}) {
    return analyze(g, opts, detail::thread_scratch());
}

} // namespace esmc
