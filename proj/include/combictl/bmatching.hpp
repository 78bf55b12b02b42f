#pragma once

#include <numeric>
#include <queue>

#include "core.hpp"

// Maximum-cardinality degree-constrained subgraph of a multigraph (loops
// allowed, a loop adds 2 to its endpoint's degree). Realized by the
// classical gadget reduction to maximum matching in a general graph.

namespace combictl {

/// A small multigraph on vertices 0..num_vertices-1. An edge (v, v) is a loop.
struct Multigraph {
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges;
};

namespace detail {

/// Maximum matching in a general graph (Edmonds' blossom algorithm,
/// O(V^3)). Returns match[v] = partner or -1.
class BlossomMatcher {
public:
    explicit BlossomMatcher(int n) : n_(n), adj_(n) {}

    void add_edge(int u, int v) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }

    std::vector<int> solve() {
        match_.assign(n_, -1);
        // greedy warm start
        for (int v = 0; v < n_; ++v)
            if (match_[v] == -1)
                for (int u : adj_[v])
                    if (match_[u] == -1) {
                        match_[v] = u;
                        match_[u] = v;
                        break;
                    }
        for (int v = 0; v < n_; ++v)
            if (match_[v] == -1) {
                int u = find_augmenting_path(v);
                while (u != -1) {
                    int pv = parent_[u];
                    int ppv = match_[pv];
                    match_[u] = pv;
                    match_[pv] = u;
                    u = ppv;
                }
            }
        return match_;
    }

private:
    int lca(int a, int b) {
        std::vector<char> used(n_, 0);
        for (;;) {
            a = base_[a];
            used[a] = 1;
            if (match_[a] == -1) break;
            a = parent_[match_[a]];
        }
        for (;;) {
            b = base_[b];
            if (used[b]) return b;
            b = parent_[match_[b]];
        }
    }

    void mark_path(std::vector<char>& blossom, int v, int b, int child) {
        while (base_[v] != b) {
            blossom[base_[v]] = 1;
            blossom[base_[match_[v]]] = 1;
            parent_[v] = child;
            child = match_[v];
            v = parent_[match_[v]];
        }
    }

    int find_augmenting_path(int root) {
        used_.assign(n_, 0);
        parent_.assign(n_, -1);
        base_.resize(n_);
        std::iota(base_.begin(), base_.end(), 0);
        used_[root] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int to : adj_[v]) {
                if (base_[v] == base_[to] || match_[v] == to) continue;
                if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
                    // blossom found, contract it
                    int curbase = lca(v, to);
                    std::vector<char> blossom(n_, 0);
                    mark_path(blossom, v, curbase, to);
                    mark_path(blossom, to, curbase, v);
                    for (int i = 0; i < n_; ++i)
                        if (blossom[base_[i]]) {
                            base_[i] = curbase;
                            if (!used_[i]) {
                                used_[i] = 1;
                                q.push(i);
                            }
                        }
                } else if (parent_[to] == -1) {
                    parent_[to] = v;
                    if (match_[to] == -1) return to;
                    used_[match_[to]] = 1;
                    q.push(match_[to]);
                }
            }
        }
        return -1;
    }

    int n_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_, parent_, base_;
    std::vector<char> used_;
};

}  // namespace detail

/// Maximum-cardinality edge subset with deg(v) <= capacity[v] for every
/// vertex (loops counting 2). Returns the selected edge indices, sorted.
///
/// Gadget: capacity[v] turns into that many slot nodes; every edge turns
/// into two nodes joined by an internal edge and connected to the slots of
/// their endpoints. A maximum matching either takes the internal edge
/// (edge unselected) or both slot attachments (edge selected).
inline std::vector<int> max_bmatching(const Multigraph& g,
                                      const std::vector<int>& capacity) {
    if (static_cast<int>(capacity.size()) != g.num_vertices)
        throw std::invalid_argument("capacity size does not match vertex count");
    for (int c : capacity)
        if (c < 0) throw std::invalid_argument("capacities must be non-negative");

    // incidence counts (loops count 2) to bound the number of useful slots
    std::vector<int> inc(g.num_vertices, 0);
    for (const auto& [u, v] : g.edges) {
        inc[u] += 1;
        inc[v] += 1;
    }

    std::vector<std::vector<int>> slot_nodes(g.num_vertices);
    int next = 0;
    for (int v = 0; v < g.num_vertices; ++v) {
        int slots = std::min(capacity[v], inc[v]);
        for (int s = 0; s < slots; ++s) slot_nodes[v].push_back(next++);
    }
    int first_edge_node = next;
    next += 2 * static_cast<int>(g.edges.size());

    detail::BlossomMatcher matcher(next);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [u, v] = g.edges[e];
        int a = first_edge_node + 2 * static_cast<int>(e);
        int b = a + 1;
        matcher.add_edge(a, b);
        for (int s : slot_nodes[u]) matcher.add_edge(a, s);
        for (int s : slot_nodes[v]) matcher.add_edge(b, s);
    }
    std::vector<int> match = matcher.solve();

    std::vector<int> selected;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        int a = first_edge_node + 2 * static_cast<int>(e);
        int b = a + 1;
        bool a_ext = match[a] != -1 && match[a] != b;
        bool b_ext = match[b] != -1 && match[b] != a;
        if (a_ext && b_ext) selected.push_back(static_cast<int>(e));
    }
    return selected;
}

}  // namespace combictl
