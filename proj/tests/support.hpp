#pragma once

#include <combictl/bmatching.hpp>
#include <combictl/control.hpp>
#include <combictl/reductions.hpp>

// Independent oracles for the test suite. Everything here decides by plain
// enumeration through the public verify/apply path, on purpose sharing no
// code with the solvers it checks.

namespace testsupport {

using namespace combictl;

/// Minimum verifying leader set by enumerating every subset of the domain
/// through verify_solution. Exponential; keep domains small.
inline std::optional<Solution> enumerate_minimum(const ControlInstance& inst) {
    std::vector<VoterId> domain;
    for (const auto& [leader, bundle] : inst.kappa.bundles()) domain.push_back(leader);
    const int n = static_cast<int>(domain.size());
    int max_size = n;
    if (!inst.budget.is_unlimited()) max_size = std::min(max_size, *inst.budget.limit);
    for (int size = 0; size <= max_size; ++size) {
        std::vector<int> pick(size);
        std::function<std::optional<Solution>(int, int)> rec =
            [&](int start, int depth) -> std::optional<Solution> {
            if (depth == size) {
                Solution sol;
                for (int i : pick) sol.leaders.insert(domain[i]);
                if (verify_solution(inst, sol).ok) return sol;
                return std::nullopt;
            }
            for (int i = start; i + (size - depth) <= n; ++i) {
                pick[depth] = i;
                if (auto hit = rec(i + 1, depth + 1)) return hit;
            }
            return std::nullopt;
        };
        if (auto hit = rec(0, 0)) return hit;
    }
    return std::nullopt;
}

/// Best gap per at-most size over every leader subset of a path or cycle
/// component; the enumeration twin of the gap tables.
inline std::vector<int> enumerate_gap_curve(const std::vector<Voter>& voters,
                                            const BundlingFunction& kappa,
                                            const CandidateId& preferred, int cap) {
    const int n = static_cast<int>(voters.size());
    cap = std::min(cap, n);
    std::vector<int> best(cap + 1, 0);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        int r = __builtin_popcount(mask);
        if (r > cap) continue;
        std::set<VoterId> leaders;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) leaders.insert(voters[i].id);
        std::set<VoterId> covered = bundle_union(kappa, leaders);
        int gap = 0;
        for (const Voter& v : voters)
            if (covered.count(v.id)) gap += v.favorite == preferred ? 1 : -1;
        best[r] = std::max(best[r], gap);
    }
    for (int r = 1; r <= cap; ++r) best[r] = std::max(best[r], best[r - 1]);
    return best;
}

/// Maximum b-matching cardinality by trying every edge subset.
inline int brute_bmatching(const Multigraph& g, const std::vector<int>& caps) {
    const int m = static_cast<int>(g.edges.size());
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> deg(g.num_vertices, 0);
        for (int e = 0; e < m; ++e)
            if (mask & (1u << e)) {
                deg[g.edges[e].first] += 1;
                deg[g.edges[e].second] += 1;
            }
        bool ok = true;
        for (int v = 0; v < g.num_vertices; ++v)
            if (deg[v] > caps[v]) { ok = false; break; }
        if (ok) best = std::max(best, __builtin_popcount(mask));
    }
    return best;
}

// --- source-problem deciders (brute force) --------------------------------

inline bool has_independent_set(const SimpleGraph& g, int h) {
    const int n = g.num_vertices;
    if (h > n) return false;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != h) continue;
        bool ok = true;
        for (auto [u, v] : g.edges)
            if ((mask >> u & 1) && (mask >> v & 1)) { ok = false; break; }
        if (ok) return true;
    }
    return false;
}

inline bool has_dominating_set(const SimpleGraph& g, int h) {
    const int n = g.num_vertices;
    auto adj = g.adjacency();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) > h) continue;
        bool ok = true;
        for (int v = 0; v < n && ok; ++v) {
            if (mask >> v & 1) continue;
            bool dominated = false;
            for (int w : adj[v])
                if (mask >> w & 1) { dominated = true; break; }
            ok = dominated;
        }
        if (ok) return true;
    }
    return false;
}

inline bool has_clique(const SimpleGraph& g, int h) {
    const int n = g.num_vertices;
    if (h > n) return false;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != h) continue;
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            for (int v = u + 1; v < n; ++v)
                if ((mask >> u & 1) && (mask >> v & 1) && !g.has_edge(u, v)) {
                    ok = false;
                    break;
                }
        if (ok) return true;
    }
    return false;
}

inline bool is_satisfiable(const Cnf223& cnf) {
    for (std::uint32_t assignment = 0; assignment < (1u << cnf.num_vars); ++assignment) {
        bool all = true;
        for (const auto& clause : cnf.clauses) {
            bool sat = false;
            for (int lit : clause) {
                int v = std::abs(lit) - 1;
                bool val = assignment >> v & 1;
                if ((lit > 0) == val) { sat = true; break; }
            }
            if (!sat) { all = false; break; }
        }
        if (all) return true;
    }
    return false;
}

// --- small-graph and formula factories -------------------------------------

/// All connected graphs on exactly n vertices, deduplicated up to
/// isomorphism by trying every vertex permutation.
inline std::vector<SimpleGraph> connected_graphs_up_to_iso(int n) {
    std::vector<std::pair<int, int>> all_edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) all_edges.emplace_back(u, v);
    const int m = static_cast<int>(all_edges.size());

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
        perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    auto edge_bit = [&](int u, int v) {
        if (u > v) std::swap(u, v);
        for (int e = 0; e < m; ++e)
            if (all_edges[e] == std::make_pair(u, v)) return e;
        return -1;
    };

    std::set<std::uint32_t> canonical;
    std::vector<SimpleGraph> out;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        SimpleGraph g;
        g.num_vertices = n;
        for (int e = 0; e < m; ++e)
            if (mask >> e & 1) g.edges.push_back(all_edges[e]);
        if (!g.connected()) continue;
        std::uint32_t canon = ~0u;
        for (const auto& p : perms) {
            std::uint32_t relabeled = 0;
            for (int e = 0; e < m; ++e)
                if (mask >> e & 1)
                    relabeled |= 1u << edge_bit(p[all_edges[e].first],
                                                p[all_edges[e].second]);
            canon = std::min(canon, relabeled);
        }
        if (canonical.insert(canon).second) out.push_back(std::move(g));
    }
    return out;
}

/// All (2-2)-3SAT formulas on exactly n variables, as clause multisets of
/// distinct-variable literal sets, deduplicated up to variable renaming and
/// per-variable polarity swaps. A positive max_count stops early.
inline std::vector<Cnf223> all_223_formulas(int n, std::size_t max_count = 0) {
    // candidate clauses: sorted literal sets of size 2 or 3 over distinct vars
    std::vector<std::vector<int>> pool;
    std::vector<int> lits;
    for (int v = 1; v <= n; ++v) {
        lits.push_back(v);
        lits.push_back(-v);
    }
    const int L = static_cast<int>(lits.size());
    for (int a = 0; a < L; ++a)
        for (int b = a + 1; b < L; ++b) {
            if (std::abs(lits[a]) == std::abs(lits[b])) continue;
            pool.push_back({lits[a], lits[b]});
            for (int c = b + 1; c < L; ++c) {
                if (std::abs(lits[c]) == std::abs(lits[a]) ||
                    std::abs(lits[c]) == std::abs(lits[b]))
                    continue;
                pool.push_back({lits[a], lits[b], lits[c]});
            }
        }

    auto shape_ok = [&](const std::vector<int>& counts) {
        for (int c : counts)
            if (c > 2) return false;
        return true;
    };

    // canonical form under variable permutation x polarity flips
    std::vector<std::vector<int>> var_perms;
    {
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        do {
            var_perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
    }
    auto canonical_of = [&](const std::vector<std::vector<int>>& clauses) {
        std::string best;
        for (const auto& p : var_perms)
            for (std::uint32_t flips = 0; flips < (1u << n); ++flips) {
                std::vector<std::vector<int>> mapped;
                for (const auto& clause : clauses) {
                    std::vector<int> c2;
                    for (int lit : clause) {
                        int v = std::abs(lit) - 1;
                        int sign = lit > 0 ? 1 : -1;
                        if (flips >> v & 1) sign = -sign;
                        c2.push_back(sign * (p[v] + 1));
                    }
                    std::sort(c2.begin(), c2.end());
                    mapped.push_back(std::move(c2));
                }
                std::sort(mapped.begin(), mapped.end());
                std::string key;
                for (const auto& clause : mapped) {
                    for (int lit : clause) key += std::to_string(lit) + ",";
                    key += ";";
                }
                if (best.empty() || key < best) best = std::move(key);
            }
        return best;
    };

    std::vector<Cnf223> out;
    std::set<std::string> seen;
    std::vector<std::vector<int>> chosen;
    std::vector<int> pos(n, 0), neg(n, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (max_count != 0 && out.size() >= max_count) return;
        bool complete = true;
        for (int v = 0; v < n; ++v)
            if (pos[v] != 2 || neg[v] != 2) { complete = false; break; }
        if (complete) {
            if (seen.insert(canonical_of(chosen)).second) {
                Cnf223 cnf;
                cnf.num_vars = n;
                cnf.clauses = chosen;
                cnf.validate();
                out.push_back(std::move(cnf));
            }
            return;
        }
        for (std::size_t i = start; i < pool.size(); ++i) {
            bool ok = true;
            for (int lit : pool[i]) {
                int v = std::abs(lit) - 1;
                if ((lit > 0 ? pos : neg)[v] >= 2) { ok = false; break; }
            }
            if (!ok) continue;
            for (int lit : pool[i]) (lit > 0 ? pos : neg)[std::abs(lit) - 1] += 1;
            chosen.push_back(pool[i]);
            rec(i);  // clause multisets: the same clause may repeat
            chosen.pop_back();
            for (int lit : pool[i]) (lit > 0 ? pos : neg)[std::abs(lit) - 1] -= 1;
        }
    };
    rec(0);
    (void)shape_ok;
    return out;
}

/// One seeded random (2-2)-3SAT formula on n variables.
inline Cnf223 random_223_formula(int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("need at least two variables");
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 99);
    for (;;) {
        std::vector<int> pos(n, 0), neg(n, 0);
        std::vector<std::vector<int>> clauses;
        bool stuck = false;
        while (!stuck) {
            std::vector<int> open;
            for (int v = 1; v <= n; ++v) {
                for (int t = pos[v - 1]; t < 2; ++t) open.push_back(v);
                for (int t = neg[v - 1]; t < 2; ++t) open.push_back(-v);
            }
            if (open.empty()) break;
            std::size_t want = 2 + rng() % 2;
            if (open.size() < want) want = open.size();
            std::vector<int> clause;
            std::set<int> used_vars;
            for (int attempts = 0; attempts < 64 && clause.size() < want; ++attempts) {
                int lit = open[rng() % open.size()];
                if (used_vars.insert(std::abs(lit)).second) clause.push_back(lit);
            }
            if (clause.size() < 2) {
                stuck = true;
                break;
            }
            for (int lit : clause) (lit > 0 ? pos : neg)[std::abs(lit) - 1] += 1;
            std::sort(clause.begin(), clause.end());
            clauses.push_back(std::move(clause));
        }
        if (stuck) continue;
        Cnf223 cnf;
        cnf.num_vars = n;
        cnf.clauses = std::move(clauses);
        try {
            cnf.validate();
            return cnf;
        } catch (const std::invalid_argument&) {
            continue;
        }
    }
}

}  // namespace testsupport
