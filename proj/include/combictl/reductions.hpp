#pragma once

#include <array>
#include <numeric>
#include <random>

#include "control.hpp"

// Inter-variant reductions and hardness-instance generators. The
// generators emit the constructions literally, including every
// score-calibration dummy, so their advertised score differences can be
// asserted after construction. They double as test factories: the source
// problem (independent set, dominating set, clique, SAT) is decided by
// plain exhaustive search in the test code and compared against the
// generated control instance.

namespace combictl {

// ---------------------------------------------------------------------------
// Destructive -> constructive (per-rival two-candidate sub-instances)
// ---------------------------------------------------------------------------

namespace detail {

inline VoterId fresh_voter_id(std::string base, const ControlInstance& inst) {
    auto taken = [&](const VoterId& id) {
        if (inst.election.find_voter(id) != nullptr) return true;
        return inst.find_pool_voter(id) != nullptr;
    };
    while (taken(base)) base += "_";
    return base;
}

}  // namespace detail

/// One two-candidate constructive instance per rival g: restrict voters and
/// bundles to {p, g}-voters, insert one extra p-voter v_d, and ask whether
/// g can be made a co-winner. The extra voter turns g's weak win into a
/// strict defeat of p in the original election.
///
/// Soundness is one-sided: a sub-instance solution always lifts to a
/// destructive solution, but a destructive solution whose leaders favor
/// third candidates (with {p,g}-voters only inside their bundles) has no
/// counterpart after the restriction, so a yes-instance can have all-no
/// sub-instances. solve_destructive therefore works per defeater on the
/// unrestricted bundling graph instead of routing through this split.
///
/// In delete mode v_d must never be deletable (deleting it would fake the
/// strict margin), so it is kept outside the bundling domain.
inline std::vector<ControlInstance> split_destructive_to_constructive(
    const ControlInstance& inst) {
    if (inst.variant.goal != Goal::destructive)
        throw std::invalid_argument("split expects a destructive instance");

    const VoterId vd = detail::fresh_voter_id("vd", inst);
    std::vector<ControlInstance> out;
    for (const CandidateId& rival : inst.election.candidates()) {
        if (rival == inst.preferred) continue;
        auto keep = [&](const CandidateId& fav) {
            return fav == inst.preferred || fav == rival;
        };

        ControlInstance sub;
        sub.variant = {Goal::constructive, inst.variant.mode};
        sub.preferred = rival;
        sub.budget = inst.budget;

        std::vector<Voter> registered;
        for (const Voter& v : inst.election.voters())
            if (keep(v.favorite)) registered.push_back(v);
        registered.push_back({vd, inst.preferred});
        sub.election = Election({inst.preferred, rival}, registered);

        std::set<VoterId> kept_ids;
        if (inst.variant.mode == Mode::add) {
            for (const Voter& w : inst.pool)
                if (keep(w.favorite)) {
                    sub.pool.push_back(w);
                    kept_ids.insert(w.id);
                }
        } else {
            for (const Voter& v : inst.election.voters())
                if (keep(v.favorite)) kept_ids.insert(v.id);
        }

        std::map<VoterId, std::set<VoterId>> bundles;
        for (const auto& [leader, bundle] : inst.kappa.bundles()) {
            if (!kept_ids.count(leader)) continue;
            std::set<VoterId> restricted;
            for (const VoterId& member : bundle)
                if (kept_ids.count(member)) restricted.insert(member);
            bundles[leader] = std::move(restricted);
        }
        sub.kappa = BundlingFunction{std::move(bundles)};
        sub.validate();
        out.push_back(std::move(sub));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Two-candidate delete -> add via the complement voter set
// ---------------------------------------------------------------------------

/// Id of the complement twin of a registered voter.
inline VoterId complement_id(const VoterId& id) { return id + "~"; }

/// Undoes complement_id.
inline VoterId complement_original_id(const VoterId& id) {
    if (id.empty() || id.back() != '~')
        throw std::invalid_argument("not a complement voter id: " + id);
    return id.substr(0, id.size() - 1);
}

/// Builds the add-variant instance whose pool is the complement voter set:
/// the same voters as V but with the two candidates' roles swapped. Leader
/// sets correspond one-to-one (via complement_id), and the instance is a
/// yes-instance iff the original is. Pool ids carry a "~" suffix because
/// one election cannot hold the same id twice.
inline ControlInstance complement_del_to_add(const ControlInstance& inst) {
    if (inst.variant.mode != Mode::del)
        throw std::invalid_argument("complement reduction expects a delete variant");
    if (inst.election.candidates().size() != 2)
        throw std::invalid_argument("complement reduction needs exactly two candidates");

    const CandidateId& a = inst.election.candidates()[0];
    const CandidateId& b = inst.election.candidates()[1];
    auto swapped = [&](const CandidateId& c) { return c == a ? b : a; };

    ControlInstance out;
    out.variant = {inst.variant.goal, Mode::add};
    out.election = inst.election;
    out.preferred = inst.preferred;
    out.budget = inst.budget;
    for (const Voter& v : inst.election.voters())
        out.pool.push_back({complement_id(v.id), swapped(v.favorite)});

    std::map<VoterId, std::set<VoterId>> bundles;
    for (const auto& [leader, bundle] : inst.kappa.bundles()) {
        std::set<VoterId> twin;
        for (const VoterId& member : bundle) twin.insert(complement_id(member));
        bundles[complement_id(leader)] = std::move(twin);
    }
    out.kappa = BundlingFunction{std::move(bundles)};
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Hardness-instance generators
// ---------------------------------------------------------------------------

/// Simple undirected graph on vertices 0..num_vertices-1, no loops.
struct SimpleGraph {
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges;

    bool has_edge(int u, int v) const {
        for (auto [a, b] : edges)
            if ((a == u && b == v) || (a == v && b == u)) return true;
        return false;
    }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(num_vertices);
        for (auto [u, v] : edges) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        return adj;
    }

    bool connected() const {
        if (num_vertices == 0) return false;
        auto adj = adjacency();
        std::vector<char> seen(num_vertices, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    ++count;
                    stack.push_back(w);
                }
        }
        return count == num_vertices;
    }
};

/// A (2-2)-3SAT formula: clauses of two or three literals over distinct
/// variables, every variable occurring exactly twice positively and twice
/// negatively. Literals are +/-(v+1) for variable v.
struct Cnf223 {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;

    void validate() const {
        std::vector<int> pos(num_vars, 0), neg(num_vars, 0);
        for (const auto& clause : clauses) {
            if (clause.size() != 2 && clause.size() != 3)
                throw std::invalid_argument("clauses must have two or three literals");
            std::set<int> vars;
            for (int lit : clause) {
                int v = std::abs(lit) - 1;
                if (lit == 0 || v >= num_vars)
                    throw std::invalid_argument("literal out of range");
                if (!vars.insert(v).second)
                    throw std::invalid_argument("repeated variable in a clause");
                (lit > 0 ? pos : neg)[v] += 1;
            }
        }
        for (int v = 0; v < num_vars; ++v)
            if (pos[v] != 2 || neg[v] != 2)
                throw std::invalid_argument(
                    "every variable must occur twice positively and twice negatively");
    }
};

enum class HardnessSource {
    independent_set,    // -> cons-add, disjoint bundles, k = h
    ds_disjoint,        // dominating set -> cons-del, disjoint bundles, k = h
    ds_w2,              // dominating set -> cons-del / des-add / des-del, m = 2, symmetric
    clique_w1,          // clique -> cons-del / des-del / des-add, m = 2, b = 3
    sat223,             // (2-2)-3SAT -> cons-del, symmetric, b = 3
    clique_unlim        // clique -> cons-add with unlimited budget
};

namespace detail {

inline std::string padded(int value, int width) {
    std::string s = std::to_string(value);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

inline int digits(int n) { return static_cast<int>(std::to_string(std::max(n, 1)).size()); }

}  // namespace detail

/// The independent-set construction: one candidate per edge plus p, h-1
/// registered voters per edge candidate, and one disjoint bundle per vertex
/// holding its p-voter and one voter per incident edge. Budget h.
inline ControlInstance generate_independent_set_instance(const SimpleGraph& g, int h) {
    if (!g.connected()) throw std::invalid_argument("graph must be connected");
    if (g.edges.empty()) throw std::invalid_argument("graph must have an edge");
    if (h < 3) throw std::invalid_argument("h must be at least 3");

    const int ew = detail::digits(static_cast<int>(g.edges.size()));
    const int vw = detail::digits(g.num_vertices);
    auto edge_cand = [&](int j) { return "g" + detail::padded(j + 1, ew); };

    ControlInstance inst;
    inst.variant = kConsAdd;
    inst.preferred = "p";
    inst.budget = Budget::bounded(h);

    std::vector<CandidateId> cands{"p"};
    for (std::size_t j = 0; j < g.edges.size(); ++j) cands.push_back(edge_cand(j));

    std::vector<Voter> registered;
    for (std::size_t j = 0; j < g.edges.size(); ++j)
        for (int t = 1; t < h; ++t)
            registered.push_back(
                {"r" + detail::padded(j + 1, ew) + "_" + detail::padded(t, detail::digits(h)),
                 edge_cand(j)});
    inst.election = Election(cands, registered);

    std::map<VoterId, std::set<VoterId>> bundles;
    for (int i = 0; i < g.num_vertices; ++i) {
        std::set<VoterId> group;
        VoterId pi = "p" + detail::padded(i + 1, vw);
        inst.pool.push_back({pi, "p"});
        group.insert(pi);
        for (std::size_t j = 0; j < g.edges.size(); ++j) {
            auto [u, v] = g.edges[j];
            if (u != i && v != i) continue;
            VoterId aij = "a" + detail::padded(i + 1, vw) + "_" + detail::padded(j + 1, ew);
            inst.pool.push_back({aij, edge_cand(j)});
            group.insert(aij);
        }
        for (const VoterId& member : group) bundles[member] = group;
    }
    inst.kappa = BundlingFunction{std::move(bundles)};
    inst.validate();
    return inst;
}

/// The disjoint-bundle dominating-set construction for cons-del: per vertex
/// one bundle with a voter for each closed-neighborhood member, plus one
/// big calibration bundle holding Delta_max p-voters and per-vertex filler.
inline ControlInstance generate_ds_disjoint_instance(const SimpleGraph& g, int h) {
    if (g.num_vertices == 0) throw std::invalid_argument("empty graph");
    if (h < 1) throw std::invalid_argument("h must be positive");

    auto adj = g.adjacency();
    int delta_max = 0;
    for (const auto& ns : adj) delta_max = std::max(delta_max, static_cast<int>(ns.size()));
    const int vw = detail::digits(g.num_vertices);
    auto vertex_cand = [&](int i) { return "g" + detail::padded(i + 1, vw); };

    ControlInstance inst;
    inst.variant = kConsDel;
    inst.preferred = "p";
    inst.budget = Budget::bounded(h);

    std::vector<CandidateId> cands{"p"};
    for (int i = 0; i < g.num_vertices; ++i) cands.push_back(vertex_cand(i));

    std::vector<Voter> registered;
    std::map<VoterId, std::set<VoterId>> bundles;
    for (int i = 0; i < g.num_vertices; ++i) {
        std::set<VoterId> group;
        auto member = [&](int j) {
            return "b" + detail::padded(i + 1, vw) + "_" + detail::padded(j + 1, vw);
        };
        registered.push_back({member(i), vertex_cand(i)});
        group.insert(member(i));
        for (int j : adj[i]) {
            registered.push_back({member(j), vertex_cand(j)});
            group.insert(member(j));
        }
        for (const VoterId& id : group) bundles[id] = group;
    }
    std::set<VoterId> big;
    for (int i = 0; i < g.num_vertices; ++i) {
        int filler = delta_max + 1 - (1 + static_cast<int>(adj[i].size()));
        for (int t = 1; t <= filler; ++t) {
            VoterId id = "d" + detail::padded(i + 1, vw) + "_" + std::to_string(t);
            registered.push_back({id, vertex_cand(i)});
            big.insert(id);
        }
    }
    for (int t = 1; t <= delta_max; ++t) {
        VoterId id = "dp_" + std::to_string(t);
        registered.push_back({id, "p"});
        big.insert(id);
    }
    for (const VoterId& id : big) bundles[id] = big;

    inst.election = Election(cands, registered);
    inst.kappa = BundlingFunction{std::move(bundles)};
    inst.validate();
    return inst;
}

/// The two-candidate symmetric dominating-set constructions: one voter per
/// vertex whose bundle is the closed neighborhood. Target variant picks the
/// voter roles (cons-del / des-add / des-del).
inline ControlInstance generate_ds_w2_instance(const SimpleGraph& g, int h,
                                               Variant target) {
    if (g.num_vertices == 0) throw std::invalid_argument("empty graph");
    if (h < 1) throw std::invalid_argument("h must be positive");
    if (target == kConsAdd)
        throw std::invalid_argument("ds-w2 targets cons-del, des-add or des-del");

    auto adj = g.adjacency();
    const int vw = detail::digits(g.num_vertices);
    auto vid = [&](int i) { return "w" + detail::padded(i + 1, vw); };

    std::map<VoterId, std::set<VoterId>> bundles;
    for (int i = 0; i < g.num_vertices; ++i) {
        std::set<VoterId> closed{vid(i)};
        for (int j : adj[i]) closed.insert(vid(j));
        bundles[vid(i)] = std::move(closed);
    }

    ControlInstance inst;
    inst.variant = target;
    inst.preferred = "p";
    inst.budget = Budget::bounded(h);
    std::vector<CandidateId> cands{"p", "g"};

    if (target == kDesAdd) {
        std::vector<Voter> registered;
        for (int t = 1; t < g.num_vertices; ++t)
            registered.push_back({"r" + detail::padded(t, vw), "p"});
        inst.election = Election(cands, registered);
        for (int i = 0; i < g.num_vertices; ++i) inst.pool.push_back({vid(i), "g"});
    } else if (target == kConsDel) {
        // the relaxed form: no p-voters at all, p wins once the election is empty
        std::vector<Voter> registered;
        for (int i = 0; i < g.num_vertices; ++i) registered.push_back({vid(i), "g"});
        inst.election = Election(cands, registered);
    } else {  // des-del
        std::vector<Voter> registered;
        for (int i = 0; i < g.num_vertices; ++i) registered.push_back({vid(i), "p"});
        registered.push_back({"wg", "g"});
        bundles["wg"] = {"wg"};
        inst.election = Election(cands, registered);
    }
    inst.kappa = BundlingFunction{std::move(bundles)};
    inst.validate();
    return inst;
}

/// The clique constructions with bundle size three: singleton vertex voters,
/// one edge voter per edge bundled with its endpoints, dummies calibrating
/// the score difference, budget C(h,2).
inline ControlInstance generate_clique_w1_instance(const SimpleGraph& g, int h,
                                                   Variant target) {
    if (g.num_vertices == 0) throw std::invalid_argument("empty graph");
    if (h <= 3) throw std::invalid_argument("h must exceed 3");
    if (target == kConsAdd)
        throw std::invalid_argument("clique-w1 targets cons-del, des-del or des-add");

    const int choose2 = h * (h - 1) / 2;
    const int vw = detail::digits(g.num_vertices);
    const int ew = detail::digits(static_cast<int>(g.edges.size()));
    auto uid = [&](int i) { return "u" + detail::padded(i + 1, vw); };
    auto eid = [&](int j) { return "e" + detail::padded(j + 1, ew); };

    ControlInstance inst;
    inst.variant = target;
    inst.preferred = "p";
    inst.budget = Budget::bounded(choose2);
    std::vector<CandidateId> cands{"p", "g"};

    std::map<VoterId, std::set<VoterId>> bundles;
    for (int i = 0; i < g.num_vertices; ++i) bundles[uid(i)] = {uid(i)};
    for (std::size_t j = 0; j < g.edges.size(); ++j) {
        auto [u, v] = g.edges[j];
        bundles[eid(static_cast<int>(j))] = {eid(static_cast<int>(j)), uid(u), uid(v)};
    }

    if (target == kDesAdd) {
        // vertex voters favor p, edge voters favor g; adding a clique's edge
        // bundles hands g C(h,2) points at the price of only h p-voters
        std::vector<Voter> registered;
        for (int t = 1; t <= choose2 - h - 1; ++t)
            registered.push_back({"r" + std::to_string(t), "p"});
        inst.election = Election(cands, registered);
        for (int i = 0; i < g.num_vertices; ++i) inst.pool.push_back({uid(i), "p"});
        for (std::size_t j = 0; j < g.edges.size(); ++j)
            inst.pool.push_back({eid(static_cast<int>(j)), "g"});
        inst.kappa = BundlingFunction{std::move(bundles)};
        inst.validate();
        return inst;
    }

    const bool cons = target == kConsDel;
    const CandidateId vertex_fav = cons ? "p" : "g";
    const CandidateId edge_fav = cons ? "g" : "p";
    std::vector<Voter> registered;
    for (int i = 0; i < g.num_vertices; ++i) registered.push_back({uid(i), vertex_fav});
    for (std::size_t j = 0; j < g.edges.size(); ++j)
        registered.push_back({eid(static_cast<int>(j)), edge_fav});

    // dummies: cons-del wants s_g - s_p = C(h,2) - h, des-del wants
    // s_p - s_g = C(h,2) - h - 1; they only calibrate scores and stay
    // outside the bundling domain, since an undeletable dummy is what the
    // correctness argument needs (a deletable g-dummy would shed the gap
    // one point per budget unit and make sparse graphs trivially yes)
    const int n = g.num_vertices;
    const int m_edges = static_cast<int>(g.edges.size());
    int want = cons ? (choose2 - h) - (m_edges - n)        // extra g-voters
                    : (choose2 - h - 1) - (m_edges - n);   // extra p-voters
    const CandidateId dummy_fav = cons ? "g" : "p";
    const CandidateId other_fav = cons ? "p" : "g";
    const CandidateId fav = want >= 0 ? dummy_fav : other_fav;
    for (int t = 1; t <= std::abs(want); ++t)
        registered.push_back({"d" + std::to_string(t), fav});
    inst.election = Election(cands, registered);
    inst.kappa = BundlingFunction{std::move(bundles)};
    inst.validate();
    return inst;
}

/// The (2-2)-3SAT construction for cons-del: per variable an eight-cycle
/// alternating clause voters and d-voters, singleton fillers for two-literal
/// clauses, and two p/d voter pairs. Budget 2n; the d-vs-p score difference
/// is exactly 4n.
inline ControlInstance generate_sat223_instance(const Cnf223& cnf) {
    cnf.validate();
    const int n = cnf.num_vars;
    const int cw = detail::digits(static_cast<int>(cnf.clauses.size()));
    const int vw = detail::digits(n);
    auto clause_cand = [&](int j) { return "c" + detail::padded(j + 1, cw); };

    ControlInstance inst;
    inst.variant = kConsDel;
    inst.preferred = "p";
    inst.budget = Budget::bounded(2 * n);

    std::vector<CandidateId> cands{"p", "d"};
    for (std::size_t j = 0; j < cnf.clauses.size(); ++j)
        cands.push_back(clause_cand(static_cast<int>(j)));

    std::vector<Voter> registered;
    std::map<VoterId, std::set<VoterId>> bundles;

    for (int i = 0; i < n; ++i) {
        std::vector<int> pos_clauses, neg_clauses;
        for (std::size_t j = 0; j < cnf.clauses.size(); ++j)
            for (int lit : cnf.clauses[j]) {
                if (lit == i + 1) pos_clauses.push_back(static_cast<int>(j));
                if (lit == -(i + 1)) neg_clauses.push_back(static_cast<int>(j));
            }
        // the cycle interleaves positive and negative occurrences so that the
        // two same-polarity clause voters have disjoint bundles
        const std::array<int, 4> ring{pos_clauses[0], neg_clauses[0], pos_clauses[1],
                                      neg_clauses[1]};
        std::array<VoterId, 4> u, v;
        for (int q = 0; q < 4; ++q) {
            u[q] = "u" + detail::padded(i + 1, vw) + "_" + detail::padded(ring[q] + 1, cw);
            v[q] = "v" + detail::padded(i + 1, vw) + "_" + detail::padded(ring[q] + 1, cw);
            registered.push_back({u[q], clause_cand(ring[q])});
            registered.push_back({v[q], "d"});
        }
        // eight-cycle u0 v1 u1 v2 u2 v3 u3 v0
        for (int q = 0; q < 4; ++q) {
            int next = (q + 1) % 4;
            bundles[u[q]] = {u[q], v[q], v[next]};
            bundles[v[next]] = {v[next], u[q], u[next]};
        }
    }
    for (std::size_t j = 0; j < cnf.clauses.size(); ++j)
        if (cnf.clauses[j].size() == 2) {
            VoterId id = "uc" + detail::padded(static_cast<int>(j) + 1, cw);
            registered.push_back({id, clause_cand(static_cast<int>(j))});
            bundles[id] = {id};
        }
    for (int t = 1; t <= 2; ++t) {
        VoterId wp = "wp" + std::to_string(t);
        VoterId wd = "wd" + std::to_string(t);
        registered.push_back({wp, "p"});
        registered.push_back({wd, "d"});
        bundles[wp] = {wp, wd};
        bundles[wd] = {wd, wp};
    }

    inst.election = Election(cands, registered);
    inst.kappa = BundlingFunction{std::move(bundles)};
    inst.validate();
    return inst;
}

/// The unlimited-budget clique construction on candidates {p, g, x}: adding
/// a clique's edge bundles ties all three candidates, anything else leaves
/// p strictly behind.
inline ControlInstance generate_clique_unlim_instance(const SimpleGraph& g, int h) {
    if (g.num_vertices == 0) throw std::invalid_argument("empty graph");
    if (h < 4) throw std::invalid_argument("h must be at least 4");

    const int choose2 = h * (h - 1) / 2;
    const int vw = detail::digits(g.num_vertices);
    const int ew = detail::digits(static_cast<int>(g.edges.size()));
    auto uid = [&](int i) { return "u" + detail::padded(i + 1, vw); };
    auto eid = [&](int j) { return "e" + detail::padded(j + 1, ew); };

    ControlInstance inst;
    inst.variant = kConsAdd;
    inst.preferred = "p";
    inst.budget = Budget::unlimited();

    std::vector<Voter> registered;
    for (int t = 1; t <= choose2; ++t)
        registered.push_back({"rp" + std::to_string(t), "p"});
    for (int t = 1; t <= 2 * choose2 - h; ++t)
        registered.push_back({"rg" + std::to_string(t), "g"});
    inst.election = Election({"p", "g", "x"}, registered);

    std::map<VoterId, std::set<VoterId>> bundles;
    for (int i = 0; i < g.num_vertices; ++i) {
        inst.pool.push_back({uid(i), "g"});
        bundles[uid(i)] = {uid(i)};
    }
    for (std::size_t j = 0; j < g.edges.size(); ++j) {
        auto [a, b] = g.edges[j];
        VoterId we = eid(static_cast<int>(j));
        VoterId x1 = "x" + detail::padded(static_cast<int>(j) + 1, ew) + "a";
        VoterId x2 = "x" + detail::padded(static_cast<int>(j) + 1, ew) + "b";
        inst.pool.push_back({we, "p"});
        inst.pool.push_back({x1, "x"});
        inst.pool.push_back({x2, "x"});
        bundles[we] = {we, uid(a), uid(b), x1, x2};
        bundles[x1] = {x1};
        bundles[x2] = {x2};
    }
    inst.kappa = BundlingFunction{std::move(bundles)};
    inst.validate();
    return inst;
}

struct HardnessInput {
    std::optional<SimpleGraph> graph;
    std::optional<Cnf223> formula;
};

inline ControlInstance generate_hardness_instance(HardnessSource source,
                                                  const HardnessInput& input, int h,
                                                  std::optional<Variant> target = {}) {
    auto need_graph = [&]() -> const SimpleGraph& {
        if (!input.graph) throw std::invalid_argument("this source needs a graph input");
        return *input.graph;
    };
    switch (source) {
        case HardnessSource::independent_set:
            if (target && !(*target == kConsAdd))
                throw std::invalid_argument("independent-set source targets cons-add");
            return generate_independent_set_instance(need_graph(), h);
        case HardnessSource::ds_disjoint:
            if (target && !(*target == kConsDel))
                throw std::invalid_argument("ds-disjoint source targets cons-del");
            return generate_ds_disjoint_instance(need_graph(), h);
        case HardnessSource::ds_w2:
            return generate_ds_w2_instance(need_graph(), h, target.value_or(kConsDel));
        case HardnessSource::clique_w1:
            return generate_clique_w1_instance(need_graph(), h, target.value_or(kConsDel));
        case HardnessSource::sat223:
            if (!input.formula) throw std::invalid_argument("sat223 needs a formula input");
            if (target && !(*target == kConsDel))
                throw std::invalid_argument("sat223 targets cons-del");
            return generate_sat223_instance(*input.formula);
        case HardnessSource::clique_unlim:
            if (target && !(*target == kConsAdd))
                throw std::invalid_argument("clique-unlim targets cons-add");
            return generate_clique_unlim_instance(need_graph(), h);
    }
    throw std::logic_error("unknown hardness source");
}

// ---------------------------------------------------------------------------
// Seeded random instances
// ---------------------------------------------------------------------------

enum class BundleFamily { arbitrary, symmetric, disjoint, anonymous };

struct RandomParams {
    int num_candidates = 2;
    int num_registered = 4;
    int num_pool = 4;              // ignored for delete variants
    int max_bundle = 3;            // upper bound; best effort for anonymous
    BundleFamily family = BundleFamily::symmetric;
    Variant variant = kConsAdd;
    std::optional<int> budget;     // nullopt picks a random bounded budget
    std::uint64_t seed = 1;
};

/// Deterministic random instance; classify_bundling on the result reports
/// the requested family.
inline ControlInstance random_instance(const RandomParams& params) {
    if (params.num_candidates < 1) throw std::invalid_argument("need a candidate");
    if (params.family == BundleFamily::disjoint && params.max_bundle < 1)
        throw std::invalid_argument("disjoint bundles need max_bundle >= 1");
    std::mt19937_64 rng(params.seed * 0x9e3779b97f4a7c15ull + 12345);
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };

    const int m = params.num_candidates;
    const int cw = detail::digits(m);
    std::vector<CandidateId> cands;
    for (int c = 1; c <= m; ++c) cands.push_back("c" + detail::padded(c, cw));

    ControlInstance inst;
    inst.variant = params.variant;
    inst.preferred = cands[0];
    const bool add = params.variant.mode == Mode::add;

    const int nv = params.num_registered;
    const int np = add ? params.num_pool : 0;
    const int vw = detail::digits(std::max(nv, np));
    std::vector<Voter> registered, pool;
    for (int i = 1; i <= nv; ++i)
        registered.push_back({"v" + detail::padded(i, vw), cands[pick(m)]});
    for (int i = 1; i <= np; ++i)
        pool.push_back({"w" + detail::padded(i, vw), cands[pick(m)]});
    inst.election = Election(cands, registered);
    inst.pool = pool;

    const std::vector<Voter>& side = add ? inst.pool : inst.election.voters();
    std::vector<VoterId> ids;
    for (const Voter& v : side) ids.push_back(v.id);
    const int n = static_cast<int>(ids.size());

    std::map<VoterId, std::set<VoterId>> bundles;
    for (const VoterId& id : ids) bundles[id] = {id};

    switch (params.family) {
        case BundleFamily::arbitrary: {
            for (const VoterId& id : ids) {
                int extra = params.max_bundle > 1 ? pick(params.max_bundle) : 0;
                for (int t = 0; t < extra && n > 1; ++t) {
                    bundles[id].insert(ids[pick(n)]);
                    if (static_cast<int>(bundles[id].size()) >= params.max_bundle) break;
                }
            }
            break;
        }
        case BundleFamily::symmetric: {
            // random edges while respecting degree <= max_bundle - 1
            std::vector<int> deg(n, 0);
            int attempts = 3 * n;
            while (attempts-- > 0 && n > 1) {
                int a = pick(n), b = pick(n);
                if (a == b) continue;
                if (deg[a] >= params.max_bundle - 1 || deg[b] >= params.max_bundle - 1)
                    continue;
                if (bundles[ids[a]].count(ids[b])) continue;
                bundles[ids[a]].insert(ids[b]);
                bundles[ids[b]].insert(ids[a]);
                ++deg[a];
                ++deg[b];
            }
            break;
        }
        case BundleFamily::disjoint: {
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            for (int i = n - 1; i > 0; --i) std::swap(order[i], order[pick(i + 1)]);
            int at = 0;
            while (at < n) {
                int size = 1 + (params.max_bundle > 1 ? pick(params.max_bundle) : 0);
                size = std::min(size, n - at);
                std::set<VoterId> group;
                for (int t = 0; t < size; ++t) group.insert(ids[order[at + t]]);
                for (const VoterId& id : group) bundles[id] = group;
                at += size;
            }
            break;
        }
        case BundleFamily::anonymous: {
            std::map<CandidateId, std::vector<VoterId>> classes;
            for (const Voter& v : side) classes[v.favorite].push_back(v.id);
            std::vector<CandidateId> keys;
            for (const auto& [fav, members] : classes) keys.push_back(fav);
            const int kcount = static_cast<int>(keys.size());
            for (int i = 0; i < kcount; ++i) {
                std::set<VoterId> merged;
                for (int j = 0; j < kcount; ++j)
                    if (i == j || pick(3) == 0)
                        for (const VoterId& id : classes[keys[j]]) merged.insert(id);
                for (const VoterId& id : classes[keys[i]]) bundles[id] = merged;
            }
            break;
        }
    }
    inst.kappa = BundlingFunction{std::move(bundles)};

    if (params.budget)
        inst.budget = Budget::bounded(*params.budget);
    else
        inst.budget = Budget::bounded(n > 0 ? pick(n + 1) : 0);
    inst.validate();
    return inst;
}

/// A two-candidate cons-add instance whose bundling graph is one path of
/// the given length, with seeded random favorites. Benchmark material for
/// the path dynamic program.
inline ControlInstance random_path_instance(int length, int budget, std::uint64_t seed) {
    if (length < 1) throw std::invalid_argument("path needs at least one voter");
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 7);
    const int vw = detail::digits(length);

    ControlInstance inst;
    inst.variant = kConsAdd;
    inst.preferred = "p";
    inst.budget = Budget::bounded(budget);

    std::vector<Voter> registered;
    int rival_lead = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(length));
    for (int t = 1; t <= rival_lead; ++t)
        registered.push_back({"r" + detail::padded(t, detail::digits(rival_lead)), "g"});
    inst.election = Election({"p", "g"}, registered);

    std::vector<VoterId> ids;
    for (int i = 1; i <= length; ++i) {
        VoterId id = "w" + detail::padded(i, vw);
        inst.pool.push_back({id, rng() % 2 == 0 ? "p" : "g"});
        ids.push_back(id);
    }
    std::map<VoterId, std::set<VoterId>> bundles;
    for (int i = 0; i < length; ++i) {
        std::set<VoterId> b{ids[i]};
        if (i > 0) b.insert(ids[i - 1]);
        if (i + 1 < length) b.insert(ids[i + 1]);
        bundles[ids[i]] = std::move(b);
    }
    inst.kappa = BundlingFunction{std::move(bundles)};
    inst.validate();
    return inst;
}

}  // namespace combictl
