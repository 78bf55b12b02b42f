#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Elections under the Plurality rule, bundling functions and their
// classification, and the bundling graph.
//
// Winner semantics throughout the library are co-winner semantics: a
// candidate wins iff no other candidate has a strictly higher score.

namespace combictl {

using CandidateId = std::string;
using VoterId = std::string;

struct Voter {
    VoterId id;
    CandidateId favorite;

    friend bool operator==(const Voter& a, const Voter& b) {
        return a.id == b.id && a.favorite == b.favorite;
    }
    friend bool operator<(const Voter& a, const Voter& b) {
        return a.id != b.id ? a.id < b.id : a.favorite < b.favorite;
    }
};

/// An immutable election: a candidate set and a voter set, each voter
/// carrying exactly one favorite candidate.
class Election {
public:
    Election() = default;

    Election(std::vector<CandidateId> candidates, std::vector<Voter> voters)
        : candidates_(std::move(candidates)), voters_(std::move(voters)) {
        std::sort(candidates_.begin(), candidates_.end());
        candidates_.erase(std::unique(candidates_.begin(), candidates_.end()),
                          candidates_.end());
        std::sort(voters_.begin(), voters_.end());
        for (std::size_t i = 0; i + 1 < voters_.size(); ++i) {
            if (voters_[i].id == voters_[i + 1].id)
                throw std::invalid_argument("duplicate voter id: " + voters_[i].id);
        }
        for (const Voter& v : voters_) {
            if (!has_candidate(v.favorite))
                throw std::invalid_argument("voter " + v.id +
                                            " has unknown favorite " + v.favorite);
        }
    }

    const std::vector<CandidateId>& candidates() const { return candidates_; }
    const std::vector<Voter>& voters() const { return voters_; }

    bool has_candidate(const CandidateId& c) const {
        return std::binary_search(candidates_.begin(), candidates_.end(), c);
    }

    const Voter* find_voter(const VoterId& id) const {
        auto it = std::lower_bound(voters_.begin(), voters_.end(), id,
                                   [](const Voter& v, const VoterId& x) { return v.id < x; });
        if (it == voters_.end() || it->id != id) return nullptr;
        return &*it;
    }

private:
    std::vector<CandidateId> candidates_;  // sorted, unique
    std::vector<Voter> voters_;            // sorted by id, ids unique
};

/// Plurality scores of every candidate over the full voter set.
/// Candidates favored by nobody map to 0.
inline std::map<CandidateId, int> plurality_scores(const Election& e) {
    std::map<CandidateId, int> scores;
    for (const CandidateId& c : e.candidates()) scores[c] = 0;
    for (const Voter& v : e.voters()) scores[v.favorite] += 1;
    return scores;
}

/// Plurality scores restricted to a voter subset (given by id).
inline std::map<CandidateId, int> plurality_scores(const Election& e,
                                                   const std::set<VoterId>& subset) {
    std::map<CandidateId, int> scores;
    for (const CandidateId& c : e.candidates()) scores[c] = 0;
    for (const VoterId& id : subset) {
        const Voter* v = e.find_voter(id);
        if (v == nullptr)
            throw std::invalid_argument("unknown voter id in subset: " + id);
        scores[v->favorite] += 1;
    }
    return scores;
}

/// All candidates attaining the maximum score. In an election without
/// voters every candidate is a winner.
inline std::set<CandidateId> co_winners(const Election& e) {
    std::set<CandidateId> winners;
    if (e.candidates().empty()) return winners;
    auto scores = plurality_scores(e);
    int best = 0;
    for (const auto& [c, s] : scores) best = std::max(best, s);
    for (const auto& [c, s] : scores)
        if (s == best) winners.insert(c);
    return winners;
}

/// A combinatorial bundling function kappa. The domain is the set of voters
/// that can lead a bundle; every bundle is a subset of the domain and
/// contains its own leader.
class BundlingFunction {
public:
    BundlingFunction() = default;

    explicit BundlingFunction(std::map<VoterId, std::set<VoterId>> bundles)
        : bundles_(std::move(bundles)) {
        for (const auto& [leader, bundle] : bundles_) {
            if (bundle.count(leader) == 0)
                throw std::invalid_argument("bundle of " + leader +
                                            " does not contain its leader");
            for (const VoterId& member : bundle)
                if (bundles_.count(member) == 0)
                    throw std::invalid_argument("bundle member " + member +
                                                " is outside the domain");
        }
    }

    bool contains(const VoterId& id) const { return bundles_.count(id) != 0; }
    std::size_t size() const { return bundles_.size(); }
    bool empty() const { return bundles_.empty(); }

    const std::set<VoterId>& bundle(const VoterId& leader) const {
        auto it = bundles_.find(leader);
        if (it == bundles_.end())
            throw std::invalid_argument("leader outside the bundling domain: " + leader);
        return it->second;
    }

    std::set<VoterId> domain() const {
        std::set<VoterId> d;
        for (const auto& [leader, bundle] : bundles_) d.insert(leader);
        return d;
    }

    const std::map<VoterId, std::set<VoterId>>& bundles() const { return bundles_; }

    int max_bundle_size() const {
        std::size_t b = 1;
        for (const auto& [leader, bundle] : bundles_) b = std::max(b, bundle.size());
        return static_cast<int>(b);
    }

private:
    std::map<VoterId, std::set<VoterId>> bundles_;
};

/// Single-level union of the leaders' bundles. This is deliberately NOT a
/// transitive closure: members of a selected bundle do not drag their own
/// bundles in. Selecting a leader twice changes nothing.
inline std::set<VoterId> bundle_union(const BundlingFunction& kappa,
                                      const std::set<VoterId>& leaders) {
    std::set<VoterId> out;
    for (const VoterId& leader : leaders) {
        const std::set<VoterId>& b = kappa.bundle(leader);
        out.insert(b.begin(), b.end());
    }
    return out;
}

struct BundlingProfile {
    int max_bundle_size = 1;
    bool symmetric = false;
    bool disjoint = false;
    bool anonymous = false;
};

/// Classifies kappa as symmetric / disjoint / anonymous and reports the
/// maximum bundle size. The election context maps every domain voter to a
/// favorite candidate (needed for the anonymity check).
inline BundlingProfile classify_bundling(const BundlingFunction& kappa,
                                         const std::map<VoterId, CandidateId>& favorite_of) {
    BundlingProfile profile;
    profile.max_bundle_size = kappa.empty() ? 1 : kappa.max_bundle_size();

    // symmetric: y in kappa(x) <=> x in kappa(y)
    profile.symmetric = true;
    for (const auto& [x, bundle] : kappa.bundles()) {
        for (const VoterId& y : bundle) {
            if (y == x) continue;
            if (kappa.bundle(y).count(x) == 0) {
                profile.symmetric = false;
                break;
            }
        }
        if (!profile.symmetric) break;
    }

    // disjoint: any two bundles are equal or do not intersect
    profile.disjoint = true;
    {
        std::vector<const std::set<VoterId>*> bs;
        for (const auto& [x, bundle] : kappa.bundles()) bs.push_back(&bundle);
        for (std::size_t i = 0; i < bs.size() && profile.disjoint; ++i) {
            for (std::size_t j = i + 1; j < bs.size(); ++j) {
                if (*bs[i] == *bs[j]) continue;
                bool intersect = false;
                for (const VoterId& v : *bs[i])
                    if (bs[j]->count(v)) { intersect = true; break; }
                if (intersect) { profile.disjoint = false; break; }
            }
        }
    }

    // anonymous: same-favorite voters have identical bundles and appear in
    // other voters' bundles all-or-none.
    std::map<CandidateId, std::vector<VoterId>> classes;
    for (const auto& [x, bundle] : kappa.bundles()) {
        auto it = favorite_of.find(x);
        if (it == favorite_of.end())
            throw std::invalid_argument("no favorite known for domain voter " + x);
        classes[it->second].push_back(x);
    }
    profile.anonymous = true;
    for (const auto& [fav, members] : classes) {
        const std::set<VoterId>& first = kappa.bundle(members.front());
        for (const VoterId& m : members)
            if (kappa.bundle(m) != first) { profile.anonymous = false; break; }
        if (!profile.anonymous) break;
        // all-or-none membership of the class in every bundle
        for (const auto& [z, bundle] : kappa.bundles()) {
            std::size_t hit = 0;
            for (const VoterId& m : members) hit += bundle.count(m);
            if (hit != 0 && hit != members.size()) { profile.anonymous = false; break; }
        }
        if (!profile.anonymous) break;
    }
    return profile;
}

/// The bundling graph: one vertex per domain voter, an arc (y, z) whenever
/// z is in kappa(y) and y != z. For symmetric kappa the graph can be read
/// as undirected.
struct BundlingGraph {
    std::vector<VoterId> vertices;                    // sorted
    std::vector<std::pair<VoterId, VoterId>> arcs;    // directed, no loops
    bool symmetric = false;
};

inline BundlingGraph make_bundling_graph(const BundlingFunction& kappa) {
    BundlingGraph g;
    for (const auto& [x, bundle] : kappa.bundles()) g.vertices.push_back(x);
    std::sort(g.vertices.begin(), g.vertices.end());
    g.symmetric = true;
    for (const auto& [y, bundle] : kappa.bundles()) {
        for (const VoterId& z : bundle) {
            if (z == y) continue;
            g.arcs.emplace_back(y, z);
            if (kappa.bundle(z).count(y) == 0) g.symmetric = false;
        }
    }
    std::sort(g.arcs.begin(), g.arcs.end());
    return g;
}

enum class ComponentShape { path, cycle, other };

inline const char* to_string(ComponentShape s) {
    switch (s) {
        case ComponentShape::path: return "path";
        case ComponentShape::cycle: return "cycle";
        default: return "other";
    }
}

/// A connected component of the undirected bundling graph. For paths the
/// vertices are listed endpoint to endpoint, for cycles in cyclic order
/// starting at the smallest id; otherwise in ascending id order.
struct Component {
    std::vector<VoterId> vertices;
    ComponentShape shape = ComponentShape::other;
};

/// Partition of the undirected bundling graph into connected components.
/// Requires a symmetric bundling function.
inline std::vector<Component> connected_components(const BundlingGraph& g) {
    if (!g.symmetric)
        throw std::invalid_argument(
            "connected_components requires a symmetric bundling function");

    std::map<VoterId, std::vector<VoterId>> adj;
    for (const VoterId& v : g.vertices) adj[v];
    for (const auto& [y, z] : g.arcs) adj[y].push_back(z);
    for (auto& [v, ns] : adj) {
        std::sort(ns.begin(), ns.end());
        ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    }

    std::set<VoterId> seen;
    std::vector<Component> out;
    for (const VoterId& start : g.vertices) {
        if (seen.count(start)) continue;
        // collect the component
        std::vector<VoterId> stack{start};
        std::set<VoterId> comp;
        seen.insert(start);
        comp.insert(start);
        while (!stack.empty()) {
            VoterId v = stack.back();
            stack.pop_back();
            for (const VoterId& w : adj[v])
                if (!seen.count(w)) {
                    seen.insert(w);
                    comp.insert(w);
                    stack.push_back(w);
                }
        }
        std::size_t edges = 0;
        std::size_t maxdeg = 0;
        for (const VoterId& v : comp) {
            edges += adj[v].size();
            maxdeg = std::max(maxdeg, adj[v].size());
        }
        edges /= 2;

        Component c;
        if (maxdeg <= 2 && edges + 1 == comp.size()) {
            c.shape = ComponentShape::path;
            // walk from the smallest endpoint
            VoterId startpoint = *comp.begin();
            for (const VoterId& v : comp)
                if (adj[v].size() <= 1) { startpoint = v; break; }
            VoterId prev = "";
            VoterId cur = startpoint;
            c.vertices.push_back(cur);
            while (c.vertices.size() < comp.size()) {
                for (const VoterId& w : adj[cur]) {
                    if (w != prev) {
                        c.vertices.push_back(w);
                        prev = cur;
                        cur = w;
                        break;
                    }
                }
            }
        } else if (maxdeg == 2 && edges == comp.size() && comp.size() >= 3) {
            c.shape = ComponentShape::cycle;
            VoterId first = *comp.begin();
            // orient toward the smaller neighbor
            VoterId prev = first;
            VoterId cur = adj[first].front();
            c.vertices.push_back(first);
            while (cur != first) {
                c.vertices.push_back(cur);
                for (const VoterId& w : adj[cur]) {
                    if (w != prev) {
                        prev = cur;
                        cur = w;
                        break;
                    }
                }
            }
        } else {
            c.shape = ComponentShape::other;
            c.vertices.assign(comp.begin(), comp.end());
        }
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace combictl
