#pragma once

#include <functional>

#include "bmatching.hpp"
#include "gap_dp.hpp"
#include "ilp.hpp"
#include "oracle.hpp"
#include "reductions.hpp"

// The polynomial special-case solvers and the routing front end. Every
// solver returns a minimum-size solution (or nullopt for a no-instance)
// and is validated against the exhaustive oracle by the test suite.

namespace combictl {

class unsupported_instance : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline int effective_budget(const ControlInstance& inst, int natural_cap) {
    int k = inst.budget.limit.value_or(natural_cap);
    return std::min(k, natural_cap);
}

inline CandidateId sole_rival(const ControlInstance& inst) {
    if (inst.election.candidates().size() != 2)
        throw std::invalid_argument("two-candidate solver needs exactly two candidates");
    for (const CandidateId& c : inst.election.candidates())
        if (c != inst.preferred) return c;
    throw std::invalid_argument("preferred candidate has no rival");
}

inline std::vector<Voter> component_voters(const Component& comp,
                                           const std::map<VoterId, CandidateId>& favorites) {
    std::vector<Voter> out;
    for (const VoterId& id : comp.vertices) out.push_back({id, favorites.at(id)});
    return out;
}

// Distinct bundles of the domain, keyed by the smallest member; under a
// symmetric b<=2 or disjoint bundling function every member of a bundle
// owns the identical set, so this is a well-defined partition.
inline std::vector<std::pair<VoterId, std::set<VoterId>>> distinct_bundles(
    const BundlingFunction& kappa) {
    std::map<std::set<VoterId>, VoterId> seen;
    for (const auto& [leader, bundle] : kappa.bundles()) {
        auto it = seen.find(bundle);
        if (it == seen.end() || leader < it->second) seen[bundle] = leader;
    }
    std::vector<std::pair<VoterId, std::set<VoterId>>> out;
    for (const auto& [bundle, leader] : seen) out.emplace_back(leader, bundle);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Component combination table (two candidates, symmetric, b <= 3)
// ---------------------------------------------------------------------------

/// Combines per-component gap curves: entry A[d,s,t] is the best gap
/// achievable with at most d leaders whose bundles stay inside components
/// s..t (1-based). Built by splitting the component range at every point.
class ComponentTable {
public:
    static ComponentTable build(std::vector<SizedGaps> per_component, int max_size) {
        ComponentTable ct;
        ct.comps_ = std::move(per_component);
        ct.ell_ = static_cast<int>(ct.comps_.size());
        ct.dmax_ = max_size;
        if (ct.ell_ == 0) return ct;
        ct.entries_.assign(static_cast<std::size_t>(max_size + 1) * ct.ell_ * ct.ell_, {});
        for (int len = 1; len <= ct.ell_; ++len)
            for (int s = 0; s + len - 1 < ct.ell_; ++s) {
                int t = s + len - 1;
                for (int d = 0; d <= max_size; ++d) {
                    Entry& e = ct.at(d, s, t);
                    if (len == 1) {
                        int idx = std::min(d, ct.comps_[s].cap());
                        e = {ct.comps_[s].best_gap[idx], -1,
                             static_cast<std::int16_t>(idx)};
                        continue;
                    }
                    e = {std::numeric_limits<int>::min(), 0, 0};
                    for (int j = 0; j <= len - 2; ++j)
                        for (int i = 0; i <= d; ++i) {
                            int g = ct.at(d - i, s, s + j).gap +
                                    ct.at(i, s + j + 1, t).gap;
                            if (g > e.gap)
                                e = {g, static_cast<std::int16_t>(j),
                                     static_cast<std::int16_t>(i)};
                        }
                }
            }
        return ct;
    }

    int components() const { return ell_; }

    int gap(int d, int s, int t) const { return at(d, s - 1, t - 1).gap; }

    std::vector<VoterId> leaders(int d, int s, int t) const {
        std::vector<VoterId> out;
        collect(d, s - 1, t - 1, out);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    struct Entry {
        int gap = 0;
        std::int16_t split = -1;  // -1: leaf
        std::int16_t arg = 0;     // leaf: witness index; split: right size
    };

    Entry& at(int d, int s, int t) { return entries_[(d * ell_ + s) * ell_ + t]; }
    const Entry& at(int d, int s, int t) const {
        return entries_[(d * ell_ + s) * ell_ + t];
    }

    void collect(int d, int s, int t, std::vector<VoterId>& out) const {
        const Entry& e = at(d, s, t);
        if (e.split < 0) {
            const auto& w = comps_[s].witness[e.arg];
            out.insert(out.end(), w.begin(), w.end());
            return;
        }
        collect(d - e.arg, s, s + e.split, out);
        collect(e.arg, s + e.split + 1, t, out);
    }

    std::vector<SizedGaps> comps_;
    std::vector<Entry> entries_;
    int ell_ = 0;
    int dmax_ = 0;
};

// ---------------------------------------------------------------------------
// Weighted gap solving on path/cycle bundling graphs
// ---------------------------------------------------------------------------

namespace detail {

/// Smallest leader set whose selected union moves the preferred-vs-rival
/// score difference by at least `threshold`: per-component gap curves
/// combined across components. Needs a symmetric kappa whose graph is all
/// paths and cycles.
inline std::optional<Solution> min_leaders_for_gap(
    const std::map<VoterId, CandidateId>& favorites, const BundlingFunction& kappa,
    const CandidateId& preferred, const CandidateId& rival, int threshold,
    int k_eff) {
    BundlingGraph graph = make_bundling_graph(kappa);
    if (!graph.symmetric)
        throw std::invalid_argument("solver needs a symmetric bundling function");
    std::vector<Component> comps = connected_components(graph);
    for (const Component& c : comps)
        if (c.shape == ComponentShape::other)
            throw std::invalid_argument(
                "bundling graph has a component that is neither path nor cycle");
    if (comps.empty())
        return threshold <= 0 ? std::optional<Solution>(Solution{}) : std::nullopt;

    std::vector<SizedGaps> curves;
    for (const Component& c : comps) {
        std::vector<Voter> voters = component_voters(c, favorites);
        if (c.shape == ComponentShape::path) {
            GapTable t = max_gap_path(voters, kappa, preferred, rival, k_eff);
            curves.push_back(path_sized_gaps(t, k_eff));
        } else {
            curves.push_back(max_gap_cycle(voters, kappa, preferred, rival, k_eff));
        }
    }
    ComponentTable table = ComponentTable::build(std::move(curves), k_eff);
    for (int d = 0; d <= k_eff; ++d) {
        if (table.gap(d, 1, table.components()) >= threshold) {
            Solution sol;
            for (const VoterId& id : table.leaders(d, 1, table.components()))
                sol.leaders.insert(id);
            return sol;
        }
    }
    return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Two candidates, symmetric bundles, b <= 3 (paths and cycles)
// ---------------------------------------------------------------------------

/// Constructive addition with two candidates and a symmetric bundling
/// function whose graph decomposes into paths and cycles: per-component gap
/// tables combined across components; the answer is the smallest leader
/// count whose combined gap covers the score deficit.
inline std::optional<Solution> solve_cons_add_m2_sym_b3(const ControlInstance& inst) {
    if (!(inst.variant == kConsAdd))
        throw std::invalid_argument("solver handles cons-add only");
    const CandidateId rival = detail::sole_rival(inst);
    auto scores = plurality_scores(inst.election);
    const int deficit = scores.at(rival) - scores.at(inst.preferred);
    const int k_eff =
        detail::effective_budget(inst, static_cast<int>(inst.kappa.size()));
    return detail::min_leaders_for_gap(inst.controlled_favorites(), inst.kappa,
                                       inst.preferred, rival, deficit, k_eff);
}

/// Constructive deletion with two candidates, symmetric bundles, b <= 3:
/// reduce to constructive addition on the complement voter set, solve, and
/// map the leaders back.
inline std::optional<Solution> solve_cons_del_m2_sym_b3(const ControlInstance& inst) {
    if (!(inst.variant == kConsDel))
        throw std::invalid_argument("solver handles cons-del only");
    ControlInstance added = complement_del_to_add(inst);
    auto sub = solve_cons_add_m2_sym_b3(added);
    if (!sub) return std::nullopt;
    Solution sol;
    for (const VoterId& id : sub->leaders)
        sol.leaders.insert(complement_original_id(id));
    return sol;
}

// ---------------------------------------------------------------------------
// Symmetric bundles of size at most two, any number of candidates
// ---------------------------------------------------------------------------

/// Constructive addition with symmetric bundles of size at most two. Only
/// bundles holding a p-voter can help; for every candidate target score of
/// p the cheapest mix prefers {p,p} pairs, then {p} singletons, then {p,c}
/// pairs spread over the rivals with the most remaining headroom.
inline std::optional<Solution> solve_cons_add_sym_b2(const ControlInstance& inst) {
    if (!(inst.variant == kConsAdd))
        throw std::invalid_argument("solver handles cons-add only");
    if (inst.kappa.max_bundle_size() > 2)
        throw std::invalid_argument("solver needs bundles of size at most two");

    auto favorites = inst.controlled_favorites();
    auto scores = plurality_scores(inst.election);
    const CandidateId& p = inst.preferred;

    std::vector<VoterId> singles_p;                      // {p}
    std::vector<VoterId> pairs_pp;                       // {p,p}
    std::map<CandidateId, std::vector<VoterId>> pairs_pc;  // {p,c}
    int total_bundles = 0;
    for (const auto& [leader, bundle] : detail::distinct_bundles(inst.kappa)) {
        ++total_bundles;
        std::vector<CandidateId> favs;
        for (const VoterId& id : bundle) favs.push_back(favorites.at(id));
        const int p_count = static_cast<int>(std::count(favs.begin(), favs.end(), p));
        if (p_count == 0) continue;
        if (bundle.size() == 1)
            singles_p.push_back(leader);
        else if (p_count == 2)
            pairs_pp.push_back(leader);
        else {
            CandidateId other = favs[0] == p ? favs[1] : favs[0];
            pairs_pc[other].push_back(leader);
        }
    }

    const int k_eff = detail::effective_budget(inst, total_bundles);
    const int sp = scores.at(p);
    int max_gain = static_cast<int>(singles_p.size()) + 2 * static_cast<int>(pairs_pp.size());
    for (const auto& [c, v] : pairs_pc) max_gain += static_cast<int>(v.size());

    struct Plan {
        int cost, target, pp, units;
    };
    std::optional<Plan> best;
    for (int target = sp; target <= sp + max_gain; ++target) {
        bool ok = true;
        for (const auto& [c, s] : scores)
            if (c != p && s > target) { ok = false; break; }
        if (!ok) continue;
        const int gain = target - sp;
        const int pp = std::min(static_cast<int>(pairs_pp.size()), gain / 2);
        const int units = gain - 2 * pp;
        int capacity = static_cast<int>(singles_p.size());
        for (const auto& [c, v] : pairs_pc)
            capacity += std::min(static_cast<int>(v.size()), target - scores.at(c));
        if (units > capacity) continue;
        const int cost = pp + units;
        if (cost <= k_eff && (!best || cost < best->cost))
            best = Plan{cost, target, pp, units};
    }
    if (!best) return std::nullopt;

    Solution sol;
    for (int t = 0; t < best->pp; ++t) sol.leaders.insert(pairs_pp[t]);
    int left = best->units;
    for (const VoterId& id : singles_p) {
        if (left == 0) break;
        sol.leaders.insert(id);
        --left;
    }
    std::map<CandidateId, int> used;
    while (left > 0) {
        // rival with the most remaining headroom that still has pairs
        CandidateId pickc;
        int best_slack = -1;
        for (const auto& [c, v] : pairs_pc) {
            int slack = best->target - scores.at(c) - used[c];
            if (slack <= 0 || used[c] >= static_cast<int>(v.size())) continue;
            if (slack > best_slack) {
                best_slack = slack;
                pickc = c;
            }
        }
        sol.leaders.insert(pairs_pc[pickc][used[pickc]]);
        ++used[pickc];
        --left;
    }
    return sol;
}

/// Per-rival score surpluses over the preferred candidate: how many points
/// each rival has to lose in the deletion setting. Non-positive entries
/// impose no constraint.
struct DeficitVector {
    std::map<CandidateId, int> deficit;

    static DeficitVector of(const Election& election, const CandidateId& preferred) {
        DeficitVector d;
        auto scores = plurality_scores(election);
        for (const auto& [c, s] : scores)
            if (c != preferred) d.deficit[c] = s - scores.at(preferred);
        return d;
    }
};

/// Constructive deletion with symmetric bundles of size at most two. With
/// p scoreless everything must go; otherwise bundles holding p-voters are
/// never deleted, singleton bundles get a dummy partner, and the deletion
/// need per rival becomes a degree lower bound on the rival multigraph,
/// solved as a maximum b-matching of the kept edges.
inline std::optional<Solution> solve_cons_del_sym_b2(const ControlInstance& inst) {
    if (!(inst.variant == kConsDel))
        throw std::invalid_argument("solver handles cons-del only");
    if (inst.kappa.max_bundle_size() > 2)
        throw std::invalid_argument("solver needs bundles of size at most two");

    auto scores = plurality_scores(inst.election);
    const CandidateId& p = inst.preferred;
    if (co_winners(inst.election).count(p)) return Solution{};

    auto bundles = detail::distinct_bundles(inst.kappa);
    const int k_eff = detail::effective_budget(inst, static_cast<int>(bundles.size()));
    std::map<VoterId, CandidateId> favorites = inst.controlled_favorites();

    if (scores.at(p) == 0) {
        // every remaining voter beats p, so delete every bundle
        std::set<VoterId> covered;
        Solution sol;
        for (const auto& [leader, bundle] : bundles) {
            sol.leaders.insert(leader);
            covered.insert(bundle.begin(), bundle.end());
        }
        if (covered.size() != inst.election.voters().size()) return std::nullopt;
        if (static_cast<int>(sol.leaders.size()) > k_eff) return std::nullopt;
        return sol;
    }

    // vertices: rivals first, then one dummy partner per singleton bundle
    std::vector<CandidateId> rivals;
    for (const CandidateId& c : inst.election.candidates())
        if (c != p) rivals.push_back(c);
    std::map<CandidateId, int> rival_index;
    for (std::size_t i = 0; i < rivals.size(); ++i)
        rival_index[rivals[i]] = static_cast<int>(i);

    Multigraph mg;
    mg.num_vertices = static_cast<int>(rivals.size());
    std::vector<std::pair<VoterId, std::set<VoterId>>> deletable;
    for (const auto& [leader, bundle] : bundles) {
        bool touches_p = false;
        for (const VoterId& id : bundle)
            if (favorites.at(id) == p) touches_p = true;
        if (touches_p) continue;
        if (bundle.size() == 1) {
            int dummy = mg.num_vertices++;
            mg.edges.emplace_back(rival_index.at(favorites.at(leader)), dummy);
        } else {
            auto it = bundle.begin();
            const CandidateId& c1 = favorites.at(*it);
            const CandidateId& c2 = favorites.at(*std::next(it));
            mg.edges.emplace_back(rival_index.at(c1), rival_index.at(c2));
        }
        deletable.emplace_back(leader, bundle);
    }

    std::vector<int> incidence(mg.num_vertices, 0);
    for (auto [u, v] : mg.edges) {
        incidence[u] += 1;
        incidence[v] += 1;
    }
    DeficitVector deficits = DeficitVector::of(inst.election, p);
    std::vector<int> caps(mg.num_vertices, 0);
    for (std::size_t i = 0; i < rivals.size(); ++i) {
        caps[i] = incidence[i] - std::max(deficits.deficit.at(rivals[i]), 0);
        if (caps[i] < 0) return std::nullopt;  // cannot shed enough points
    }
    for (int v = static_cast<int>(rivals.size()); v < mg.num_vertices; ++v)
        caps[v] = 1;

    std::vector<int> kept = max_bmatching(mg, caps);
    std::vector<char> is_kept(mg.edges.size(), 0);
    for (int e : kept) is_kept[e] = 1;

    Solution sol;
    for (std::size_t e = 0; e < deletable.size(); ++e)
        if (!is_kept[e]) sol.leaders.insert(deletable[e].first);
    if (static_cast<int>(sol.leaders.size()) > k_eff) return std::nullopt;
    return sol;
}

// ---------------------------------------------------------------------------
// Destructive variants
// ---------------------------------------------------------------------------

/// Answers one guessed-defeater sub-problem: the smallest leader set making
/// the defeater strictly exceed the preferred candidate, or nullopt.
using DefeaterSolver = std::function<std::optional<Solution>(
    const ControlInstance&, const CandidateId& defeater)>;

/// Defeater sub-solver for symmetric bundling graphs made of paths and
/// cycles: runs the weighted gap tables with the defeater's voters at +1,
/// the preferred candidate's at -1 and everyone else at 0, so bundles led
/// by third-candidate voters keep their effect. The strict-defeat margin is
/// the deficit plus one.
inline std::optional<Solution> solve_defeater_m2(const ControlInstance& inst,
                                                 const CandidateId& defeater) {
    auto scores = plurality_scores(inst.election);
    const int threshold = scores.at(inst.preferred) - scores.at(defeater) + 1;
    const int k_eff =
        detail::effective_budget(inst, static_cast<int>(inst.kappa.size()));
    auto favorites = inst.controlled_favorites();
    if (inst.variant.mode == Mode::add)
        return detail::min_leaders_for_gap(favorites, inst.kappa, defeater,
                                           inst.preferred, threshold, k_eff);
    // deleting preferred-candidate voters is what helps the defeater
    return detail::min_leaders_for_gap(favorites, inst.kappa, inst.preferred,
                                       defeater, threshold, k_eff);
}

/// Destructive control by guessing the defeater: every rival is asked, via
/// the supplied sub-solver, for the cheapest way to strictly beat the
/// preferred candidate; the smallest answer over all rivals wins.
inline std::optional<Solution> solve_destructive(const ControlInstance& inst,
                                                 const DefeaterSolver& sub_solver) {
    if (inst.variant.goal != Goal::destructive)
        throw std::invalid_argument("solver handles destructive variants only");
    std::optional<Solution> best;
    for (const CandidateId& rival : inst.election.candidates()) {
        if (rival == inst.preferred) continue;
        auto sol = sub_solver(inst, rival);
        if (!sol) continue;
        if (!best || sol->leaders.size() < best->leaders.size() ||
            (sol->leaders.size() == best->leaders.size() && sol->leaders < best->leaders))
            best = sol;
    }
    return best;
}

/// Destructive control with disjoint bundles: guess the defeater, then add
/// (or delete) the bundles with the best score-difference change in the
/// defeater's favor until she strictly beats p.
inline std::optional<Solution> solve_des_disjoint(const ControlInstance& inst) {
    if (inst.variant.goal != Goal::destructive)
        throw std::invalid_argument("solver handles destructive variants only");
    auto favorites = inst.controlled_favorites();
    BundlingProfile profile = classify_bundling(inst.kappa, favorites);
    if (!profile.disjoint)
        throw std::invalid_argument("solver needs disjoint bundles");

    auto scores = plurality_scores(inst.election);
    const CandidateId& p = inst.preferred;
    auto bundles = detail::distinct_bundles(inst.kappa);
    const int k_eff = detail::effective_budget(inst, static_cast<int>(bundles.size()));
    const bool add = inst.variant.mode == Mode::add;

    std::optional<Solution> best;
    for (const CandidateId& c : inst.election.candidates()) {
        if (c == p) continue;
        const int need = scores.at(p) - scores.at(c) + 1;
        std::vector<std::pair<int, VoterId>> gains;
        for (const auto& [leader, bundle] : bundles) {
            int cnt_c = 0, cnt_p = 0;
            for (const VoterId& id : bundle) {
                cnt_c += favorites.at(id) == c;
                cnt_p += favorites.at(id) == p;
            }
            int val = add ? cnt_c - cnt_p : cnt_p - cnt_c;
            if (val > 0) gains.emplace_back(-val, leader);  // sort: best first
        }
        std::sort(gains.begin(), gains.end());

        Solution sol;
        int got = 0;
        for (const auto& [negval, leader] : gains) {
            if (got >= need || static_cast<int>(sol.leaders.size()) >= k_eff) break;
            sol.leaders.insert(leader);
            got += -negval;
        }
        if (got < need) continue;
        if (!best || sol.leaders.size() < best->leaders.size() ||
            (sol.leaders.size() == best->leaders.size() && sol.leaders < best->leaders))
            best = sol;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Routing
// ---------------------------------------------------------------------------

struct DispatchOptions {
    OracleOptions oracle;
};

struct DispatchResult {
    std::optional<Solution> solution;
    std::string solver;
};

namespace detail {

inline bool all_paths_or_cycles(const std::vector<Component>& comps) {
    for (const Component& c : comps)
        if (c.shape == ComponentShape::other) return false;
    return true;
}

}  // namespace detail

/// Routes an instance to the most specific applicable solver: the b<=2
/// greedy / b-matching pair, the two-candidate b<=3 dynamic programs, the
/// destructive drivers, the anonymous-kappa binary programs, and finally
/// the exhaustive oracle.
inline DispatchResult dispatch(const ControlInstance& inst,
                               const DispatchOptions& opts = {}) {
    inst.validate();
    auto favorites = inst.controlled_favorites();
    BundlingProfile profile = classify_bundling(inst.kappa, favorites);
    const std::size_t m = inst.election.candidates().size();

    bool shapes_ok = false;
    if (profile.symmetric) {
        BundlingGraph graph = make_bundling_graph(inst.kappa);
        shapes_ok = detail::all_paths_or_cycles(connected_components(graph));
    }
    const bool full_domain =
        inst.kappa.size() == (inst.variant.mode == Mode::add
                                  ? inst.pool.size()
                                  : inst.election.voters().size());

    if (inst.variant.goal == Goal::constructive) {
        if (profile.symmetric && profile.max_bundle_size <= 2) {
            if (inst.variant.mode == Mode::add)
                return {solve_cons_add_sym_b2(inst), "b2-add"};
            return {solve_cons_del_sym_b2(inst), "b2-del"};
        }
        if (profile.symmetric && profile.max_bundle_size <= 3 && m == 2 && shapes_ok) {
            if (inst.variant.mode == Mode::add)
                return {solve_cons_add_m2_sym_b3(inst), "m2-add"};
            return {solve_cons_del_m2_sym_b3(inst), "m2-del"};
        }
    } else {
        if (profile.symmetric && profile.disjoint)
            return {solve_des_disjoint(inst), "des-disjoint"};
        if (profile.symmetric && profile.max_bundle_size <= 3 && shapes_ok && m >= 2)
            return {solve_destructive(inst, solve_defeater_m2), "des-turing"};
    }

    if (profile.anonymous && full_domain && !inst.kappa.empty())
        return {solve_anonymous_min(inst), "ilp-anon"};

    if (static_cast<int>(inst.kappa.size()) <= opts.oracle.domain_cap) {
        if (inst.budget.is_unlimited())
            return {solve_unlimited(inst, opts.oracle), "oracle-unlim"};
        return {solve_exact(inst, opts.oracle), "oracle"};
    }
    throw unsupported_instance(
        "no polynomial solver applies and the domain exceeds the oracle cap (" +
        std::to_string(inst.kappa.size()) + " > " +
        std::to_string(opts.oracle.domain_cap) + ")");
}

}  // namespace combictl
