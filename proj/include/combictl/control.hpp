#pragma once

#include <optional>
#include <sstream>
#include <string>

#include "core.hpp"

// The four control variants, budgets, control instances and solution
// verification.

namespace combictl {

enum class Goal { constructive, destructive };
enum class Mode { add, del };

struct Variant {
    Goal goal = Goal::constructive;
    Mode mode = Mode::add;

    friend bool operator==(const Variant& a, const Variant& b) {
        return a.goal == b.goal && a.mode == b.mode;
    }
};

inline constexpr Variant kConsAdd{Goal::constructive, Mode::add};
inline constexpr Variant kConsDel{Goal::constructive, Mode::del};
inline constexpr Variant kDesAdd{Goal::destructive, Mode::add};
inline constexpr Variant kDesDel{Goal::destructive, Mode::del};

inline std::string to_string(const Variant& v) {
    std::string s = v.goal == Goal::constructive ? "cons" : "des";
    s += v.mode == Mode::add ? "-add" : "-del";
    return s;
}

inline std::optional<Variant> parse_variant(const std::string& s) {
    if (s == "cons-add") return kConsAdd;
    if (s == "cons-del") return kConsDel;
    if (s == "des-add") return kDesAdd;
    if (s == "des-del") return kDesDel;
    return std::nullopt;
}

/// Either a non-negative solution-size limit k or unlimited.
struct Budget {
    std::optional<int> limit;  // nullopt = unlimited

    static Budget bounded(int k) {
        if (k < 0) throw std::invalid_argument("budget must be non-negative");
        return Budget{k};
    }
    static Budget unlimited() { return Budget{std::nullopt}; }

    bool is_unlimited() const { return !limit.has_value(); }
    bool allows(std::size_t n) const {
        return is_unlimited() || n <= static_cast<std::size_t>(*limit);
    }
};

/// One control problem instance.
///
/// For add variants the bundling function lives over the unregistered pool,
/// for delete variants over the registered voters. The domain of kappa may
/// be a proper subset of that voter set; voters outside the domain can never
/// be selected as leaders and, since bundles stay inside the domain, are
/// never added or deleted at all.
struct ControlInstance {
    Variant variant;
    Election election;          // registered voters V
    std::vector<Voter> pool;    // unregistered voters W, empty for delete modes
    BundlingFunction kappa;
    CandidateId preferred;
    Budget budget;

    void validate() const {
        if (!election.has_candidate(preferred))
            throw std::invalid_argument("preferred candidate " + preferred +
                                        " is not in the candidate set");
        if (variant.mode == Mode::del && !pool.empty())
            throw std::invalid_argument("delete variants take no unregistered voters");
        std::set<VoterId> pool_ids;
        for (const Voter& w : pool) {
            if (!election.has_candidate(w.favorite))
                throw std::invalid_argument("unregistered voter " + w.id +
                                            " has unknown favorite " + w.favorite);
            if (!pool_ids.insert(w.id).second)
                throw std::invalid_argument("duplicate unregistered voter id: " + w.id);
            if (election.find_voter(w.id) != nullptr)
                throw std::invalid_argument("voter id in both V and W: " + w.id);
        }
        for (const auto& [leader, bundle] : kappa.bundles()) {
            bool ok = variant.mode == Mode::add
                          ? pool_ids.count(leader) != 0
                          : election.find_voter(leader) != nullptr;
            if (!ok)
                throw std::invalid_argument("bundling domain voter " + leader +
                                            " is not in the controlled voter set");
        }
    }

    /// Favorite of every voter kappa can talk about (the controlled side).
    std::map<VoterId, CandidateId> controlled_favorites() const {
        std::map<VoterId, CandidateId> out;
        if (variant.mode == Mode::add) {
            for (const Voter& w : pool) out[w.id] = w.favorite;
        } else {
            for (const Voter& v : election.voters()) out[v.id] = v.favorite;
        }
        return out;
    }

    const Voter* find_pool_voter(const VoterId& id) const {
        for (const Voter& w : pool)
            if (w.id == id) return &w;
        return nullptr;
    }
};

struct Solution {
    std::set<VoterId> leaders;

    friend bool operator==(const Solution& a, const Solution& b) {
        return a.leaders == b.leaders;
    }
};

/// The election after adding / deleting the bundle union of the solution.
inline Election apply_solution(const ControlInstance& inst, const Solution& sol) {
    std::set<VoterId> touched = bundle_union(inst.kappa, sol.leaders);
    std::vector<Voter> voters;
    if (inst.variant.mode == Mode::add) {
        voters = inst.election.voters();
        for (const Voter& w : inst.pool)
            if (touched.count(w.id)) voters.push_back(w);
    } else {
        for (const Voter& v : inst.election.voters())
            if (!touched.count(v.id)) voters.push_back(v);
    }
    return Election(inst.election.candidates(), voters);
}

struct VerifyResult {
    enum class Reason { ok, budget_exceeded, leader_outside_domain, winner_condition };

    bool ok = false;
    Reason reason = Reason::winner_condition;
    std::string detail;

    explicit operator bool() const { return ok; }

    static VerifyResult pass() { return {true, Reason::ok, ""}; }
    static VerifyResult fail(Reason r, std::string d) { return {false, r, std::move(d)}; }
};

inline const char* to_string(VerifyResult::Reason r) {
    switch (r) {
        case VerifyResult::Reason::ok: return "ok";
        case VerifyResult::Reason::budget_exceeded: return "budget-exceeded";
        case VerifyResult::Reason::leader_outside_domain: return "leader-outside-domain";
        default: return "winner-condition";
    }
}

/// Checks a solution: budget respected, leaders inside the bundling domain,
/// and the winner condition of the variant. Constructive success means the
/// preferred candidate co-wins; destructive success means some rival
/// strictly exceeds her.
inline VerifyResult verify_solution(const ControlInstance& inst, const Solution& sol) {
    if (!inst.budget.allows(sol.leaders.size())) {
        std::ostringstream os;
        os << sol.leaders.size() << " leaders exceed budget " << *inst.budget.limit;
        return VerifyResult::fail(VerifyResult::Reason::budget_exceeded, os.str());
    }
    for (const VoterId& leader : sol.leaders)
        if (!inst.kappa.contains(leader))
            return VerifyResult::fail(VerifyResult::Reason::leader_outside_domain,
                                      "leader " + leader + " has no bundle");
    Election final_election = apply_solution(inst, sol);
    bool preferred_cowins = co_winners(final_election).count(inst.preferred) != 0;
    bool ok = inst.variant.goal == Goal::constructive ? preferred_cowins : !preferred_cowins;
    if (!ok)
        return VerifyResult::fail(VerifyResult::Reason::winner_condition,
                                  inst.variant.goal == Goal::constructive
                                      ? inst.preferred + " does not co-win"
                                      : inst.preferred + " still co-wins");
    return VerifyResult::pass();
}

}  // namespace combictl
