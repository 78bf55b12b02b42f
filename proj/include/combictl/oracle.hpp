#pragma once

#include <cstdint>
#include <functional>
#include <unordered_set>

#include "control.hpp"

// Exhaustive exact solver. Ground truth for every other solver in the
// library: enumerates leader subsets in size-lexicographic order, so the
// first verifying subset is a minimum one and lexicographically smallest
// among the minima.

namespace combictl {

struct OracleOptions {
    int domain_cap = 22;       // refuse domains larger than this
    bool union_dedup = true;   // prune subsets whose bundle unions coincide
};

namespace detail {

// Bitmask view of an instance: domain voters are enumeration slots, the
// affected universe (all bundle members) is a bitset, candidates carry a
// base score plus a membership mask.
struct IndexedInstance {
    std::vector<VoterId> domain;     // sorted
    std::vector<VoterId> universe;   // sorted bundle members
    int words = 0;
    std::vector<std::vector<std::uint64_t>> bundle_mask;  // per domain voter
    std::vector<std::vector<std::uint64_t>> cand_mask;    // per candidate
    std::vector<long long> base_score;                    // per candidate
    int preferred_index = -1;
    bool add_mode = true;
    bool destructive = false;

    static IndexedInstance build(const ControlInstance& inst) {
        IndexedInstance ix;
        ix.add_mode = inst.variant.mode == Mode::add;
        ix.destructive = inst.variant.goal == Goal::destructive;

        std::set<VoterId> dom = inst.kappa.domain();
        ix.domain.assign(dom.begin(), dom.end());
        std::set<VoterId> uni;
        for (const auto& [leader, bundle] : inst.kappa.bundles())
            uni.insert(bundle.begin(), bundle.end());
        ix.universe.assign(uni.begin(), uni.end());
        ix.words = static_cast<int>((ix.universe.size() + 63) / 64);

        std::map<VoterId, int> uindex;
        for (std::size_t i = 0; i < ix.universe.size(); ++i)
            uindex[ix.universe[i]] = static_cast<int>(i);

        auto favorites = inst.controlled_favorites();
        const auto& cands = inst.election.candidates();
        auto base = plurality_scores(inst.election);
        ix.cand_mask.assign(cands.size(), std::vector<std::uint64_t>(ix.words, 0));
        ix.base_score.resize(cands.size());
        for (std::size_t c = 0; c < cands.size(); ++c) {
            ix.base_score[c] = base.at(cands[c]);
            if (cands[c] == inst.preferred) ix.preferred_index = static_cast<int>(c);
        }
        for (std::size_t i = 0; i < ix.universe.size(); ++i) {
            const CandidateId& fav = favorites.at(ix.universe[i]);
            auto it = std::lower_bound(cands.begin(), cands.end(), fav);
            std::size_t c = static_cast<std::size_t>(it - cands.begin());
            ix.cand_mask[c][i / 64] |= std::uint64_t{1} << (i % 64);
        }
        for (const VoterId& leader : ix.domain) {
            std::vector<std::uint64_t> mask(ix.words, 0);
            for (const VoterId& member : inst.kappa.bundle(leader)) {
                int i = uindex.at(member);
                mask[i / 64] |= std::uint64_t{1} << (i % 64);
            }
            ix.bundle_mask.push_back(std::move(mask));
        }
        return ix;
    }

    long long final_score(std::size_t c, const std::vector<std::uint64_t>& u) const {
        long long delta = 0;
        for (int w = 0; w < words; ++w)
            delta += __builtin_popcountll(u[w] & cand_mask[c][w]);
        return add_mode ? base_score[c] + delta : base_score[c] - delta;
    }

    bool union_succeeds(const std::vector<std::uint64_t>& u) const {
        long long sp = final_score(static_cast<std::size_t>(preferred_index), u);
        for (std::size_t c = 0; c < cand_mask.size(); ++c) {
            if (static_cast<int>(c) == preferred_index) continue;
            long long s = final_score(c, u);
            if (destructive) {
                if (s > sp) return true;
            } else {
                if (s > sp) return false;
            }
        }
        return !destructive;
    }
};

struct MaskHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (std::uint64_t w : v) {
            h ^= static_cast<std::size_t>(w);
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Enumerates domain subsets of one fixed size in lexicographic index order
// and returns the first verifying subset, if any.
inline std::optional<std::vector<int>> first_hit_of_size(
    const IndexedInstance& ix, int size,
    std::unordered_set<std::vector<std::uint64_t>, MaskHash>* seen_unions) {
    int n = static_cast<int>(ix.domain.size());
    std::vector<int> chosen;
    std::vector<std::vector<std::uint64_t>> unions;
    unions.emplace_back(ix.words, 0);

    std::optional<std::vector<int>> found;
    std::function<bool(int, int)> rec = [&](int start, int remaining) -> bool {
        if (remaining == 0) {
            const auto& u = unions.back();
            if (seen_unions != nullptr && !seen_unions->insert(u).second)
                return false;  // same union already tested
            if (ix.union_succeeds(u)) {
                found = chosen;
                return true;
            }
            return false;
        }
        for (int i = start; i + remaining <= n; ++i) {
            std::vector<std::uint64_t> next = unions.back();
            for (int w = 0; w < ix.words; ++w) next[w] |= ix.bundle_mask[i][w];
            unions.push_back(std::move(next));
            chosen.push_back(i);
            if (rec(i + 1, remaining - 1)) return true;
            chosen.pop_back();
            unions.pop_back();
        }
        return false;
    };
    rec(0, size);
    return found;
}

inline std::optional<Solution> enumerate_by_size(const ControlInstance& inst,
                                                 int max_size,
                                                 const OracleOptions& opts) {
    IndexedInstance ix = IndexedInstance::build(inst);
    std::unordered_set<std::vector<std::uint64_t>, MaskHash> seen;
    auto* seen_ptr = opts.union_dedup ? &seen : nullptr;
    int n = static_cast<int>(ix.domain.size());
    max_size = std::min(max_size, n);
    for (int size = 0; size <= max_size; ++size) {
        auto hit = first_hit_of_size(ix, size, seen_ptr);
        if (hit) {
            Solution sol;
            for (int i : *hit) sol.leaders.insert(ix.domain[i]);
            return sol;
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Minimum-size exact solve by exhaustive enumeration. Requires a bounded
/// budget and a domain within the configured cap. Among minimum solutions
/// the lexicographically smallest leader set is returned.
inline std::optional<Solution> solve_exact(const ControlInstance& inst,
                                           const OracleOptions& opts = {}) {
    if (inst.budget.is_unlimited())
        throw std::invalid_argument("solve_exact requires a bounded budget");
    if (static_cast<int>(inst.kappa.size()) > opts.domain_cap)
        throw std::runtime_error("oracle domain cap exceeded: " +
                                 std::to_string(inst.kappa.size()) + " > " +
                                 std::to_string(opts.domain_cap));
    return detail::enumerate_by_size(inst, *inst.budget.limit, opts);
}

/// Unlimited-budget solve. Constructive deletion with a full bundling
/// domain is always a yes-instance: deleting every bundle empties the
/// election and every candidate co-wins. The other variants fall back to
/// exhaustive search over all subset sizes.
inline std::optional<Solution> solve_unlimited(const ControlInstance& inst,
                                               const OracleOptions& opts = {}) {
    if (static_cast<int>(inst.kappa.size()) > opts.domain_cap)
        throw std::runtime_error("oracle domain cap exceeded: " +
                                 std::to_string(inst.kappa.size()) + " > " +
                                 std::to_string(opts.domain_cap));
    if (inst.variant == kConsDel &&
        inst.kappa.size() == inst.election.voters().size()) {
        Solution all;
        for (const Voter& v : inst.election.voters()) all.leaders.insert(v.id);
        return all;
    }
    return detail::enumerate_by_size(inst, static_cast<int>(inst.kappa.size()), opts);
}

}  // namespace combictl
