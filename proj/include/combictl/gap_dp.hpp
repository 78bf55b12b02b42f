#pragma once

#include <cstdint>
#include <limits>

#include "core.hpp"

// Gap maximization on path and cycle bundling graphs.
//
// gap(W') = s_p(kappa(W')) - s_g(kappa(W')) for a preferred candidate p
// and a rival g; voters favoring anyone else count zero, which lets the
// destructive driver run the same tables per defeater on a multi-candidate
// electorate. On a path w_1..w_n, T[r,s,t] holds a maximum
// (s,t)-proper-subset of size exactly r: a leader set within positions
// s..t whose bundle union also stays within s..t. Intervals of length <= 9
// are solved by exhaustive enumeration; longer intervals split into two
// sub-intervals, maximizing the gap sum over every split point and size
// partition.

namespace combictl {

/// Dynamic-programming table over path positions (1-based in the API).
class GapTable {
public:
    int length() const { return n_; }
    int max_size() const { return rmax_; }

    /// Gap of a maximum (s,t)-proper-subset of size exactly r, or nullopt
    /// when no proper subset of that size exists.
    std::optional<int> gap(int r, int s, int t) const {
        check(r, s, t);
        const Entry& e = at(r, s - 1, t - 1);
        if (e.kind == Kind::infeasible) return std::nullopt;
        return e.gap;
    }

    /// The stored leader set behind gap(r,s,t), in path order.
    std::optional<std::vector<VoterId>> leaders(int r, int s, int t) const {
        check(r, s, t);
        if (at(r, s - 1, t - 1).kind == Kind::infeasible) return std::nullopt;
        std::vector<int> positions;
        collect(r, s - 1, t - 1, positions);
        std::sort(positions.begin(), positions.end());
        std::vector<VoterId> ids;
        for (int p : positions) ids.push_back(ids_[p]);
        return ids;
    }

private:
    enum class Kind : std::uint8_t { infeasible, empty, base, split };
    struct Entry {
        int gap = 0;
        Kind kind = Kind::infeasible;
        std::uint16_t a = 0;  // base: relative leader mask; split: j
        std::uint16_t b = 0;  // split: size of the right part
    };

    Entry& at(int r, int s, int t) { return entries_[(r * n_ + s) * n_ + t]; }
    const Entry& at(int r, int s, int t) const { return entries_[(r * n_ + s) * n_ + t]; }

    void check(int r, int s, int t) const {
        if (r < 0 || r > rmax_ || s < 1 || t < s || t > n_)
            throw std::out_of_range("gap table index out of range");
    }

    void collect(int r, int s, int t, std::vector<int>& out) const {
        const Entry& e = at(r, s, t);
        switch (e.kind) {
            case Kind::empty:
                return;
            case Kind::base:
                for (int i = 0; s + i <= t; ++i)
                    if (e.a & (1u << i)) out.push_back(s + i);
                return;
            case Kind::split: {
                int j = e.a;
                int right = e.b;
                collect(r - right, s, s + j, out);
                collect(right, s + j + 1, t, out);
                return;
            }
            default:
                throw std::logic_error("reconstructing an infeasible entry");
        }
    }

    int n_ = 0;
    int rmax_ = 0;
    std::vector<VoterId> ids_;
    std::vector<Entry> entries_;

    friend GapTable max_gap_path(const std::vector<Voter>& path_voters,
                                 const BundlingFunction& kappa,
                                 const CandidateId& preferred,
                                 const CandidateId& rival, int max_size);
};

/// Builds the full table for a path component. `path_voters` must be in
/// path order and every bundle must stay within distance one of its leader
/// along that order; anything else is rejected as a non-path component.
inline GapTable max_gap_path(const std::vector<Voter>& path_voters,
                             const BundlingFunction& kappa,
                             const CandidateId& preferred,
                             const CandidateId& rival, int max_size) {
    const int n = static_cast<int>(path_voters.size());
    if (n == 0) throw std::invalid_argument("empty path component");

    std::map<VoterId, int> pos;
    for (int i = 0; i < n; ++i) pos[path_voters[i].id] = i;

    std::vector<int> weight(n);
    std::vector<std::vector<int>> bundle_pos(n);
    for (int i = 0; i < n; ++i) {
        weight[i] = path_voters[i].favorite == preferred ? 1
                    : path_voters[i].favorite == rival   ? -1
                                                         : 0;
        for (const VoterId& member : kappa.bundle(path_voters[i].id)) {
            auto it = pos.find(member);
            if (it == pos.end() || std::abs(it->second - i) > 1)
                throw std::invalid_argument("bundles do not form the given path");
            bundle_pos[i].push_back(it->second);
        }
        std::sort(bundle_pos[i].begin(), bundle_pos[i].end());
    }

    GapTable table;
    table.n_ = n;
    table.rmax_ = std::min(max_size, n);
    table.ids_.reserve(n);
    for (const Voter& v : path_voters) table.ids_.push_back(v.id);
    table.entries_.assign(static_cast<std::size_t>(table.rmax_ + 1) * n * n, {});

    constexpr int kBaseLen = 9;  // exhaustive threshold of the split property

    for (int len = 1; len <= n; ++len) {
        for (int s = 0; s + len - 1 < n; ++s) {
            const int t = s + len - 1;
            for (int r = 0; r <= table.rmax_; ++r) {
                GapTable::Entry& e = table.at(r, s, t);
                if (r == 0) {
                    e = {0, GapTable::Kind::empty, 0, 0};
                    continue;
                }
                if (r > len) continue;  // stays infeasible
                e.kind = GapTable::Kind::infeasible;
            }
            if (len <= kBaseLen) {
                // enumerate every subset of the window once, filling all sizes
                for (std::uint32_t mask = 1; mask < (1u << len); ++mask) {
                    int r = __builtin_popcount(mask);
                    if (r > table.rmax_) continue;
                    bool proper = true;
                    std::uint32_t covered = 0;
                    for (int i = 0; i < len && proper; ++i) {
                        if (!(mask & (1u << i))) continue;
                        for (int p : bundle_pos[s + i]) {
                            if (p < s || p > t) {
                                proper = false;
                                break;
                            }
                            covered |= 1u << (p - s);
                        }
                    }
                    if (!proper) continue;
                    int g = 0;
                    for (int i = 0; i < len; ++i)
                        if (covered & (1u << i)) g += weight[s + i];
                    GapTable::Entry& e = table.at(r, s, t);
                    if (e.kind == GapTable::Kind::infeasible || g > e.gap)
                        e = {g, GapTable::Kind::base,
                             static_cast<std::uint16_t>(mask), 0};
                }
            } else {
                for (int r = 1; r <= std::min(table.rmax_, len); ++r) {
                    GapTable::Entry& e = table.at(r, s, t);
                    for (int j = 0; j <= len - 2; ++j) {
                        for (int i = 0; i <= r; ++i) {
                            const GapTable::Entry& left = table.at(r - i, s, s + j);
                            const GapTable::Entry& right = table.at(i, s + j + 1, t);
                            if (left.kind == GapTable::Kind::infeasible ||
                                right.kind == GapTable::Kind::infeasible)
                                continue;
                            int g = left.gap + right.gap;
                            if (e.kind == GapTable::Kind::infeasible || g > e.gap)
                                e = {g, GapTable::Kind::split,
                                     static_cast<std::uint16_t>(j),
                                     static_cast<std::uint16_t>(i)};
                        }
                    }
                }
            }
        }
    }
    return table;
}

/// Best achievable gap per solution size, with at-most-r semantics:
/// entry r is the best gap over leader sets of size <= r, together with a
/// witness. Entry 0 is always the empty set with gap 0.
struct SizedGaps {
    std::vector<int> best_gap;
    std::vector<std::vector<VoterId>> witness;

    int cap() const { return static_cast<int>(best_gap.size()) - 1; }
};

/// Converts the exact-size column T[r,1,n] of a path table into the
/// monotone at-most-r curve.
inline SizedGaps path_sized_gaps(const GapTable& table, int cap) {
    SizedGaps out;
    cap = std::min(cap, table.max_size());
    out.best_gap.assign(cap + 1, 0);
    out.witness.assign(cap + 1, {});
    for (int r = 1; r <= cap; ++r) {
        out.best_gap[r] = out.best_gap[r - 1];
        out.witness[r] = out.witness[r - 1];
        auto g = table.gap(r, 1, table.length());
        if (g && *g > out.best_gap[r]) {
            out.best_gap[r] = *g;
            out.witness[r] = *table.leaders(r, 1, table.length());
        }
    }
    return out;
}

namespace detail {

inline VoterId fresh_id(std::string base, const BundlingFunction& kappa,
                        const std::map<VoterId, int>& taken) {
    while (kappa.contains(base) || taken.count(base)) base += "_";
    return base;
}

}  // namespace detail

/// Gap maximization on a cycle component. Cycles of length <= 9 are
/// enumerated exhaustively. Longer cycles are broken at each of the first
/// nine edges: breaking between w_i and w_{i+1} inserts two fresh
/// rival voters w_b (paired with w_i) and w_e (paired with w_{i+1}),
/// turning the cycle into a path that max_gap_path solves; the cycle
/// answer is the per-size maximum over the nine path answers.
inline SizedGaps max_gap_cycle(const std::vector<Voter>& cycle_voters,
                               const BundlingFunction& kappa,
                               const CandidateId& preferred,
                               const CandidateId& rival, int max_size) {
    const int n = static_cast<int>(cycle_voters.size());
    if (n < 3) throw std::invalid_argument("cycle component needs at least 3 voters");
    std::map<VoterId, int> pos;
    for (int i = 0; i < n; ++i) pos[cycle_voters[i].id] = i;
    for (int i = 0; i < n; ++i) {
        const std::set<VoterId>& b = kappa.bundle(cycle_voters[i].id);
        for (const VoterId& member : b) {
            auto it = pos.find(member);
            int d = it == pos.end() ? -1 : std::abs(it->second - i);
            if (it == pos.end() || (d > 1 && d != n - 1))
                throw std::invalid_argument("bundles do not form the given cycle");
        }
    }

    const int cap = std::min(max_size, n);
    SizedGaps out;
    out.best_gap.assign(cap + 1, 0);
    out.witness.assign(cap + 1, {});

    if (n <= 9) {
        std::vector<int> weight(n);
        std::vector<std::uint32_t> bmask(n, 0);
        for (int i = 0; i < n; ++i) {
            weight[i] = cycle_voters[i].favorite == preferred ? 1
                        : cycle_voters[i].favorite == rival   ? -1
                                                              : 0;
            for (const VoterId& member : kappa.bundle(cycle_voters[i].id))
                bmask[i] |= 1u << pos.at(member);
        }
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            int r = __builtin_popcount(mask);
            if (r > cap) continue;
            std::uint32_t covered = 0;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) covered |= bmask[i];
            int g = 0;
            for (int i = 0; i < n; ++i)
                if (covered & (1u << i)) g += weight[i];
            if (g > out.best_gap[r]) {
                out.best_gap[r] = g;
                out.witness[r].clear();
                for (int i = 0; i < n; ++i)
                    if (mask & (1u << i)) out.witness[r].push_back(cycle_voters[i].id);
            }
        }
        for (int r = 1; r <= cap; ++r)
            if (out.best_gap[r - 1] > out.best_gap[r]) {
                out.best_gap[r] = out.best_gap[r - 1];
                out.witness[r] = out.witness[r - 1];
            }
        return out;
    }

    const VoterId b_id = detail::fresh_id("__cycle_b", kappa, pos);
    const VoterId e_id = detail::fresh_id("__cycle_e", kappa, pos);

    for (int cut = 0; cut < 9; ++cut) {
        // break the edge between positions cut and cut+1
        const VoterId& wi = cycle_voters[cut].id;
        const VoterId& wj = cycle_voters[cut + 1].id;

        std::vector<Voter> order;
        order.push_back({b_id, rival});
        for (int step = 0; step < n; ++step)
            order.push_back(cycle_voters[(cut - step + n) % n]);
        order.push_back({e_id, rival});

        std::map<VoterId, std::set<VoterId>> bundles;
        for (const Voter& v : cycle_voters) bundles[v.id] = kappa.bundle(v.id);
        bundles[wi].erase(wj);
        bundles[wi].insert(b_id);
        bundles[wj].erase(wi);
        bundles[wj].insert(e_id);
        bundles[b_id] = {b_id, wi};
        bundles[e_id] = {e_id, wj};
        BundlingFunction broken{std::move(bundles)};

        GapTable t = max_gap_path(order, broken, preferred, rival, cap);
        for (int r = 1; r <= cap; ++r) {
            auto g = t.gap(r, 1, t.length());
            if (g && *g > out.best_gap[r]) {
                std::vector<VoterId> w = *t.leaders(r, 1, t.length());
                w.erase(std::remove_if(w.begin(), w.end(),
                                       [&](const VoterId& id) {
                                           return id == b_id || id == e_id;
                                       }),
                        w.end());
                out.best_gap[r] = *g;
                out.witness[r] = std::move(w);
            }
        }
    }
    for (int r = 1; r <= cap; ++r)
        if (out.best_gap[r - 1] > out.best_gap[r]) {
            out.best_gap[r] = out.best_gap[r - 1];
            out.witness[r] = out.witness[r - 1];
        }
    return out;
}

}  // namespace combictl
