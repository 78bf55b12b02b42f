#pragma once

#include <cstdint>
#include <functional>
#include <sstream>

#include "control.hpp"

// Binary feasibility programs for anonymous bundling functions. With
// Plurality preferences an anonymous kappa is determined by favorite
// candidates, so there is one voter class per favorite occurring in the
// domain, one selection variable x_i and one touched-class variable y_i per
// class, and for destructive variants one defeater selector per rival. A
// small branch-and-bound search decides feasibility.

namespace combictl {

struct ClassModel {
    struct ClassInfo {
        CandidateId favorite;
        int count = 0;                   // N_i: domain voters of this class
        std::set<int> bundle_classes;    // kappa at class level, reflexive
        std::vector<VoterId> members;    // sorted domain voter ids
    };

    std::vector<ClassInfo> classes;              // sorted by favorite
    std::map<CandidateId, long long> initial_scores;  // s(a) over registered V
    std::map<CandidateId, int> class_of;         // F(a) as a class index
    int total_voters = 0;                        // |V| + |W|
};

/// Collapses an anonymous instance to its favorite-candidate classes.
inline ClassModel collapse_to_classes(const ControlInstance& inst) {
    auto favorites = inst.controlled_favorites();
    if (inst.kappa.size() != favorites.size())
        throw std::invalid_argument("class collapse needs a full bundling domain");
    BundlingProfile profile = classify_bundling(inst.kappa, favorites);
    if (!profile.anonymous)
        throw std::invalid_argument("class collapse needs an anonymous bundling function");

    ClassModel model;
    std::map<CandidateId, std::vector<VoterId>> grouped;
    for (const auto& [leader, bundle] : inst.kappa.bundles())
        grouped[favorites.at(leader)].push_back(leader);
    for (auto& [fav, members] : grouped) {
        std::sort(members.begin(), members.end());
        model.class_of[fav] = static_cast<int>(model.classes.size());
        model.classes.push_back(
            {fav, static_cast<int>(members.size()), {}, members});
    }
    for (auto& cls : model.classes) {
        const std::set<VoterId>& bundle = inst.kappa.bundle(cls.members.front());
        for (const VoterId& member : bundle)
            cls.bundle_classes.insert(model.class_of.at(favorites.at(member)));
    }
    for (const auto& [c, s] : plurality_scores(inst.election))
        model.initial_scores[c] = s;
    model.total_voters =
        static_cast<int>(inst.election.voters().size() + inst.pool.size());
    return model;
}

/// A conjunction of <=-constraints over binary variables.
struct BinaryProgram {
    struct Constraint {
        std::vector<std::pair<int, long long>> terms;  // (variable, coefficient)
        long long rhs = 0;
        std::string label;
    };

    std::vector<std::string> variables;
    std::vector<Constraint> constraints;

    /// LP-style plain-text dump for debugging.
    std::string to_lp_string() const {
        std::ostringstream os;
        os << "subject to\n";
        for (const Constraint& c : constraints) {
            os << "  " << c.label << ": ";
            bool first = true;
            for (const auto& [v, coef] : c.terms) {
                if (coef >= 0 && !first) os << "+ ";
                if (coef < 0) os << "- ";
                long long a = std::abs(coef);
                if (a != 1) os << a << " ";
                os << variables[v] << " ";
                first = false;
            }
            if (first) os << "0 ";
            os << "<= " << c.rhs << "\n";
        }
        os << "binary\n ";
        for (const std::string& v : variables) os << " " << v;
        os << "\n";
        return os.str();
    }
};

/// Emits the constraint system for the requested variant: budget, support,
/// the linking of x to y with factor M = number of classes, the winning or
/// losing score constraints, and for destructive variants big-M implied
/// defeat constraints plus "at least one defeater".
inline BinaryProgram build_program(const ClassModel& model, const Variant& variant,
                                   const CandidateId& preferred, int k) {
    const int M = static_cast<int>(model.classes.size());
    BinaryProgram prog;
    std::vector<int> x(M), y(M);
    for (int i = 0; i < M; ++i) {
        x[i] = static_cast<int>(prog.variables.size());
        prog.variables.push_back("x_" + model.classes[i].favorite);
    }
    for (int i = 0; i < M; ++i) {
        y[i] = static_cast<int>(prog.variables.size());
        prog.variables.push_back("y_" + model.classes[i].favorite);
    }

    {
        BinaryProgram::Constraint budget;
        for (int i = 0; i < M; ++i) budget.terms.emplace_back(x[i], 1);
        budget.rhs = k;
        budget.label = "budget";
        prog.constraints.push_back(std::move(budget));
    }
    for (int i = 0; i < M; ++i) {
        BinaryProgram::Constraint support;
        support.terms.emplace_back(x[i], 1);
        support.rhs = std::min(1, model.classes[i].count);
        support.label = "support_" + model.classes[i].favorite;
        prog.constraints.push_back(std::move(support));
    }
    // kappa^{-1}: classes whose bundles touch class j
    std::vector<std::vector<int>> preimage(M);
    for (int i = 0; i < M; ++i)
        for (int j : model.classes[i].bundle_classes) preimage[j].push_back(i);
    for (int j = 0; j < M; ++j) {
        BinaryProgram::Constraint up;
        for (int i : preimage[j]) up.terms.emplace_back(x[i], 1);
        up.terms.emplace_back(y[j], -M);
        up.rhs = 0;
        up.label = "link_up_" + model.classes[j].favorite;
        prog.constraints.push_back(std::move(up));

        BinaryProgram::Constraint down;
        down.terms.emplace_back(y[j], 1);
        for (int i : preimage[j]) down.terms.emplace_back(x[i], -1);
        down.rhs = 0;
        down.label = "link_down_" + model.classes[j].favorite;
        prog.constraints.push_back(std::move(down));
    }

    const long long sign = variant.mode == Mode::add ? 1 : -1;
    auto score_term = [&](const CandidateId& c) -> std::optional<std::pair<int, long long>> {
        auto it = model.class_of.find(c);
        if (it == model.class_of.end()) return std::nullopt;
        return std::make_pair(y[it->second],
                              sign * model.classes[it->second].count);
    };
    auto initial = [&](const CandidateId& c) {
        auto it = model.initial_scores.find(c);
        return it == model.initial_scores.end() ? 0ll : it->second;
    };

    if (variant.goal == Goal::constructive) {
        // s(p) +- sum N y >= s(a) +- sum N y for every rival a
        for (const auto& [a, s] : model.initial_scores) {
            if (a == preferred) continue;
            BinaryProgram::Constraint win;
            if (auto tp = score_term(preferred)) win.terms.emplace_back(tp->first, -tp->second);
            if (auto ta = score_term(a)) win.terms.emplace_back(ta->first, ta->second);
            win.rhs = initial(preferred) - s;
            win.label = "win_vs_" + a;
            prog.constraints.push_back(std::move(win));
        }
    } else {
        const long long big_m = model.total_voters + 1;
        std::vector<std::pair<CandidateId, int>> alphas;
        for (const auto& [a, s] : model.initial_scores) {
            if (a == preferred) continue;
            int va = static_cast<int>(prog.variables.size());
            prog.variables.push_back("alpha_" + a);
            alphas.emplace_back(a, va);
        }
        for (const auto& [a, va] : alphas) {
            // alpha_a = 1 implies s(p) +- N y + 1 <= s(a) +- N y
            BinaryProgram::Constraint lose;
            if (auto tp = score_term(preferred)) lose.terms.emplace_back(tp->first, tp->second);
            if (auto ta = score_term(a)) lose.terms.emplace_back(ta->first, -ta->second);
            lose.terms.emplace_back(va, big_m);
            lose.rhs = big_m + initial(a) - initial(preferred) - 1;
            lose.label = "defeat_by_" + a;
            prog.constraints.push_back(std::move(lose));
        }
        BinaryProgram::Constraint some;
        for (const auto& [a, va] : alphas) some.terms.emplace_back(va, -1);
        some.rhs = -1;
        some.label = "some_defeater";
        prog.constraints.push_back(std::move(some));
    }
    return prog;
}

/// Depth-first 0-1 feasibility search with constraint propagation: a
/// variable is forced whenever one of its values makes some constraint's
/// minimum left-hand side exceed the right-hand side. Deterministic in the
/// variable order, trying 0 before 1.
inline std::optional<std::vector<std::uint8_t>> solve_feasibility(
    const BinaryProgram& prog) {
    const int n = static_cast<int>(prog.variables.size());
    std::vector<std::int8_t> value(n, -1);  // -1 unknown

    auto min_lhs = [&](const BinaryProgram::Constraint& c,
                       int except = -1, int except_val = 0) -> long long {
        long long lo = 0;
        for (const auto& [v, coef] : c.terms) {
            int val = v == except ? except_val : value[v];
            if (val == -1)
                lo += std::min<long long>(0, coef);
            else if (val == 1)
                lo += coef;
        }
        return lo;
    };

    // returns false on contradiction, assigns forced variables
    std::function<bool()> propagate = [&]() -> bool {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& c : prog.constraints) {
                if (min_lhs(c) > c.rhs) return false;
                for (const auto& [v, coef] : c.terms) {
                    if (value[v] != -1) continue;
                    if (min_lhs(c, v, 1) > c.rhs) {
                        value[v] = 0;
                        changed = true;
                    } else if (min_lhs(c, v, 0) > c.rhs) {
                        value[v] = 1;
                        changed = true;
                    }
                }
            }
        }
        return true;
    };

    std::function<bool()> search = [&]() -> bool {
        std::vector<std::int8_t> snapshot = value;
        if (!propagate()) {
            value = snapshot;
            return false;
        }
        int branch = -1;
        for (int v = 0; v < n; ++v)
            if (value[v] == -1) {
                branch = v;
                break;
            }
        if (branch == -1) return true;
        for (int val : {0, 1}) {
            std::vector<std::int8_t> before = value;
            value[branch] = static_cast<std::int8_t>(val);
            if (search()) return true;
            value = before;
        }
        value = snapshot;
        return false;
    };

    if (!search()) return std::nullopt;
    std::vector<std::uint8_t> out(n, 0);
    for (int v = 0; v < n; ++v) out[v] = value[v] == 1;
    return out;
}

/// Turns a feasible assignment into a concrete solution: the smallest
/// domain voter of every selected class leads.
inline Solution lift_solution(const ClassModel& model,
                              const std::vector<std::uint8_t>& assignment,
                              const ControlInstance& inst) {
    (void)inst;
    Solution sol;
    for (std::size_t i = 0; i < model.classes.size(); ++i) {
        if (!assignment[i]) continue;
        if (model.classes[i].count == 0)
            throw std::logic_error("selected class has no voters");
        sol.leaders.insert(model.classes[i].members.front());
    }
    return sol;
}

/// Minimum-size solve for anonymous kappa: the smallest k whose program is
/// feasible equals the minimum solution size, because one leader per
/// selected class already realizes the class-level selection.
inline std::optional<Solution> solve_anonymous_min(const ControlInstance& inst) {
    ClassModel model = collapse_to_classes(inst);
    const int M = static_cast<int>(model.classes.size());
    const int k_max = std::min<int>(inst.budget.limit.value_or(M), M);
    for (int k = 0; k <= k_max; ++k) {
        BinaryProgram prog = build_program(model, inst.variant, inst.preferred, k);
        auto assignment = solve_feasibility(prog);
        if (assignment) return lift_solution(model, *assignment, inst);
    }
    return std::nullopt;
}

}  // namespace combictl
