#include <doctest.h>

#include <combictl/polysolve.hpp>

#include "support.hpp"

using namespace combictl;

namespace {

RandomParams m2_params(std::uint64_t seed, Variant variant, int n) {
    RandomParams params;
    params.num_candidates = 2;
    params.num_registered = variant.mode == Mode::add ? 3 + static_cast<int>(seed % 4) : n;
    params.num_pool = variant.mode == Mode::add ? n : 0;
    params.max_bundle = 3;
    params.family = BundleFamily::symmetric;
    params.variant = variant;
    params.seed = seed;
    return params;
}

void check_against_oracle(const ControlInstance& inst,
                          const std::optional<Solution>& got) {
    auto expected = solve_exact(inst);
    REQUIRE(expected.has_value() == got.has_value());
    if (expected && got) {
        CHECK(expected->leaders.size() == got->leaders.size());
        CHECK(verify_solution(inst, *got).ok);
    }
}

}  // namespace

TEST_CASE("m2 addition handles the trivial cases") {
    ControlInstance inst;
    inst.variant = kConsAdd;
    inst.election = Election({"p", "g"}, {{"v1", "p"}});
    inst.pool = {{"w1", "g"}};
    inst.kappa = BundlingFunction{{{"w1", {"w1"}}}};
    inst.preferred = "p";
    inst.budget = Budget::bounded(1);
    inst.validate();
    auto sol = solve_cons_add_m2_sym_b3(inst);
    REQUIRE(sol.has_value());
    CHECK(sol->leaders.empty());  // already co-winning

    // deficit larger than anything the pool can contribute
    ControlInstance hopeless;
    hopeless.variant = kConsAdd;
    hopeless.election = Election({"p", "g"}, {{"v1", "g"}, {"v2", "g"}, {"v3", "g"}});
    hopeless.pool = {{"w1", "p"}};
    hopeless.kappa = BundlingFunction{{{"w1", {"w1"}}}};
    hopeless.preferred = "p";
    hopeless.budget = Budget::bounded(1);
    hopeless.validate();
    CHECK_FALSE(solve_cons_add_m2_sym_b3(hopeless).has_value());
}

TEST_CASE("m2 addition matches the oracle on random path/cycle pools") {
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        ControlInstance inst =
            random_instance(m2_params(seed, kConsAdd, 4 + static_cast<int>(seed % 7)));
        check_against_oracle(inst, solve_cons_add_m2_sym_b3(inst));
    }
}

TEST_CASE("m2 deletion complement mapping and oracle agreement") {
    ControlInstance inst;
    inst.variant = kConsDel;
    inst.election = Election({"p", "g"}, {{"v1", "p"}, {"v2", "g"}, {"v3", "g"}});
    inst.kappa = BundlingFunction{
        {{"v1", {"v1"}}, {"v2", {"v2"}}, {"v3", {"v3"}}}};
    inst.preferred = "p";
    inst.budget = Budget::bounded(3);
    inst.validate();

    ControlInstance added = complement_del_to_add(inst);
    // same voters with swapped favorites: one g twin, two p twins
    std::multiset<CandidateId> pool_favs;
    for (const Voter& w : added.pool) pool_favs.insert(w.favorite);
    CHECK(pool_favs == std::multiset<CandidateId>{"g", "p", "p"});
    for (const Voter& w : added.pool) {
        const Voter* original = inst.election.find_voter(complement_original_id(w.id));
        REQUIRE(original != nullptr);
        CHECK(original->favorite != w.favorite);
    }

    auto sol = solve_cons_del_m2_sym_b3(inst);
    REQUIRE(sol.has_value());
    CHECK(sol->leaders.size() == 1);
    CHECK(verify_solution(inst, *sol).ok);

    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        ControlInstance rnd =
            random_instance(m2_params(seed, kConsDel, 4 + static_cast<int>(seed % 5)));
        check_against_oracle(rnd, solve_cons_del_m2_sym_b3(rnd));
    }
}

TEST_CASE("complement reduction preserves the score identity") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        ControlInstance inst = random_instance(m2_params(seed, kConsDel, 6));
        ControlInstance added = complement_del_to_add(inst);
        std::mt19937_64 rng(seed);
        std::set<VoterId> lead, twin;
        for (const auto& [leader, bundle] : inst.kappa.bundles())
            if (rng() % 2) {
                lead.insert(leader);
                twin.insert(complement_id(leader));
            }
        auto e1 = plurality_scores(inst.election, bundle_union(inst.kappa, lead));
        std::map<CandidateId, int> e2{{"c1", 0}, {"c2", 0}};
        auto favs = added.controlled_favorites();
        for (const VoterId& id : bundle_union(added.kappa, twin)) e2[favs.at(id)] += 1;
        CHECK(e1.at("c1") == e2.at("c2"));  // s_p(kappa(V')) = s_g(kappa(W'))
        CHECK(e1.at("c2") == e2.at("c1"));
    }
}

TEST_CASE("b2 addition examples") {
    // deficit of two against one rival, one {p,p} bundle available
    ControlInstance inst;
    inst.variant = kConsAdd;
    inst.election = Election({"p", "g"}, {{"v1", "g"}, {"v2", "g"}});
    inst.pool = {{"w1", "p"}, {"w2", "p"}, {"w3", "g"}};
    inst.kappa = BundlingFunction{
        {{"w1", {"w1", "w2"}}, {"w2", {"w1", "w2"}}, {"w3", {"w3"}}}};
    inst.preferred = "p";
    inst.budget = Budget::bounded(2);
    inst.validate();
    auto sol = solve_cons_add_sym_b2(inst);
    REQUIRE(sol.has_value());
    CHECK(sol->leaders.size() == 1);

    inst.election = Election({"p", "g"}, {{"v1", "p"}});
    inst.validate();
    sol = solve_cons_add_sym_b2(inst);
    REQUIRE(sol.has_value());
    CHECK(sol->leaders.empty());

    // only rival bundles on offer
    ControlInstance stuck;
    stuck.variant = kConsAdd;
    stuck.election = Election({"p", "g"}, {{"v1", "g"}});
    stuck.pool = {{"w1", "g"}, {"w2", "g"}};
    stuck.kappa = BundlingFunction{{{"w1", {"w1", "w2"}}, {"w2", {"w1", "w2"}}}};
    stuck.preferred = "p";
    stuck.budget = Budget::bounded(2);
    stuck.validate();
    CHECK_FALSE(solve_cons_add_sym_b2(stuck).has_value());
}

TEST_CASE("b2 deletion examples") {
    // p 1, g 3 with one {g,g} pair and one singleton g
    ControlInstance inst;
    inst.variant = kConsDel;
    inst.election =
        Election({"p", "g"}, {{"v1", "p"}, {"v2", "g"}, {"v3", "g"}, {"v4", "g"}});
    inst.kappa = BundlingFunction{{{"v1", {"v1"}},
                                   {"v2", {"v2", "v3"}},
                                   {"v3", {"v2", "v3"}},
                                   {"v4", {"v4"}}}};
    inst.preferred = "p";
    inst.budget = Budget::bounded(2);
    inst.validate();
    auto sol = solve_cons_del_sym_b2(inst);
    REQUIRE(sol.has_value());
    CHECK(sol->leaders.size() == 1);
    CHECK(sol->leaders == std::set<VoterId>{"v2"});
    auto scores = plurality_scores(apply_solution(inst, *sol));
    CHECK(scores.at("p") == 1);
    CHECK(scores.at("g") == 1);

    // scoreless p: everything must go
    ControlInstance wipe;
    wipe.variant = kConsDel;
    wipe.election = Election({"p", "g", "h"}, {{"v1", "g"}, {"v2", "g"}, {"v3", "h"}});
    wipe.kappa = BundlingFunction{
        {{"v1", {"v1", "v2"}}, {"v2", {"v1", "v2"}}, {"v3", {"v3"}}}};
    wipe.preferred = "p";
    wipe.budget = Budget::bounded(2);
    wipe.validate();
    sol = solve_cons_del_sym_b2(wipe);
    REQUIRE(sol.has_value());
    CHECK(sol->leaders.size() == 2);  // one pair bundle + one singleton

    // already winning
    ControlInstance fine;
    fine.variant = kConsDel;
    fine.election = Election({"p", "g"}, {{"v1", "p"}});
    fine.kappa = BundlingFunction{{{"v1", {"v1"}}}};
    fine.preferred = "p";
    fine.budget = Budget::bounded(0);
    fine.validate();
    sol = solve_cons_del_sym_b2(fine);
    REQUIRE(sol.has_value());
    CHECK(sol->leaders.empty());
}

TEST_CASE("deficit vector") {
    Election e({"p", "g", "h"}, {{"v1", "p"}, {"v2", "g"}, {"v3", "g"}, {"v4", "h"}});
    DeficitVector d = DeficitVector::of(e, "p");
    CHECK(d.deficit.at("g") == 1);
    CHECK(d.deficit.at("h") == 0);
    CHECK(d.deficit.count("p") == 0);
}

TEST_CASE("b2 solvers match the oracle") {
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        RandomParams params;
        params.num_candidates = 2 + static_cast<int>(seed % 3);
        params.max_bundle = 2;
        params.family = BundleFamily::symmetric;
        params.variant = seed % 2 ? kConsAdd : kConsDel;
        params.num_registered = params.variant.mode == Mode::add
                                    ? 3 + static_cast<int>(seed % 4)
                                    : 5 + static_cast<int>(seed % 6);
        params.num_pool = params.variant.mode == Mode::add
                              ? 5 + static_cast<int>(seed % 6)
                              : 0;
        params.seed = seed;
        ControlInstance inst = random_instance(params);
        auto got = inst.variant == kConsAdd ? solve_cons_add_sym_b2(inst)
                                            : solve_cons_del_sym_b2(inst);
        check_against_oracle(inst, got);
    }
}

TEST_CASE("destructive driver examples") {
    // p strictly behind already
    ControlInstance inst;
    inst.variant = kDesAdd;
    inst.election = Election({"p", "g"}, {{"v1", "g"}, {"v2", "g"}, {"v3", "p"}});
    inst.pool = {{"w1", "g"}};
    inst.kappa = BundlingFunction{{{"w1", {"w1"}}}};
    inst.preferred = "p";
    inst.budget = Budget::bounded(1);
    inst.validate();
    auto sol = solve_destructive(inst, solve_defeater_m2);
    REQUIRE(sol.has_value());
    CHECK(sol->leaders.empty());
}

TEST_CASE("third-candidate leaders still count for the defeater") {
    // the only useful bundle is led by a c3-voter whose bundle holds the
    // defeater's voters; restricting to {p, g}-voters would lose it
    ControlInstance inst;
    inst.variant = kDesAdd;
    inst.election = Election({"p", "g", "c3"}, {{"v1", "p"}});
    inst.pool = {{"w", "c3"}, {"y1", "g"}, {"y2", "g"}};
    inst.kappa = BundlingFunction{{{"w", {"w", "y1", "y2"}},
                                   {"y1", {"y1", "w"}},
                                   {"y2", {"y2", "w"}}}};
    inst.preferred = "p";
    inst.budget = Budget::bounded(1);
    inst.validate();
    auto sol = solve_destructive(inst, solve_defeater_m2);
    REQUIRE(sol.has_value());
    CHECK(sol->leaders == std::set<VoterId>{"w"});
    CHECK(verify_solution(inst, *sol).ok);
    auto truth = solve_exact(inst);
    REQUIRE(truth.has_value());
    CHECK(truth->leaders.size() == 1);
}

TEST_CASE("sub-instances carry exactly one extra p-voter") {
    RandomParams params;
    params.num_candidates = 3;
    params.num_registered = 7;
    params.family = BundleFamily::symmetric;
    params.variant = kDesDel;
    params.seed = 5;
    ControlInstance inst = random_instance(params);
    auto subs = split_destructive_to_constructive(inst);
    CHECK(subs.size() == 2);  // m - 1 rivals
    for (const ControlInstance& sub : subs) {
        int p_total = 0, restricted = 0;
        for (const Voter& v : inst.election.voters())
            if (v.favorite == inst.preferred || v.favorite == sub.preferred) {
                ++restricted;
                p_total += v.favorite == inst.preferred;
            }
        CHECK(sub.election.voters().size() == static_cast<std::size_t>(restricted) + 1);
        int p_sub = 0;
        for (const Voter& v : sub.election.voters())
            p_sub += v.favorite == inst.preferred;
        CHECK(p_sub == p_total + 1);
        // the extra voter is pinned: it is not in the bundling domain
        CHECK(sub.kappa.size() == static_cast<std::size_t>(restricted));
    }
}

TEST_CASE("destructive driver matches the oracle") {
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        RandomParams params;
        params.num_candidates = 2 + static_cast<int>(seed % 3);
        params.max_bundle = 3;
        params.family = BundleFamily::symmetric;
        params.variant = seed % 2 ? kDesAdd : kDesDel;
        params.num_registered = 4 + static_cast<int>(seed % 4);
        params.num_pool = params.variant.mode == Mode::add ? 5 : 0;
        params.seed = seed + 7000;
        ControlInstance inst = random_instance(params);
        check_against_oracle(inst, solve_destructive(inst, solve_defeater_m2));
    }
}

TEST_CASE("disjoint destructive greedy") {
    // one bundle with two c-voters closes a deficit of one
    ControlInstance inst;
    inst.variant = kDesAdd;
    inst.election = Election({"p", "c"}, {{"v1", "p"}, {"v2", "c"}});
    inst.pool = {{"w1", "c"}, {"w2", "c"}};
    inst.kappa = BundlingFunction{{{"w1", {"w1", "w2"}}, {"w2", {"w1", "w2"}}}};
    inst.preferred = "p";
    inst.budget = Budget::bounded(1);
    inst.validate();
    auto sol = solve_des_disjoint(inst);
    REQUIRE(sol.has_value());
    CHECK(sol->leaders.size() == 1);

    // no bundle moves any difference in a rival's favor
    ControlInstance stuck;
    stuck.variant = kDesAdd;
    stuck.election = Election({"p", "c"}, {{"v1", "p"}});
    stuck.pool = {{"w1", "p"}, {"w2", "c"}};
    stuck.kappa = BundlingFunction{{{"w1", {"w1", "w2"}}, {"w2", {"w1", "w2"}}}};
    stuck.preferred = "p";
    stuck.budget = Budget::bounded(2);
    stuck.validate();
    CHECK_FALSE(solve_des_disjoint(stuck).has_value());

    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        RandomParams params;
        params.num_candidates = 2 + static_cast<int>(seed % 3);
        params.max_bundle = 3;
        params.family = BundleFamily::disjoint;
        params.variant = seed % 2 ? kDesAdd : kDesDel;
        params.num_registered = 4 + static_cast<int>(seed % 4);
        params.num_pool = params.variant.mode == Mode::add ? 6 : 0;
        params.seed = seed + 9000;
        ControlInstance inst2 = random_instance(params);
        check_against_oracle(inst2, solve_des_disjoint(inst2));
    }
}

TEST_CASE("m2 addition on long paths and cycles (split recurrence territory)") {
    // pools of 14..18 voters force interval splits well past the
    // exhaustive base threshold; small budgets keep the oracle cheap
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        RandomParams params = m2_params(seed, kConsAdd, 14 + static_cast<int>(seed % 5));
        params.budget = 1 + static_cast<int>(seed % 4);
        params.seed = seed + 60000;
        ControlInstance inst = random_instance(params);
        check_against_oracle(inst, solve_cons_add_m2_sym_b3(inst));
    }
    // one guaranteed single long path and one long cycle
    ControlInstance path = random_path_instance(17, 4, 3);
    check_against_oracle(path, solve_cons_add_m2_sym_b3(path));

    std::vector<Voter> ring;
    std::map<VoterId, std::set<VoterId>> bundles;
    std::mt19937_64 rng(11);
    for (int i = 0; i < 15; ++i)
        ring.push_back({"w" + std::string(1, char('a' + i)), rng() % 2 ? "p" : "g"});
    for (int i = 0; i < 15; ++i)
        bundles[ring[i].id] = {ring[i].id, ring[(i + 1) % 15].id,
                               ring[(i + 14) % 15].id};
    ControlInstance cyc;
    cyc.variant = kConsAdd;
    cyc.election = Election({"p", "g"}, {{"r1", "g"}, {"r2", "g"}, {"r3", "g"}});
    cyc.pool = ring;
    cyc.kappa = BundlingFunction{std::move(bundles)};
    cyc.preferred = "p";
    cyc.budget = Budget::bounded(4);
    cyc.validate();
    check_against_oracle(cyc, solve_cons_add_m2_sym_b3(cyc));
}

TEST_CASE("destructive driver on larger multi-candidate electorates") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        RandomParams params;
        params.num_candidates = 3 + static_cast<int>(seed % 2);
        params.max_bundle = 3;
        params.family = BundleFamily::symmetric;
        params.variant = seed % 2 ? kDesAdd : kDesDel;
        params.num_registered = params.variant.mode == Mode::add ? 5 : 14;
        params.num_pool = params.variant.mode == Mode::add ? 14 : 0;
        params.budget = 1 + static_cast<int>(seed % 4);
        params.seed = seed + 70000;
        ControlInstance inst = random_instance(params);
        check_against_oracle(inst, solve_destructive(inst, solve_defeater_m2));
    }
}

TEST_CASE("dispatch routes to the most specific solver") {
    RandomParams params;
    params.num_candidates = 3;
    params.max_bundle = 2;
    params.family = BundleFamily::symmetric;
    params.variant = kConsAdd;
    params.num_registered = 3;
    params.num_pool = 5;
    params.seed = 11;
    CHECK(dispatch(random_instance(params)).solver == "b2-add");

    params.num_candidates = 2;
    params.max_bundle = 3;
    params.seed = 12;
    // a seed whose pool actually needs bundles of size three
    for (std::uint64_t seed = 12; seed < 40; ++seed) {
        params.seed = seed;
        ControlInstance inst = random_instance(params);
        if (classify_bundling(inst.kappa, inst.controlled_favorites()).max_bundle_size ==
            3) {
            CHECK(dispatch(inst).solver == "m2-add");
            break;
        }
    }

    params.num_candidates = 3;
    params.family = BundleFamily::arbitrary;
    params.max_bundle = 4;
    for (std::uint64_t seed = 1; seed < 60; ++seed) {
        params.seed = seed;
        ControlInstance inst = random_instance(params);
        auto profile = classify_bundling(inst.kappa, inst.controlled_favorites());
        if (!profile.symmetric && !profile.anonymous) {
            CHECK(dispatch(inst).solver == "oracle");
            break;
        }
    }
}

TEST_CASE("dispatch answers agree with the oracle across families") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        RandomParams params;
        params.num_candidates = 2 + static_cast<int>(seed % 3);
        params.max_bundle = 2 + static_cast<int>(seed % 3);
        params.family = static_cast<BundleFamily>(seed % 4);
        params.variant = seed % 4 == 0   ? kConsAdd
                         : seed % 4 == 1 ? kConsDel
                         : seed % 4 == 2 ? kDesAdd
                                         : kDesDel;
        params.num_registered = 4 + static_cast<int>(seed % 3);
        params.num_pool = params.variant.mode == Mode::add ? 5 : 0;
        params.seed = seed + 40000;
        ControlInstance inst = random_instance(params);
        DispatchResult result = dispatch(inst);
        check_against_oracle(inst, result.solution);
    }
}
