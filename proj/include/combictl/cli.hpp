#pragma once

#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "io.hpp"
#include "polysolve.hpp"

// Command-line front end. Exit codes are a scripting contract:
//   solve    0 = yes, 1 = no, 2 = error
//   verify   0 = valid, 1 = invalid, 2 = error
//   others   0 = done, 2 = error

namespace combictl::cli {

namespace detail {

inline std::optional<Solution> run_named_solver(const std::string& name,
                                                const ControlInstance& inst,
                                                const OracleOptions& oracle_opts,
                                                std::string& used) {
    used = name;
    if (name == "oracle")
        return inst.budget.is_unlimited() ? solve_unlimited(inst, oracle_opts)
                                          : solve_exact(inst, oracle_opts);
    if (name == "b2-add") return solve_cons_add_sym_b2(inst);
    if (name == "b2-del") return solve_cons_del_sym_b2(inst);
    if (name == "m2-add") return solve_cons_add_m2_sym_b3(inst);
    if (name == "m2-del") return solve_cons_del_m2_sym_b3(inst);
    if (name == "des-disjoint") return solve_des_disjoint(inst);
    if (name == "des-turing") return solve_destructive(inst, solve_defeater_m2);
    if (name == "ilp") return solve_anonymous_min(inst);
    throw std::runtime_error("unknown solver: " + name);
}

inline std::string profile_line(const ControlInstance& inst) {
    BundlingProfile p = classify_bundling(inst.kappa, inst.controlled_favorites());
    std::ostringstream os;
    if (p.symmetric) os << "symmetric ";
    if (p.disjoint) os << "disjoint ";
    if (p.anonymous) os << "anonymous ";
    if (!p.symmetric && !p.disjoint && !p.anonymous) os << "arbitrary ";
    os << "b=" << p.max_bundle_size;
    return os.str();
}

}  // namespace detail

inline int cmd_solve(const std::string& path, const std::string& solver, bool as_json,
                     int oracle_cap, bool dump_lp, std::ostream& out) {
    ControlInstance inst = load_instance(path);
    OracleOptions oracle_opts;
    oracle_opts.domain_cap = oracle_cap;

    if (dump_lp) {
        // debugging view of the anonymous-kappa constraint system
        ClassModel model = collapse_to_classes(inst);
        int k = std::min<int>(
            inst.budget.limit.value_or(static_cast<int>(model.classes.size())),
            static_cast<int>(model.classes.size()));
        out << build_program(model, inst.variant, inst.preferred, k).to_lp_string();
    }

    auto start = std::chrono::steady_clock::now();
    std::optional<Solution> solution;
    std::string used;
    if (solver == "auto") {
        DispatchOptions opts;
        opts.oracle = oracle_opts;
        DispatchResult result = dispatch(inst, opts);
        solution = result.solution;
        used = result.solver;
    } else {
        solution = detail::run_named_solver(solver, inst, oracle_opts, used);
    }
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();

    if (as_json) {
        nlohmann::ordered_json doc;
        doc["answer"] = solution.has_value() ? "yes" : "no";
        doc["solver"] = used;
        doc["milliseconds"] = ms;
        if (solution) {
            doc["size"] = solution->leaders.size();
            doc["leaders"] = std::vector<VoterId>(solution->leaders.begin(),
                                                  solution->leaders.end());
        }
        out << doc.dump(2) << "\n";
    } else {
        if (solution) {
            out << "yes (size " << solution->leaders.size() << ")\n";
            out << "leaders:";
            for (const VoterId& id : solution->leaders) out << " " << id;
            out << "\n";
        } else {
            out << "no\n";
        }
        out << "solver: " << used << "\n";
        out << "time: " << ms << " ms\n";
    }
    return solution.has_value() ? 0 : 1;
}

inline int cmd_verify(const std::string& path, const std::vector<std::string>& leaders,
                      std::ostream& out) {
    ControlInstance inst = load_instance(path);
    Solution sol;
    sol.leaders.insert(leaders.begin(), leaders.end());
    VerifyResult result = verify_solution(inst, sol);
    out << (result.ok ? "true" : "false") << " (" << to_string(result.reason);
    if (!result.detail.empty()) out << ": " << result.detail;
    out << ")\n";
    return result.ok ? 0 : 1;
}

inline int cmd_classify(const std::string& path, std::ostream& out) {
    ControlInstance inst = load_instance(path);
    out << detail::profile_line(inst) << "\n";
    BundlingProfile p = classify_bundling(inst.kappa, inst.controlled_favorites());
    if (p.symmetric) {
        auto comps = connected_components(make_bundling_graph(inst.kappa));
        std::map<std::string, int> counts;
        for (const auto& c : comps) counts[to_string(c.shape)] += 1;
        out << "components:";
        for (const auto& [shape, count] : counts) out << " " << count << " " << shape;
        out << "\n";
    }
    return 0;
}

struct GenerateArgs {
    std::string source;
    std::string graph_path;
    std::string cnf_path;
    int h = 0;
    std::string variant;
    std::string output;
    // random family
    int m = 2;
    int registered = 6;
    int pool = 6;
    int max_bundle = 3;
    std::string family = "symmetric";
    std::string rvariant = "cons-add";
    int budget = -1;  // -1 picks one from the seed
    std::uint64_t seed = 1;
};

inline int cmd_generate(const GenerateArgs& args, std::ostream& out) {
    ControlInstance inst;
    if (args.source == "random") {
        RandomParams params;
        params.num_candidates = args.m;
        params.num_registered = args.registered;
        params.num_pool = args.pool;
        params.max_bundle = args.max_bundle;
        params.seed = args.seed;
        if (args.family == "arbitrary") params.family = BundleFamily::arbitrary;
        else if (args.family == "symmetric") params.family = BundleFamily::symmetric;
        else if (args.family == "disjoint") params.family = BundleFamily::disjoint;
        else if (args.family == "anonymous") params.family = BundleFamily::anonymous;
        else throw std::runtime_error("unknown bundle family: " + args.family);
        auto variant = parse_variant(args.rvariant);
        if (!variant) throw std::runtime_error("unknown variant: " + args.rvariant);
        params.variant = *variant;
        if (args.budget >= 0) params.budget = args.budget;
        inst = random_instance(params);
    } else {
        static const std::map<std::string, HardnessSource> sources{
            {"is", HardnessSource::independent_set},
            {"ds-disjoint", HardnessSource::ds_disjoint},
            {"ds-w2", HardnessSource::ds_w2},
            {"clique-w1", HardnessSource::clique_w1},
            {"sat223", HardnessSource::sat223},
            {"clique-unlim", HardnessSource::clique_unlim}};
        auto it = sources.find(args.source);
        if (it == sources.end())
            throw std::runtime_error("unknown source: " + args.source);
        HardnessInput input;
        if (!args.graph_path.empty()) {
            std::ifstream in(args.graph_path);
            if (!in) throw std::runtime_error("cannot open " + args.graph_path);
            std::string text((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
            input.graph = parse_edge_list(text);
        }
        if (!args.cnf_path.empty()) {
            std::ifstream in(args.cnf_path);
            if (!in) throw std::runtime_error("cannot open " + args.cnf_path);
            std::string text((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
            input.formula = parse_dimacs_223(text);
        }
        std::optional<Variant> target;
        if (!args.variant.empty()) {
            target = parse_variant(args.variant);
            if (!target) throw std::runtime_error("unknown variant: " + args.variant);
        }
        inst = generate_hardness_instance(it->second, input, args.h, target);
    }
    if (args.output.empty())
        out << serialize_instance(inst);
    else
        save_instance(inst, args.output);
    return 0;
}

inline int cmd_bench(const std::vector<int>& sizes, int k, std::uint64_t seed,
                     std::ostream& out) {
    out << "n,solver,milliseconds\n";
    for (int n : sizes) {
        ControlInstance inst = random_path_instance(n, k, seed);
        auto start = std::chrono::steady_clock::now();
        auto solution = solve_cons_add_m2_sym_b3(inst);
        (void)solution;
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
        out << n << ",m2-add," << ms << "\n";
    }
    return 0;
}

/// Entry point shared by the binary and the tests.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"combinatorial voter control solvers for the Plurality rule"};
    app.require_subcommand(1);

    auto* solve = app.add_subcommand("solve", "decide an instance file");
    std::string solve_path, solver = "auto";
    bool as_json = false;
    bool dump_lp = false;
    int oracle_cap = 22;
    solve->add_option("file", solve_path, "instance file")->required();
    solve->add_option("--solver", solver,
                      "auto|oracle|b2-add|b2-del|m2-add|m2-del|des-turing|"
                      "des-disjoint|ilp");
    solve->add_flag("--json", as_json, "machine-readable output");
    solve->add_flag("--dump-lp", dump_lp,
                    "print the anonymous-kappa constraint system first");
    solve->add_option("--oracle-cap", oracle_cap, "max domain size for the oracle");

    auto* verify = app.add_subcommand("verify", "check a solution");
    std::string verify_path;
    std::vector<std::string> leaders;
    verify->add_option("file", verify_path, "instance file")->required();
    verify->add_option("leaders", leaders, "leader ids");

    auto* classify = app.add_subcommand("classify", "report the bundling profile");
    std::string classify_path;
    classify->add_option("file", classify_path, "instance file")->required();

    auto* generate = app.add_subcommand("generate", "emit an instance file");
    generate->set_help_flag("--help", "print help");  // frees -h for --h below
    GenerateArgs gen;
    generate->add_option("source", gen.source,
                         "is|ds-disjoint|ds-w2|clique-w1|sat223|clique-unlim|random")
        ->required();
    generate->add_option("--graph", gen.graph_path, "edge-list file");
    generate->add_option("--cnf", gen.cnf_path, "DIMACS (2-2)-3SAT file");
    generate->add_option("--h", gen.h, "source parameter h");
    generate->add_option("--variant", gen.variant, "target variant where applicable");
    generate->add_option("-o,--output", gen.output, "output path (default stdout)");
    generate->add_option("--m", gen.m, "random: number of candidates");
    generate->add_option("--registered", gen.registered, "random: registered voters");
    generate->add_option("--pool", gen.pool, "random: unregistered voters");
    generate->add_option("--max-bundle", gen.max_bundle, "random: max bundle size");
    generate->add_option("--family", gen.family,
                         "random: arbitrary|symmetric|disjoint|anonymous");
    generate->add_option("--rvariant", gen.rvariant, "random: variant");
    generate->add_option("--budget", gen.budget, "random: budget (default seeded)");
    generate->add_option("--seed", gen.seed, "random: seed");

    auto* bench = app.add_subcommand("bench", "time the path DP across a size grid");
    std::vector<int> sizes{50, 100, 150, 200};
    int bench_k = 20;
    std::uint64_t bench_seed = 1;
    bench->add_option("--sizes", sizes, "path lengths");
    bench->add_option("--k", bench_k, "budget");
    bench->add_option("--seed", bench_seed, "seed");

    std::vector<const char*> argv;
    argv.push_back("combictl");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream captured;
        int code = app.exit(e, out, captured);
        err << captured.str();
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed())
            return cmd_solve(solve_path, solver, as_json, oracle_cap, dump_lp, out);
        if (verify->parsed()) return cmd_verify(verify_path, leaders, out);
        if (classify->parsed()) return cmd_classify(classify_path, out);
        if (generate->parsed()) return cmd_generate(gen, out);
        if (bench->parsed()) return cmd_bench(sizes, bench_k, bench_seed, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace combictl::cli
