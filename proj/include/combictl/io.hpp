#pragma once

#include <fstream>

#include <json.hpp>

#include "reductions.hpp"

// Instance files and the text inputs of the generators.
//
// An instance is a single JSON document:
//   candidates    array of strings
//   registered    array of {id, favorite}
//   unregistered  array of {id, favorite} (empty for delete variants)
//   bundles       object: leader id -> array of member ids
//   variant       "cons-add" | "cons-del" | "des-add" | "des-del"
//   preferred     string
//   budget        non-negative integer, or null for unlimited
//
// Canonical serialization: UTF-8, keys in the order above, arrays sorted
// by id. A bundle must contain its own leader; a voter missing from
// "bundles" can never be selected. Serialization round-trips byte for byte.

namespace combictl {

namespace detail {

inline void require(bool cond, const std::string& message) {
    if (!cond) throw std::runtime_error("instance format: " + message);
}

inline std::vector<Voter> parse_voter_array(const nlohmann::json& arr,
                                            const std::string& what) {
    require(arr.is_array(), what + " must be an array");
    std::vector<Voter> out;
    for (const auto& item : arr) {
        require(item.is_object() && item.contains("id") && item.contains("favorite"),
                what + " entries need id and favorite");
        require(item["id"].is_string() && item["favorite"].is_string(),
                what + " ids and favorites must be strings");
        out.push_back({item["id"].get<std::string>(),
                       item["favorite"].get<std::string>()});
    }
    return out;
}

}  // namespace detail

inline ControlInstance parse_instance(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("instance format: invalid JSON: ") + e.what());
    }
    detail::require(doc.is_object(), "top level must be an object");
    for (const char* key :
         {"candidates", "registered", "unregistered", "bundles", "variant",
          "preferred", "budget"})
        detail::require(doc.contains(key), std::string("missing field ") + key);

    ControlInstance inst;
    detail::require(doc["candidates"].is_array() && !doc["candidates"].empty(),
                    "candidates must be a non-empty array");
    std::vector<CandidateId> candidates;
    for (const auto& c : doc["candidates"]) {
        detail::require(c.is_string(), "candidates must be strings");
        candidates.push_back(c.get<std::string>());
    }
    std::vector<Voter> registered = detail::parse_voter_array(doc["registered"], "registered");
    inst.pool = detail::parse_voter_array(doc["unregistered"], "unregistered");

    detail::require(doc["variant"].is_string(), "variant must be a string");
    auto variant = parse_variant(doc["variant"].get<std::string>());
    detail::require(variant.has_value(),
                    "variant must be one of cons-add, cons-del, des-add, des-del");
    inst.variant = *variant;

    detail::require(doc["preferred"].is_string(), "preferred must be a string");
    inst.preferred = doc["preferred"].get<std::string>();

    if (doc["budget"].is_null()) {
        inst.budget = Budget::unlimited();
    } else {
        detail::require(doc["budget"].is_number_integer() && doc["budget"].get<int>() >= 0,
                        "budget must be a non-negative integer or null");
        inst.budget = Budget::bounded(doc["budget"].get<int>());
    }

    try {
        inst.election = Election(candidates, registered);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("instance format: ") + e.what());
    }

    detail::require(doc["bundles"].is_object(), "bundles must be an object");
    std::map<VoterId, std::set<VoterId>> bundles;
    for (const auto& [leader, members] : doc["bundles"].items()) {
        detail::require(members.is_array(), "each bundle must be an array");
        std::set<VoterId> bundle;
        for (const auto& m : members) {
            detail::require(m.is_string(), "bundle members must be strings");
            bundle.insert(m.get<std::string>());
        }
        detail::require(bundle.count(leader) != 0,
                        "bundle of " + leader + " does not contain its leader");
        bundles[leader] = std::move(bundle);
    }
    try {
        inst.kappa = BundlingFunction{std::move(bundles)};
        inst.validate();
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("instance format: ") + e.what());
    }
    return inst;
}

inline std::string serialize_instance(const ControlInstance& inst) {
    nlohmann::ordered_json doc;
    doc["candidates"] = inst.election.candidates();

    auto voter_array = [](const std::vector<Voter>& voters) {
        std::vector<Voter> sorted = voters;
        std::sort(sorted.begin(), sorted.end());
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const Voter& v : sorted) {
            nlohmann::ordered_json item;
            item["id"] = v.id;
            item["favorite"] = v.favorite;
            arr.push_back(std::move(item));
        }
        return arr;
    };
    doc["registered"] = voter_array(inst.election.voters());
    doc["unregistered"] = voter_array(inst.pool);

    nlohmann::ordered_json bundles = nlohmann::ordered_json::object();
    for (const auto& [leader, bundle] : inst.kappa.bundles())
        bundles[leader] = std::vector<VoterId>(bundle.begin(), bundle.end());
    doc["bundles"] = std::move(bundles);

    doc["variant"] = to_string(inst.variant);
    doc["preferred"] = inst.preferred;
    if (inst.budget.is_unlimited())
        doc["budget"] = nullptr;
    else
        doc["budget"] = *inst.budget.limit;
    return doc.dump(2) + "\n";
}

inline ControlInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_instance(text);
}

inline void save_instance(const ControlInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << serialize_instance(inst);
}

/// Edge-list text: one "u v" pair per line, 1-based integer labels, '#'
/// starts a comment. The vertex count is the largest label seen.
inline SimpleGraph parse_edge_list(const std::string& text) {
    SimpleGraph g;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long u, v;
        if (!(ls >> u)) continue;
        if (!(ls >> v)) throw std::runtime_error("edge list: dangling vertex in: " + line);
        if (u < 1 || v < 1) throw std::runtime_error("edge list: labels start at 1");
        if (u == v) throw std::runtime_error("edge list: loops are not allowed");
        g.num_vertices = std::max<int>(g.num_vertices,
                                       static_cast<int>(std::max(u, v)));
        int a = static_cast<int>(std::min(u, v)) - 1;
        int b = static_cast<int>(std::max(u, v)) - 1;
        if (!g.has_edge(a, b)) g.edges.emplace_back(a, b);
    }
    if (g.num_vertices == 0) throw std::runtime_error("edge list: no edges given");
    return g;
}

/// DIMACS-style CNF restricted to the (2-2)-3SAT shape: optional "p cnf n m"
/// header, 'c' comment lines, clauses as 0-terminated literal runs.
inline Cnf223 parse_dimacs_223(const std::string& text) {
    Cnf223 cnf;
    std::istringstream in(text);
    std::string token;
    std::vector<int> current;
    int declared_vars = 0;
    while (in >> token) {
        if (token == "c") {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        if (token == "p") {
            std::string fmt;
            long long nv = 0, nc = 0;
            if (!(in >> fmt >> nv >> nc) || fmt != "cnf")
                throw std::runtime_error("cnf: malformed problem line");
            declared_vars = static_cast<int>(nv);
            continue;
        }
        int lit;
        try {
            lit = std::stoi(token);
        } catch (...) {
            throw std::runtime_error("cnf: unexpected token " + token);
        }
        if (lit == 0) {
            if (!current.empty()) cnf.clauses.push_back(current);
            current.clear();
        } else {
            current.push_back(lit);
            cnf.num_vars = std::max(cnf.num_vars, std::abs(lit));
        }
    }
    if (!current.empty()) cnf.clauses.push_back(current);
    cnf.num_vars = std::max(cnf.num_vars, declared_vars);
    cnf.validate();
    return cnf;
}

}  // namespace combictl
