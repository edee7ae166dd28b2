#pragma once

// Graph input: JSON documents {"k": 5, "infinite_edges": [[1,3], ...]} and
// the named presets free(k), cycle(k), complete2(k).

#include "coxeter.hpp"
#include "errors.hpp"

#include <json.hpp>

#include <fstream>
#include <regex>
#include <string>

namespace racg {

inline CoxeterGraph preset_graph(const std::string& name) {
    static const std::regex re(R"(\s*(free|cycle|complete2)\s*\(\s*(\d+)\s*\)\s*)");
    std::smatch m;
    if (!std::regex_match(name, m, re)) throw ConfigError("unknown preset '" + name + "'");
    const int k = std::stoi(m[2].str());
    if (k < 1 || k > 64) throw ConfigError("preset size out of range in '" + name + "'");
    const std::string kind = m[1].str();
    CoxeterGraph g(k);
    if (kind == "free") {
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) g.set_free(i, j);
    } else if (kind == "cycle") {
        if (k < 3) throw ConfigError("cycle(k) needs k >= 3");
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                const bool consecutive = (j == i + 1) || (i == 0 && j == k - 1);
                if (!consecutive) g.set_free(i, j);
            }
    }
    return g;
}

inline nlohmann::json graph_to_json(const CoxeterGraph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [a, b] : g.infinite_edges()) edges.push_back({a, b});
    return {{"k", g.k()}, {"infinite_edges", edges}};
}

inline CoxeterGraph graph_from_json(const nlohmann::json& j) {
    try {
        const int k = j.at("k").get<int>();
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : j.at("infinite_edges")) {
            if (!e.is_array() || e.size() != 2) throw ConfigError("each infinite edge must be a pair");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        return CoxeterGraph::from_infinite_edges(k, edges);
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigError(std::string("malformed graph JSON: ") + ex.what());
    }
}

inline CoxeterGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open graph file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigError("cannot parse '" + path + "': " + ex.what());
    }
    return graph_from_json(j);
}

}  // namespace racg
