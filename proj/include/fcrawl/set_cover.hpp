#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fcrawl/graph.hpp"

namespace fcrawl {

// Set-cover instance: universe {0..m-1}, candidate subsets, pick at most
// `budget` subsets to cover everything.
struct SetCoverInstance {
    std::size_t m = 0;
    std::vector<std::vector<std::size_t>> sets;
    std::size_t budget = 0;
};

// Instance -> crawl graph: a root page linking to one page per subset, each
// subset page linking to the element pages it covers. Element pages are the
// targets; all weights are 1. Crawling all m targets within m + budget + 1
// fetches is then exactly a cover of size <= budget.
struct ReducedCrawl {
    WebsiteGraph graph;
    std::vector<std::string> targets;      // element pages, index order
    std::uint64_t fetch_budget = 0;        // m + budget + 1
};

inline ReducedCrawl build_reduction(const SetCoverInstance& inst) {
    if (inst.m == 0) throw std::invalid_argument("universe must be non-empty");
    std::vector<bool> covered(inst.m, false);
    for (const auto& s : inst.sets) {
        if (s.empty()) throw std::invalid_argument("subsets must be non-empty");
        for (std::size_t e : s) {
            if (e >= inst.m) throw std::invalid_argument("set element outside universe");
            covered[e] = true;
        }
    }
    if (!std::all_of(covered.begin(), covered.end(), [](bool b) { return b; }))
        throw std::invalid_argument("subsets must cover the universe");

    ReducedCrawl out;
    const std::string base = "https://sc.test/";
    out.graph.add_node(base + "root");
    out.graph.root = base + "root";
    for (std::size_t j = 0; j < inst.m; ++j) {
        std::string u = base + "u" + std::to_string(j);
        out.graph.add_node(u);
        out.targets.push_back(u);
    }
    for (std::size_t i = 0; i < inst.sets.size(); ++i) {
        std::string s = base + "s" + std::to_string(i);
        out.graph.add_node(s);
        out.graph.add_edge(out.graph.root, s);
        for (std::size_t e : inst.sets[i]) out.graph.add_edge(s, base + "u" + std::to_string(e));
    }
    out.fetch_budget = inst.m + inst.budget + 1;
    return out;
}

struct OptimalCrawl {
    double cost = 0.0;                 // total weight of fetched pages
    std::vector<std::string> order;    // one feasible fetch sequence
};

namespace scdetail {

// connectivity of `chosen` (which must contain the root) via graph edges
inline bool connected_under(const WebsiteGraph& g, const std::set<std::string>& chosen) {
    std::set<std::string> seen{g.root};
    std::queue<std::string> q;
    q.push(g.root);
    while (!q.empty()) {
        std::string u = std::move(q.front());
        q.pop();
        for (const auto& v : g.adj.at(u)) {
            if (!chosen.count(v) || seen.count(v)) continue;
            seen.insert(v);
            q.push(v);
        }
    }
    return seen.size() == chosen.size();
}

inline std::vector<std::string> bfs_order(const WebsiteGraph& g,
                                          const std::set<std::string>& chosen) {
    std::vector<std::string> order{g.root};
    std::set<std::string> seen{g.root};
    std::queue<std::string> q;
    q.push(g.root);
    while (!q.empty()) {
        std::string u = std::move(q.front());
        q.pop();
        for (const auto& v : g.adj.at(u)) {
            if (!chosen.count(v) || seen.count(v)) continue;
            seen.insert(v);
            order.push_back(v);
            q.push(v);
        }
    }
    return order;
}

}  // namespace scdetail

// Minimum-weight connected subgraph that contains the root and every target.
// Brute force over subsets of the optional (non-root, non-target) nodes, so
// only meant for graphs of oracle size.
inline OptimalCrawl optimal_crawl(const WebsiteGraph& g, const std::vector<std::string>& targets) {
    if (g.root.empty() || !g.has_node(g.root)) throw std::invalid_argument("graph needs a root");
    std::set<std::string> required{g.root};
    for (const auto& t : targets) {
        if (!g.has_node(t)) throw std::invalid_argument("target not in graph: " + t);
        required.insert(t);
    }

    std::vector<std::string> optional_nodes;
    for (const auto& [u, w] : g.weight)
        if (!required.count(u)) optional_nodes.push_back(u);
    if (optional_nodes.size() > 20)
        throw std::invalid_argument("optimal_crawl limited to 20 optional nodes");

    std::optional<OptimalCrawl> best;
    std::uint32_t limit = 1u << optional_nodes.size();
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        std::set<std::string> chosen = required;
        double cost = 0.0;
        for (const auto& u : required) cost += g.weight.at(u);
        for (std::size_t i = 0; i < optional_nodes.size(); ++i) {
            if (mask & (1u << i)) {
                chosen.insert(optional_nodes[i]);
                cost += g.weight.at(optional_nodes[i]);
            }
        }
        if (best && cost >= best->cost) continue;
        if (!scdetail::connected_under(g, chosen)) continue;
        best = OptimalCrawl{cost, scdetail::bfs_order(g, chosen)};
    }
    if (!best) throw std::runtime_error("some target is unreachable from the root");
    return *best;
}

// reference solver for the source problem, same brute-force style
inline std::optional<std::size_t> brute_force_min_cover(const SetCoverInstance& inst) {
    if (inst.sets.size() > 20) throw std::invalid_argument("min-cover limited to 20 sets");
    std::optional<std::size_t> best;
    std::uint32_t limit = 1u << inst.sets.size();
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        std::size_t picked = static_cast<std::size_t>(__builtin_popcount(mask));
        if (best && picked >= *best) continue;
        std::vector<bool> covered(inst.m, false);
        for (std::size_t i = 0; i < inst.sets.size(); ++i)
            if (mask & (1u << i))
                for (std::size_t e : inst.sets[i]) covered[e] = true;
        if (std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })) best = picked;
    }
    return best;
}

}  // namespace fcrawl
