#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fcrawl/rng.hpp"
#include "fcrawl/tagpath.hpp"

namespace fcrawl {

using ActionId = std::uint32_t;
inline constexpr std::int64_t kNoAction = -1;

// Weighted page graph used by the simulator and the optimal-crawl oracle.
// Ordered containers keep traversals deterministic.
struct WebsiteGraph {
    std::string root;
    std::map<std::string, double> weight;             // node -> omega(u)
    std::map<std::string, std::vector<std::string>> adj;

    void add_node(const std::string& url, double w = 1.0) {
        weight.emplace(url, w);
        adj.emplace(url, std::vector<std::string>{});
    }

    void add_edge(const std::string& from, const std::string& to) {
        if (!weight.count(from) || !weight.count(to))
            throw std::logic_error("graph edge endpoints must be nodes");
        adj[from].push_back(to);
    }

    bool has_node(const std::string& url) const { return weight.count(url) != 0; }
    std::size_t node_count() const { return weight.size(); }
};

// Discovery tree of a crawl: every fetched page, each with the page it was
// reached from. Single-visit is enforced here.
class CrawlTree {
public:
    void set_root(const std::string& url, double cost) {
        if (!root_.empty()) throw std::logic_error("tree already has a root");
        root_ = url;
        parent_.emplace(url, std::string{});
        depth_.emplace(url, 0);
        total_cost_ += cost;
    }

    void attach(const std::string& child, const std::string& parent, double cost) {
        if (parent_.count(child)) throw std::logic_error("node already in tree: " + child);
        auto it = parent_.find(parent);
        if (it == parent_.end()) throw std::logic_error("parent not in tree: " + parent);
        parent_.emplace(child, parent);
        depth_.emplace(child, depth_[parent] + 1);
        total_cost_ += cost;
    }

    bool contains(const std::string& url) const { return parent_.count(url) != 0; }
    const std::string& root() const { return root_; }
    const std::string& parent(const std::string& url) const { return parent_.at(url); }
    int depth(const std::string& url) const { return depth_.at(url); }
    std::size_t size() const { return parent_.size(); }
    double total_cost() const { return total_cost_; }

private:
    std::string root_;
    std::unordered_map<std::string, std::string> parent_;
    std::unordered_map<std::string, int> depth_;
    double total_cost_ = 0.0;
};

// A discovered-but-not-yet-crawled link.
struct PendingLink {
    std::string url;
    TagPath path;
    std::string source;  // page the link was found on
    std::string anchor;
    int depth = 0;       // source depth + 1
};

// Pending links grouped by action. A URL lives in at most one group; picks
// within a group are uniform.
class Frontier {
public:
    bool push(ActionId action, PendingLink link) {
        if (urls_.count(link.url)) return false;
        urls_.insert(link.url);
        by_action_[action].push_back(std::move(link));
        ++size_;
        return true;
    }

    bool contains(const std::string& url) const { return urls_.count(url) != 0; }
    bool awake(ActionId action) const {
        auto it = by_action_.find(action);
        return it != by_action_.end() && !it->second.empty();
    }

    PendingLink pop_from(ActionId action, Rng& rng) {
        auto it = by_action_.find(action);
        if (it == by_action_.end() || it->second.empty())
            throw std::logic_error("pop from asleep action");
        auto& vec = it->second;
        std::size_t k = static_cast<std::size_t>(rng.below(vec.size()));
        PendingLink out = std::move(vec[k]);
        vec[k] = std::move(vec.back());
        vec.pop_back();
        urls_.erase(out.url);
        --size_;
        return out;
    }

    // uniform over every pending link, regardless of grouping
    std::pair<ActionId, PendingLink> pop_uniform(Rng& rng) {
        if (size_ == 0) throw std::logic_error("pop from empty frontier");
        std::uint64_t k = rng.below(size_);
        for (auto& [action, vec] : by_action_) {
            if (k < vec.size()) {
                PendingLink out = std::move(vec[k]);
                vec[k] = std::move(vec.back());
                vec.pop_back();
                urls_.erase(out.url);
                --size_;
                return {action, std::move(out)};
            }
            k -= vec.size();
        }
        throw std::logic_error("frontier size out of sync");
    }

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    const std::map<ActionId, std::vector<PendingLink>>& buckets() const { return by_action_; }

private:
    std::map<ActionId, std::vector<PendingLink>> by_action_;
    std::unordered_set<std::string> urls_;
    std::size_t size_ = 0;
};

}  // namespace fcrawl
