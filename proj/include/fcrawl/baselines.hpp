#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fcrawl/engine.hpp"
#include "fcrawl/url_classifier.hpp"

namespace fcrawl {

// FIFO over discovery order. Fully deterministic given the site.
class BfsPolicy : public FrontierPolicy {
public:
    const char* name() const override { return "bfs"; }
    void on_seed(const std::string& url) override { q_.push_back({url, ""}); }
    void on_link(PendingLink link) override {
        q_.push_back({std::move(link.url), std::move(link.source)});
    }
    std::optional<Pulled> next(Rng&, std::uint64_t) override {
        if (q_.empty()) return std::nullopt;
        auto [url, parent] = std::move(q_.front());
        q_.pop_front();
        return Pulled{std::move(url), std::move(parent), kNoAction};
    }
    bool has_pending() const override { return !q_.empty(); }

private:
    std::deque<std::pair<std::string, std::string>> q_;
};

// LIFO: always the most recently discovered link.
class DfsPolicy : public FrontierPolicy {
public:
    const char* name() const override { return "dfs"; }
    void on_seed(const std::string& url) override { q_.push_back({url, ""}); }
    void on_link(PendingLink link) override {
        q_.push_back({std::move(link.url), std::move(link.source)});
    }
    std::optional<Pulled> next(Rng&, std::uint64_t) override {
        if (q_.empty()) return std::nullopt;
        auto [url, parent] = std::move(q_.back());
        q_.pop_back();
        return Pulled{std::move(url), std::move(parent), kNoAction};
    }
    bool has_pending() const override { return !q_.empty(); }

private:
    std::deque<std::pair<std::string, std::string>> q_;
};

// uniform draw over every pending link
class RandomPolicy : public FrontierPolicy {
public:
    const char* name() const override { return "random"; }
    void on_seed(const std::string& url) override { q_.push_back({url, ""}); }
    void on_link(PendingLink link) override {
        q_.push_back({std::move(link.url), std::move(link.source)});
    }
    std::optional<Pulled> next(Rng& rng, std::uint64_t) override {
        if (q_.empty()) return std::nullopt;
        std::size_t k = static_cast<std::size_t>(rng.below(q_.size()));
        auto [url, parent] = std::move(q_[k]);
        q_[k] = std::move(q_.back());
        q_.pop_back();
        return Pulled{std::move(url), std::move(parent), kNoAction};
    }
    bool has_pending() const override { return !q_.empty(); }

private:
    std::vector<std::pair<std::string, std::string>> q_;
};

// Upper reference point: fetches exactly the known target URLs, nothing
// else (not even the seed).
class OmniscientPolicy : public FrontierPolicy {
public:
    explicit OmniscientPolicy(std::vector<std::string> targets) : targets_(std::move(targets)) {}
    const char* name() const override { return "omniscient"; }
    void on_seed(const std::string&) override {}
    void on_link(PendingLink) override {}
    std::optional<Pulled> next(Rng&, std::uint64_t) override {
        if (idx_ >= targets_.size()) return std::nullopt;
        return Pulled{targets_[idx_++], "", kNoAction};
    }
    bool has_pending() const override { return idx_ < targets_.size(); }

private:
    std::vector<std::string> targets_;
    std::size_t idx_ = 0;
};

// Classic focused crawler: a priority queue over pending links, scored by a
// logistic model of (source depth, URL char 2-grams, anchor-text char
// 2-grams) predicting whether the link leads to targets. Retrained from
// scratch on all crawl outcomes so far every `retrain_every` HTML pages; the
// queue is rescored after each retrain. Untrained model: all priorities
// equal, FIFO order.
class FocusedPolicy : public FrontierPolicy {
public:
    explicit FocusedPolicy(std::uint64_t retrain_every = 50)
        : retrain_every_(retrain_every), model_(kDims) {}

    const char* name() const override { return "focused"; }

    void on_seed(const std::string& url) override {
        entries_.push_back({url, "", 0.5, seq_++});
        std::push_heap(entries_.begin(), entries_.end(), cmp);
    }

    void on_link(PendingLink link) override {
        UrlFeatures f = features(link.url, link.anchor, link.depth);
        double score = model_.predict_proba(f);
        awaiting_.emplace(link.url, std::move(f));
        entries_.push_back({std::move(link.url), std::move(link.source), score, seq_++});
        std::push_heap(entries_.begin(), entries_.end(), cmp);
    }

    std::optional<Pulled> next(Rng&, std::uint64_t) override {
        if (entries_.empty()) return std::nullopt;
        std::pop_heap(entries_.begin(), entries_.end(), cmp);
        Entry e = std::move(entries_.back());
        entries_.pop_back();
        return Pulled{std::move(e.url), std::move(e.parent), kNoAction};
    }

    void on_page(const PageInfo& info) override {
        if (auto it = awaiting_.find(info.url); it != awaiting_.end()) {
            int label = (info.is_target || info.targets_found > 0) ? 1 : 0;
            examples_.emplace_back(std::move(it->second), label);
            awaiting_.erase(it);
        }
        if (info.is_html && ++html_crawled_ % retrain_every_ == 0) retrain();
    }

    bool has_pending() const override { return !entries_.empty(); }

private:
    //  [0] depth | [1, 9217) url 2-grams | [9217, 18433) anchor 2-grams
    static constexpr std::uint32_t kDims = 1 + 2 * kUrlFeatureDims;

    struct Entry {
        std::string url;
        std::string parent;
        double score;
        std::uint64_t seq;
    };

    // max-heap by score, FIFO on ties
    static bool cmp(const Entry& a, const Entry& b) {
        if (a.score != b.score) return a.score < b.score;
        return a.seq > b.seq;
    }

    static UrlFeatures features(const std::string& url, const std::string& anchor, int depth) {
        UrlFeatures out;
        out.emplace_back(0, static_cast<double>(depth));
        for (auto& [id, v] : url_features(url)) out.emplace_back(1 + id, v);
        for (auto& [id, v] : url_features(anchor)) out.emplace_back(1 + kUrlFeatureDims + id, v);
        return out;
    }

    void retrain() {
        if (examples_.empty()) return;
        model_ = OnlineLogit(kDims);
        for (int pass = 0; pass < 3; ++pass) model_.train_batch(examples_);
        // rescore pending links under the new model (features were computed
        // at discovery and are still held in awaiting_)
        for (auto& e : entries_) {
            auto it = awaiting_.find(e.url);
            if (it != awaiting_.end()) e.score = model_.predict_proba(it->second);
        }
        std::make_heap(entries_.begin(), entries_.end(), cmp);
    }

    std::uint64_t retrain_every_;
    OnlineLogit model_;
    std::vector<Entry> entries_;
    std::unordered_map<std::string, UrlFeatures> awaiting_;
    std::vector<std::pair<UrlFeatures, int>> examples_;
    std::uint64_t html_crawled_ = 0;
    std::uint64_t seq_ = 0;
};

// Tag-path grouping without the bandit: a bootstrap BFS phase measures each
// group's true benefit with oracle link counts, then only links matching a
// bootstrap-seen group are followed, best frozen mean first. Groups first
// seen after bootstrap would get benefit 0 and never be preferred, which a
// finite-budget crawl cannot distinguish from dropping them.
class TpoffPolicy : public FrontierPolicy {
public:
    using BenefitFn = std::function<double(const std::string&)>;

    TpoffPolicy(const CrawlConfig& cfg, BenefitFn benefit)
        : bootstrap_(cfg.tpoff_bootstrap),
          vec_(cfg.n, cfg.hash),
          actions_(cfg.theta, cfg.index_backend, cfg.exact_threshold, cfg.nsw),
          benefit_(std::move(benefit)) {}

    const char* name() const override { return "tpoff"; }

    void on_seed(const std::string& url) override { bfs_.push_back({url, "", kNoAction}); }

    void on_link(PendingLink link) override {
        auto v = vec_.vectorize(link.path);
        if (!phase2_) {
            auto [aid, created] = actions_.map_link_to_action(v);
            (void)created;
            group_of_[link.url] = aid;
            bfs_.push_back({std::move(link.url), std::move(link.source),
                            static_cast<std::int64_t>(aid)});
            return;
        }
        auto hit = actions_.nearest(v);
        if (hit && hit->second >= actions_.theta())
            groups_[hit->first].push_back(
                {std::move(link.url), std::move(link.source),
                 static_cast<std::int64_t>(hit->first)});
        // no match: dropped
    }

    std::optional<Pulled> next(Rng&, std::uint64_t) override {
        if (!phase2_ && pages_done_ >= bootstrap_) enter_phase2();
        if (!phase2_) {
            if (bfs_.empty()) return std::nullopt;
            auto e = std::move(bfs_.front());
            bfs_.pop_front();
            return Pulled{std::move(e.url), std::move(e.parent), kNoAction};
        }
        // best frozen mean among groups with pending links; ties to lowest id
        const std::map<ActionId, std::deque<QueuedLink>>::iterator end = groups_.end();
        auto best = end;
        double best_mean = 0.0;
        for (auto it = groups_.begin(); it != end; ++it) {
            if (it->second.empty()) continue;
            double mean = frozen_mean(it->first);
            if (best == end || mean > best_mean) {
                best = it;
                best_mean = mean;
            }
        }
        if (best == end) return std::nullopt;
        auto e = std::move(best->second.front());
        best->second.pop_front();
        return Pulled{std::move(e.url), std::move(e.parent), kNoAction};
    }

    void on_page(const PageInfo& info) override {
        if (!phase2_) {
            if (auto it = group_of_.find(info.url); it != group_of_.end()) {
                auto& s = stats_[it->second];
                s.first += benefit_ ? benefit_(info.url) : info.targets_found;
                s.second += 1;
            }
            pages_done_ += 1;
        }
    }

    bool has_pending() const override {
        if (!phase2_ && pages_done_ < bootstrap_) return !bfs_.empty();
        for (const auto& [id, q] : groups_)
            if (!q.empty()) return true;
        return !bfs_.empty();
    }

private:
    struct QueuedLink {
        std::string url;
        std::string parent;
        std::int64_t group;
    };

    double frozen_mean(ActionId id) const {
        auto it = stats_.find(id);
        if (it == stats_.end() || it->second.second == 0) return 0.0;
        return it->second.first / static_cast<double>(it->second.second);
    }

    void enter_phase2() {
        phase2_ = true;
        // pending bootstrap links keep their groups and FIFO order
        while (!bfs_.empty()) {
            auto e = std::move(bfs_.front());
            bfs_.pop_front();
            if (e.group == kNoAction) continue;  // the seed has no group
            groups_[static_cast<ActionId>(e.group)].push_back(
                {std::move(e.url), std::move(e.parent), e.group});
        }
    }

    std::uint64_t bootstrap_;
    Vectorizer vec_;
    ActionSpace actions_;
    BenefitFn benefit_;
    std::deque<QueuedLink> bfs_;
    std::map<ActionId, std::deque<QueuedLink>> groups_;
    std::unordered_map<std::string, ActionId> group_of_;
    std::map<ActionId, std::pair<double, std::uint64_t>> stats_;  // sum, count
    std::uint64_t pages_done_ = 0;
    bool phase2_ = false;
};

}  // namespace fcrawl
