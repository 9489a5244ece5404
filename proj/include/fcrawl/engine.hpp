#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "fcrawl/action_space.hpp"
#include "fcrawl/bandit.hpp"
#include "fcrawl/config.hpp"
#include "fcrawl/fetch.hpp"
#include "fcrawl/graph.hpp"
#include "fcrawl/html.hpp"
#include "fcrawl/mime.hpp"
#include "fcrawl/robots.hpp"
#include "fcrawl/tagpath.hpp"
#include "fcrawl/trace.hpp"
#include "fcrawl/url.hpp"
#include "fcrawl/url_classifier.hpp"

namespace fcrawl {

// EMA of the target discovery rate, checked every nu steps; stops after
// kappa consecutive checkpoints below epsilon. Open struct: tests drive the
// recurrence directly.
struct EarlyStopState {
    double mu = 0.0;
    double last_y = 0.0;
    std::uint64_t consecutive_low = 0;
    std::uint64_t checkpoints = 0;
    bool stopped = false;
};

inline bool early_stop_step(EarlyStopState& s, const EarlyStopConfig& c, double y) {
    double sigma = (y - s.last_y) / static_cast<double>(c.nu);
    s.mu = c.gamma * sigma + (1.0 - c.gamma) * s.mu;
    s.last_y = y;
    s.checkpoints += 1;
    if (s.mu < c.epsilon) s.consecutive_low += 1;
    else s.consecutive_low = 0;
    if (s.consecutive_low >= c.kappa) s.stopped = true;
    return s.stopped;
}

// Two-class link classifier as seen by the crawl loop. The probe argument
// carries the engine's accounted HEAD request.
class LinkClassifier {
public:
    virtual ~LinkClassifier() = default;
    virtual PageClass classify(const std::string& url, const UrlClassifier::HeadProbe& probe) = 0;
    virtual void observe(const std::string&, PageClass) {}
};

class LearnedLinkClassifier : public LinkClassifier {
public:
    LearnedLinkClassifier(std::size_t batch_size, std::vector<std::string> target_mimes)
        : impl_(batch_size, std::move(target_mimes)) {}

    PageClass classify(const std::string& url, const UrlClassifier::HeadProbe& probe) override {
        return impl_.classify_or_probe(url, probe);
    }

    void observe(const std::string& url, PageClass label) override { impl_.observe(url, label); }

    UrlClassifier& impl() { return impl_; }

private:
    UrlClassifier impl_;
};

// ground-truth classifier: no probes, no training, still two-class
class OracleLinkClassifier : public LinkClassifier {
public:
    explicit OracleLinkClassifier(std::function<PageClass(const std::string&)> fn)
        : fn_(std::move(fn)) {}

    PageClass classify(const std::string& url, const UrlClassifier::HeadProbe&) override {
        return fn_(url);
    }

private:
    std::function<PageClass(const std::string&)> fn_;
};

struct Pulled {
    std::string url;
    std::string parent;         // "" for the seed
    std::int64_t action = kNoAction;
};

struct PageInfo {
    std::string url;
    bool is_html = false;
    bool is_target = false;
    double targets_found = 0.0;  // new target links recursed from this page
    int depth = 0;
};

// What varies between the main crawler and the baselines: how discovered
// links are kept and which one is fetched next.
class FrontierPolicy {
public:
    virtual ~FrontierPolicy() = default;
    virtual const char* name() const = 0;
    virtual void on_seed(const std::string& url) = 0;
    virtual void on_link(PendingLink link) = 0;
    virtual std::optional<Pulled> next(Rng& rng, std::uint64_t t) = 0;
    virtual void on_result(const Pulled&, double) {}
    virtual void on_page(const PageInfo&) {}
    virtual bool has_pending() const = 0;
};

// Tag-path actions + sleeping-bandit UCB selection, uniform within the
// chosen action's pending links.
class SleepingBanditPolicy : public FrontierPolicy {
public:
    SleepingBanditPolicy(const CrawlConfig& cfg)
        : vec_(cfg.n, cfg.hash),
          actions_(cfg.theta, cfg.index_backend, cfg.exact_threshold, cfg.nsw),
          bandit_(cfg.bandit) {}

    const char* name() const override { return name_.c_str(); }
    void set_name(std::string n) { name_ = std::move(n); }  // "sb" vs "sb-oracle"

    void on_seed(const std::string& url) override { seeds_.push_back(url); }

    void on_link(PendingLink link) override {
        auto v = vec_.vectorize(link.path);
        auto [aid, created] = actions_.map_link_to_action(v);
        (void)created;
        frontier_.push(aid, std::move(link));
    }

    std::optional<Pulled> next(Rng& rng, std::uint64_t t) override {
        if (!seeds_.empty()) {
            Pulled p{seeds_.front(), "", kNoAction};
            seeds_.erase(seeds_.begin());
            return p;
        }
        if (frontier_.empty()) return std::nullopt;
        ActionId aid = select_action(
            actions_.actions(), [&](ActionId a) { return frontier_.awake(a); }, t, bandit_);
        actions_.action(aid).pulls += 1;  // counted at selection
        PendingLink link = frontier_.pop_from(aid, rng);
        return Pulled{std::move(link.url), std::move(link.source),
                      static_cast<std::int64_t>(aid)};
    }

    void on_result(const Pulled& pulled, double reward) override {
        if (pulled.action != kNoAction)
            update_reward(actions_.action(static_cast<ActionId>(pulled.action)), reward);
    }

    bool has_pending() const override { return !seeds_.empty() || !frontier_.empty(); }

    const ActionSpace& actions() const { return actions_; }
    const Frontier& frontier() const { return frontier_; }

private:
    Vectorizer vec_;
    ActionSpace actions_;
    Frontier frontier_;
    BanditConfig bandit_;
    std::vector<std::string> seeds_;
    std::string name_ = "sb";
};

// Budgeted crawl from one seed. Every fetched page (redirect hops and
// immediately-fetched targets included) is one step: a tree node, a trace
// record and a budget charge. The budget is checked between pulls only, so
// the final pull may overshoot.
class CrawlRun {
public:
    CrawlRun(const CrawlConfig& cfg, Fetcher& fetcher, FrontierPolicy& policy,
             LinkClassifier& clf)
        : cfg_(cfg), fetcher_(fetcher), policy_(policy), clf_(clf), rng_(cfg.seed) {}

    CrawlTrace run(const std::string& seed_url) {
        auto seed = normalize_url(seed_url);
        if (!seed) throw std::invalid_argument("malformed seed URL: " + seed_url);
        root_ = *parse_url(*seed);

        std::string reason;
        if (cfg_.honor_robots) load_robots();
        if (cfg_.honor_robots && !robots_.allowed(root_.path + root_.query)) {
            reason = "robots_disallowed";
        } else {
            policy_.on_seed(*seed);
            seen_.insert(*seed);
            while (true) {
                if (stopped_early_) { reason = "early_stop"; break; }
                if (beta_ > cfg_.budget) { reason = "budget"; break; }
                auto pulled = policy_.next(rng_, t_);
                if (!pulled) { reason = "frontier_exhausted"; break; }
                double reward = crawl_next_page(pulled->url, pulled->parent, pulled->action);
                policy_.on_result(*pulled, reward);
            }
        }

        trace_.summary.policy = policy_.name();
        trace_.summary.seed = cfg_.seed;
        trace_.summary.steps = t_;
        trace_.summary.requests = requests_;
        trace_.summary.targets = targets_;
        trace_.summary.budget = beta_;
        trace_.summary.target_volume = target_volume_;
        trace_.summary.nontarget_volume = nontarget_volume_;
        trace_.summary.stop_reason = reason;
        return std::move(trace_);
    }

    // exposed for invariant checks
    const CrawlTree& tree() const { return tree_; }
    std::uint64_t get_count() const { return get_count_; }
    std::uint64_t head_count() const { return head_count_; }
    const EarlyStopState& early_stop_state() const { return es_; }

private:
    void load_robots() {
        std::string url = root_.scheme + "://" + root_.host +
                          (root_.port >= 0 ? ":" + std::to_string(root_.port) : "") +
                          "/robots.txt";
        FetchResponse resp = fetcher_.get(url, nullptr);
        get_count_++;
        requests_++;
        beta_ += cost_of(resp);
        if (resp.status >= 200 && resp.status < 300)
            robots_ = parse_robots(resp.body, cfg_.user_agent);
    }

    double cost_of(const FetchResponse& r) const {
        return cfg_.weight_mode == WeightMode::RequestCount
                   ? 1.0
                   : static_cast<double>(r.header_size + r.body_size);
    }

    bool robots_allows(const std::string& url) const {
        if (!cfg_.honor_robots) return true;
        auto u = parse_url(url);
        return u && robots_.allowed(u->path + u->query);
    }

    void checkpoint() {
        if (!cfg_.early_stop.enabled) return;
        if (t_ % cfg_.early_stop.nu != 0) return;
        if (early_stop_step(es_, cfg_.early_stop, static_cast<double>(targets_)))
            stopped_early_ = true;
    }

    std::optional<std::string> probe(const std::string& url) {
        HeadResult h = fetcher_.head(url);
        head_count_++;
        requests_++;
        beta_ += cfg_.weight_mode == WeightMode::RequestCount
                     ? 1.0
                     : static_cast<double>(h.header_size);
        if (h.status == 0) return std::nullopt;
        return h.mime;
    }

    double crawl_next_page(const std::string& url, const std::string& parent,
                           std::int64_t action) {
        AbortPredicate abort_mime = [this](const std::string& mime) {
            return mime_blocklisted(mime, cfg_.mime_blocklist);
        };
        FetchResponse resp = fetcher_.get(url, abort_mime);
        get_count_++;
        requests_++;
        double cost = cost_of(resp);
        beta_ += cost;
        if (tree_.size() == 0)
            tree_.set_root(url, cost);
        else
            tree_.attach(url, tree_.contains(parent) ? parent : tree_.root(), cost);
        t_ += 1;

        std::string mime = resp.mime.value_or("");
        bool usable = !resp.aborted && resp.status >= 200 && resp.status < 300 && resp.mime;
        bool is_html = usable && mime_is_html(mime);
        bool is_target = usable && !is_html && mime_in(mime, cfg_.target_mimes);

        if (is_target) {
            targets_ += 1;
            target_volume_ += resp.body_size;
            clf_.observe(url, PageClass::Target);
        } else {
            nontarget_volume_ += resp.body_size;
            if (is_html) clf_.observe(url, PageClass::Html);
        }

        StepRecord rec;
        rec.step = t_;
        rec.url = url;
        rec.action = action;
        rec.status = resp.status;
        rec.mime = mime;
        rec.aborted = resp.aborted;
        rec.bytes_in = resp.header_size + resp.body_size;
        rec.bytes_out = resp.request_size;
        rec.targets = targets_;
        rec.budget = beta_;
        rec.requests = requests_;
        rec.target_volume = target_volume_;
        rec.nontarget_volume = nontarget_volume_;
        std::size_t rec_idx = trace_.records.size();
        trace_.records.push_back(std::move(rec));
        checkpoint();

        double reward = 0.0;
        int depth = tree_.depth(url);

        if (!resp.aborted && resp.status >= 300 && resp.status < 400) {
            // follow in-scope, unvisited redirects; the landing page's reward
            // bubbles up to the pulled action
            if (resp.location) {
                auto base = parse_url(url);
                if (auto loc = resolve_and_normalize(*base, *resp.location)) {
                    auto lu = parse_url(*loc);
                    if (lu && in_scope(*lu, root_) && !seen_.count(*loc) &&
                        robots_allows(*loc)) {
                        seen_.insert(*loc);
                        reward = crawl_next_page(*loc, url, action);
                    }
                }
            }
        } else if (is_html) {
            auto base = parse_url(url);
            auto links = extract_links(resp.body, *base);
            for (auto& l : links) {
                auto lu = parse_url(l.url);
                if (!lu || !in_scope(*lu, root_)) continue;
                if (seen_.count(l.url)) continue;
                if (has_blocklisted_extension(l.url, cfg_.extension_blocklist)) continue;
                if (!robots_allows(l.url)) continue;
                PageClass c = clf_.classify(
                    l.url, [this](const std::string& u) { return probe(u); });
                seen_.insert(l.url);
                if (c == PageClass::Html) {
                    policy_.on_link(PendingLink{std::move(l.url), std::move(l.path), url,
                                                std::move(l.anchor), depth + 1});
                } else {
                    crawl_next_page(l.url, url, action);
                    reward += 1.0;
                }
            }
            trace_.records[rec_idx].reward = reward;
        }

        PageInfo info;
        info.url = url;
        info.is_html = is_html;
        info.is_target = is_target;
        info.targets_found = reward;
        info.depth = depth;
        policy_.on_page(info);
        return reward;
    }

    const CrawlConfig& cfg_;
    Fetcher& fetcher_;
    FrontierPolicy& policy_;
    LinkClassifier& clf_;
    Rng rng_;
    Url root_;
    RobotsRules robots_;
    CrawlTree tree_;
    CrawlTrace trace_;
    std::unordered_set<std::string> seen_;
    EarlyStopState es_;
    bool stopped_early_ = false;
    std::uint64_t t_ = 0;
    std::uint64_t requests_ = 0;
    std::uint64_t targets_ = 0;
    std::uint64_t get_count_ = 0;
    std::uint64_t head_count_ = 0;
    double beta_ = 0.0;
    std::uint64_t target_volume_ = 0;
    std::uint64_t nontarget_volume_ = 0;
};

}  // namespace fcrawl
