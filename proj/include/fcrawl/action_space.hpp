#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "fcrawl/graph.hpp"
#include "fcrawl/rng.hpp"

namespace fcrawl {

// cosine with either operand all-zero defined as 0; bitwise-equal vectors
// report exactly 1 so a join threshold of 1.0 still admits identical paths
inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("cosine: dim mismatch");
    if (a == b) {
        for (double x : a)
            if (x != 0.0) return 1.0;
        return 0.0;
    }
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

struct Action {
    ActionId id = 0;
    std::vector<double> centroid;
    std::uint64_t members = 1;     // paths merged into the centroid
    std::uint64_t pulls = 0;       // N_a
    double mean_reward = 0.0;      // R_a
};

// 1-NN by cosine over action centroids. Ties break toward the lowest id.
class CentroidIndex {
public:
    virtual ~CentroidIndex() = default;
    virtual void insert(ActionId id, const std::vector<double>& v) = 0;
    virtual void update(ActionId id, const std::vector<double>& v) = 0;
    virtual std::optional<std::pair<ActionId, double>> nearest(
        const std::vector<double>& q) const = 0;
    virtual std::size_t size() const = 0;
};

class ExactIndex : public CentroidIndex {
public:
    void insert(ActionId id, const std::vector<double>& v) override {
        if (id != vecs_.size()) throw std::logic_error("exact index expects dense ids");
        vecs_.push_back(v);
        norms_.push_back(norm(v));
    }

    void update(ActionId id, const std::vector<double>& v) override {
        vecs_.at(id) = v;
        norms_.at(id) = norm(v);
    }

    std::optional<std::pair<ActionId, double>> nearest(
        const std::vector<double>& q) const override {
        if (vecs_.empty()) return std::nullopt;
        // sparse query against dense centroids
        std::vector<std::pair<std::uint32_t, double>> nz;
        double qn = 0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (q[i] != 0.0) nz.emplace_back(static_cast<std::uint32_t>(i), q[i]);
            qn += q[i] * q[i];
        }
        qn = std::sqrt(qn);
        ActionId best = 0;
        double best_cos = -2;
        for (ActionId id = 0; id < vecs_.size(); ++id) {
            double c;
            if (vecs_[id] == q) {
                c = qn == 0.0 ? 0.0 : 1.0;
            } else if (qn == 0.0 || norms_[id] == 0.0) {
                c = 0.0;
            } else {
                double dot = 0;
                const auto& v = vecs_[id];
                for (const auto& [i, x] : nz) dot += x * v[i];
                c = dot / (qn * norms_[id]);
            }
            if (c > best_cos) {
                best_cos = c;
                best = id;
            }
        }
        return std::make_pair(best, best_cos);
    }

    std::size_t size() const override { return vecs_.size(); }

private:
    static double norm(const std::vector<double>& v) {
        double s = 0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    }
    std::vector<std::vector<double>> vecs_;
    std::vector<double> norms_;
};

struct NswParams {
    unsigned M = 16;
    unsigned ef_construction = 200;
    unsigned ef_search = 64;
    std::uint64_t seed = 0x9E3779B97F4A7C15ULL;
};

// Small-world graph index (HNSW style). Approximate: recall is checked
// against the exact backend in tests. Centroid updates replace the stored
// vector in place; graph links are kept as built.
class NswIndex : public CentroidIndex {
public:
    explicit NswIndex(NswParams p = {}) : p_(p), rng_(p.seed), mult_(1.0 / std::log(double(p.M))) {}

    void insert(ActionId id, const std::vector<double>& v) override {
        if (id != nodes_.size()) throw std::logic_error("nsw index expects dense ids");
        int level = static_cast<int>(-std::log(std::max(rng_.uniform01(), 1e-300)) * mult_);
        nodes_.push_back({v, norm(v), {}});
        nodes_.back().links.resize(static_cast<std::size_t>(level) + 1);

        if (nodes_.size() == 1) {
            entry_ = 0;
            top_level_ = level;
            return;
        }

        ActionId ep = entry_;
        for (int lvl = top_level_; lvl > level; --lvl) ep = greedy_step(v, ep, lvl);
        for (int lvl = std::min(level, top_level_); lvl >= 0; --lvl) {
            auto cand = search_layer(v, ep, p_.ef_construction, lvl);
            unsigned max_links = lvl == 0 ? 2 * p_.M : p_.M;
            auto selected = cand;
            if (selected.size() > p_.M) selected.resize(p_.M);
            auto& my = nodes_[id].links[static_cast<std::size_t>(lvl)];
            for (const auto& [d, nid] : selected) {
                my.push_back(nid);
                auto& theirs = nodes_[nid].links[static_cast<std::size_t>(lvl)];
                theirs.push_back(id);
                if (theirs.size() > max_links) shrink(nid, lvl, max_links);
            }
            if (!cand.empty()) ep = cand.front().second;
        }
        if (level > top_level_) {
            top_level_ = level;
            entry_ = id;
        }
    }

    void update(ActionId id, const std::vector<double>& v) override {
        nodes_.at(id).vec = v;
        nodes_.at(id).nrm = norm(v);
    }

    std::optional<std::pair<ActionId, double>> nearest(
        const std::vector<double>& q) const override {
        if (nodes_.empty()) return std::nullopt;
        ActionId ep = entry_;
        for (int lvl = top_level_; lvl > 0; --lvl) ep = greedy_step(q, ep, lvl);
        auto cand = search_layer(q, ep, p_.ef_search, 0);
        ActionId best = cand.empty() ? ep : cand.front().second;
        double best_d = dist(q, best);
        for (const auto& [d, nid] : cand) {
            if (d < best_d || (d == best_d && nid < best)) {
                best_d = d;
                best = nid;
            }
        }
        return std::make_pair(best, 1.0 - best_d);
    }

    std::size_t size() const override { return nodes_.size(); }

private:
    struct Node {
        std::vector<double> vec;
        double nrm;
        std::vector<std::vector<ActionId>> links;  // per level
    };

    static double norm(const std::vector<double>& v) {
        double s = 0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    }

    // distance = 1 - cosine
    double dist(const std::vector<double>& q, ActionId id) const {
        const Node& nd = nodes_[id];
        if (nd.vec == q) {
            for (double x : q)
                if (x != 0.0) return 0.0;
            return 1.0;
        }
        double qn = 0, dot = 0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            qn += q[i] * q[i];
            dot += q[i] * nd.vec[i];
        }
        qn = std::sqrt(qn);
        if (qn == 0.0 || nd.nrm == 0.0) return 1.0;
        return 1.0 - dot / (qn * nd.nrm);
    }

    ActionId greedy_step(const std::vector<double>& q, ActionId ep, int lvl) const {
        double best = dist(q, ep);
        bool improved = true;
        while (improved) {
            improved = false;
            if (static_cast<std::size_t>(lvl) >= nodes_[ep].links.size()) break;
            for (ActionId nb : nodes_[ep].links[static_cast<std::size_t>(lvl)]) {
                double d = dist(q, nb);
                if (d < best || (d == best && nb < ep)) {
                    best = d;
                    ep = nb;
                    improved = true;
                }
            }
        }
        return ep;
    }

    // returns (dist, id) sorted ascending
    std::vector<std::pair<double, ActionId>> search_layer(const std::vector<double>& q,
                                                          ActionId ep, unsigned ef,
                                                          int lvl) const {
        std::unordered_set<ActionId> visited{ep};
        auto cmp_near = [](const std::pair<double, ActionId>& a,
                           const std::pair<double, ActionId>& b) { return a > b; };
        std::priority_queue<std::pair<double, ActionId>,
                            std::vector<std::pair<double, ActionId>>, decltype(cmp_near)>
            candidates(cmp_near);
        std::priority_queue<std::pair<double, ActionId>> best;  // max-heap
        double d0 = dist(q, ep);
        candidates.push({d0, ep});
        best.push({d0, ep});
        while (!candidates.empty()) {
            auto [d, id] = candidates.top();
            candidates.pop();
            if (d > best.top().first && best.size() >= ef) break;
            if (static_cast<std::size_t>(lvl) >= nodes_[id].links.size()) continue;
            for (ActionId nb : nodes_[id].links[static_cast<std::size_t>(lvl)]) {
                if (!visited.insert(nb).second) continue;
                double dn = dist(q, nb);
                if (best.size() < ef || dn < best.top().first) {
                    candidates.push({dn, nb});
                    best.push({dn, nb});
                    if (best.size() > ef) best.pop();
                }
            }
        }
        std::vector<std::pair<double, ActionId>> out;
        out.reserve(best.size());
        while (!best.empty()) {
            out.push_back(best.top());
            best.pop();
        }
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            return a.first < b.first || (a.first == b.first && a.second < b.second);
        });
        return out;
    }

    void shrink(ActionId id, int lvl, unsigned max_links) {
        auto& ls = nodes_[id].links[static_cast<std::size_t>(lvl)];
        std::sort(ls.begin(), ls.end(), [&](ActionId a, ActionId b) {
            double da = dist(nodes_[id].vec, a), db = dist(nodes_[id].vec, b);
            return da < db || (da == db && a < b);
        });
        ls.resize(max_links);
    }

    NswParams p_;
    Rng rng_;
    double mult_;
    std::vector<Node> nodes_;
    ActionId entry_ = 0;
    int top_level_ = -1;
};

enum class IndexBackend { Auto, Exact, Nsw };

// Incremental clustering of projected tag paths: join the best centroid when
// cosine >= theta, else open a new action. Centroids are running means.
class ActionSpace {
public:
    ActionSpace(double theta, IndexBackend backend = IndexBackend::Auto,
                std::size_t exact_threshold = 512, NswParams nsw = {})
        : theta_(theta), backend_(backend), exact_threshold_(exact_threshold), nsw_(nsw) {
        if (theta_ < 0.0 || theta_ > 1.0) throw std::invalid_argument("theta must be in [0,1]");
        if (backend_ == IndexBackend::Nsw)
            index_ = std::make_unique<NswIndex>(nsw_);
        else
            index_ = std::make_unique<ExactIndex>();
    }

    // returns (action id, created?)
    std::pair<ActionId, bool> map_link_to_action(const std::vector<double>& p) {
        auto hit = index_->nearest(p);
        if (hit && hit->second >= theta_) {
            Action& a = actions_[hit->first];
            // running mean: c += (p - c) / (members + 1)
            for (std::size_t i = 0; i < a.centroid.size(); ++i)
                a.centroid[i] += (p[i] - a.centroid[i]) / static_cast<double>(a.members + 1);
            a.members += 1;
            index_->update(a.id, a.centroid);
            return {a.id, false};
        }
        ActionId id = static_cast<ActionId>(actions_.size());
        actions_.push_back({id, p, 1, 0, 0.0});
        maybe_migrate();
        index_->insert(id, p);
        return {id, true};
    }

    // query without inserting or updating (frozen-group lookups)
    std::optional<std::pair<ActionId, double>> nearest(const std::vector<double>& p) const {
        return index_->nearest(p);
    }

    Action& action(ActionId id) { return actions_.at(id); }
    const Action& action(ActionId id) const { return actions_.at(id); }
    const std::vector<Action>& actions() const { return actions_; }
    std::size_t size() const { return actions_.size(); }
    double theta() const { return theta_; }

private:
    void maybe_migrate() {
        if (backend_ != IndexBackend::Auto) return;
        if (actions_.size() <= exact_threshold_) return;
        backend_ = IndexBackend::Nsw;
        auto nsw = std::make_unique<NswIndex>(nsw_);
        for (const auto& a : actions_)
            if (a.id + 1 < actions_.size()) nsw->insert(a.id, a.centroid);
        index_ = std::move(nsw);
    }

    double theta_;
    IndexBackend backend_;
    std::size_t exact_threshold_;
    NswParams nsw_;
    std::vector<Action> actions_;
    std::unique_ptr<CentroidIndex> index_;
};

}  // namespace fcrawl
