#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fcrawl/action_space.hpp"

namespace fcrawl {

struct BanditConfig {
    double alpha = 2.0 * std::numbers::sqrt2_v<double>;  // exploration weight
    double epsilon = 1e-6;                               // guards the unpulled-arm division
};

// Sleeping-arm UCB score: asleep arms score 0; log is natural and clamped so
// t <= 1 contributes no exploration bonus.
inline double auer_score(double mean_reward, std::uint64_t pulls, bool awake, std::uint64_t t,
                         const BanditConfig& cfg) {
    if (!awake) return 0.0;
    double logt = t <= 1 ? 0.0 : std::log(static_cast<double>(t));
    return mean_reward +
           cfg.alpha * std::sqrt(logt / (static_cast<double>(pulls) + cfg.epsilon));
}

// argmax over awake actions; ties break toward the lowest id
inline ActionId select_action(const std::vector<Action>& actions,
                              const std::function<bool(ActionId)>& awake, std::uint64_t t,
                              const BanditConfig& cfg) {
    bool found = false;
    ActionId best = 0;
    double best_score = 0;
    for (const auto& a : actions) {
        if (!awake(a.id)) continue;
        double s = auer_score(a.mean_reward, a.pulls, true, t, cfg);
        if (!found || s > best_score) {
            found = true;
            best = a.id;
            best_score = s;
        }
    }
    if (!found) throw std::logic_error("select_action: no awake action");
    return best;
}

// incremental mean; requires the pull to have been counted already so the
// first update divides by 1
inline void update_reward(Action& a, double reward) {
    if (a.pulls == 0) throw std::logic_error("update_reward before any pull");
    a.mean_reward += (reward - a.mean_reward) / static_cast<double>(a.pulls);
}

}  // namespace fcrawl
