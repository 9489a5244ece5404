#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace fcrawl {

// Path rules for one user-agent group. Matching follows the longest-match
// convention: the most specific rule wins, Allow beating Disallow on ties.
// Patterns support '*' wildcards and a '$' end anchor.
struct RobotsRules {
    struct Rule {
        bool allow;
        std::string pattern;
    };
    std::vector<Rule> rules;

    static bool pattern_matches(std::string_view pattern, std::string_view path) {
        bool anchored = !pattern.empty() && pattern.back() == '$';
        if (anchored) pattern.remove_suffix(1);
        // greedy segment match over '*'
        std::size_t pi = 0, si = 0, star_pi = std::string_view::npos, star_si = 0;
        while (si < path.size()) {
            if (pi < pattern.size() && (pattern[pi] == path[si])) {
                ++pi, ++si;
            } else if (pi < pattern.size() && pattern[pi] == '*') {
                star_pi = ++pi;
                star_si = si;
            } else if (star_pi != std::string_view::npos) {
                pi = star_pi;
                si = ++star_si;
            } else {
                break;
            }
        }
        while (pi < pattern.size() && pattern[pi] == '*') ++pi;
        if (pi < pattern.size()) return false;
        return anchored ? si == path.size() : true;
    }

    bool allowed(std::string_view path) const {
        std::size_t best_len = 0;
        bool best_allow = true;  // no matching rule: allowed
        for (const auto& r : rules) {
            if (r.pattern.empty()) continue;  // "Disallow:" empty = allow all
            if (!pattern_matches(r.pattern, path)) continue;
            std::size_t len = r.pattern.size();
            if (len > best_len || (len == best_len && r.allow && !best_allow)) {
                best_len = len;
                best_allow = r.allow;
            }
        }
        return best_allow;
    }
};

// Extract the rule group that applies to `ua_token`: the group whose
// User-agent line is the longest case-insensitive substring of the token,
// falling back to the '*' group.
inline RobotsRules parse_robots(std::string_view body, std::string_view ua_token) {
    auto lower = [](std::string_view s) {
        std::string out(s);
        std::transform(out.begin(), out.end(), out.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        return out;
    };
    std::string token = lower(ua_token);

    RobotsRules best, star;
    std::size_t best_ua_len = 0;
    bool have_best = false;

    RobotsRules current;
    std::vector<std::string> current_uas;
    bool in_group_rules = false;

    auto flush = [&]() {
        for (const auto& ua : current_uas) {
            if (ua == "*") {
                star = current;
            } else if (token.find(ua) != std::string::npos && ua.size() >= best_ua_len) {
                best = current;
                best_ua_len = ua.size();
                have_best = true;
            }
        }
        current = {};
        current_uas.clear();
        in_group_rules = false;
    };

    std::size_t pos = 0;
    while (pos <= body.size()) {
        auto eol = body.find('\n', pos);
        std::string_view line = body.substr(pos, eol == std::string_view::npos ? body.size() - pos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? body.size() + 1 : eol + 1;

        auto hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.remove_suffix(1);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front())))
            line.remove_prefix(1);
        if (line.empty()) continue;

        auto colon = line.find(':');
        if (colon == std::string_view::npos) continue;
        std::string field = lower(line.substr(0, colon));
        std::string_view value = line.substr(colon + 1);
        while (!value.empty() && std::isspace(static_cast<unsigned char>(value.front())))
            value.remove_prefix(1);

        if (field == "user-agent") {
            if (in_group_rules) flush();
            current_uas.push_back(lower(value));
        } else if (field == "disallow" || field == "allow") {
            if (current_uas.empty()) continue;  // rules before any UA line
            in_group_rules = true;
            current.rules.push_back({field == "allow", std::string(value)});
        }
        // other fields (crawl-delay, sitemap) ignored
    }
    flush();
    return have_best ? best : star;
}

}  // namespace fcrawl
