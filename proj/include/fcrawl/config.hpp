#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "fcrawl/action_space.hpp"
#include "fcrawl/bandit.hpp"
#include "fcrawl/hashing.hpp"
#include "fcrawl/mime.hpp"

namespace fcrawl {

// bad or inconsistent configuration; the CLI maps this to exit code 2
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class WeightMode { RequestCount, ByteVolume };

struct EarlyStopConfig {
    bool enabled = true;
    std::uint64_t nu = 1000;   // checkpoint spacing in crawl steps
    double epsilon = 0.2;      // discovery-rate threshold
    double gamma = 0.05;       // EMA weight of the newest rate
    std::uint64_t kappa = 15;  // consecutive low checkpoints before stopping
};

struct CrawlConfig {
    // tag path grouping
    unsigned n = 2;            // n-gram size
    double theta = 0.75;       // join threshold
    HashParams hash;           // pi, w, m
    BanditConfig bandit;       // alpha, epsilon
    std::size_t b = 10;        // classifier batch size
    EarlyStopConfig early_stop;

    WeightMode weight_mode = WeightMode::RequestCount;
    double budget = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 1;

    std::string user_agent = "fcrawl/0.1";
    std::uint64_t politeness_ms = 1000;
    bool honor_robots = true;

    std::vector<std::string> target_mimes = default_target_mimes();
    std::vector<std::string> mime_blocklist = default_mime_blocklist();
    std::vector<std::string> extension_blocklist = default_extension_blocklist();

    // centroid index
    IndexBackend index_backend = IndexBackend::Auto;
    std::size_t exact_threshold = 512;
    NswParams nsw;

    // baseline knobs
    std::uint64_t focused_retrain_every = 50;  // crawled HTML pages
    std::uint64_t tpoff_bootstrap = 3000;      // BFS pages before switching

    void validate() const {
        if (n == 0) throw ConfigError("n must be >= 1");
        if (theta < 0.0 || theta > 1.0) throw ConfigError("theta must be in [0,1]");
        try {
            hash.validate();
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
        if (b == 0) throw ConfigError("b must be >= 1");
        if (bandit.alpha < 0) throw ConfigError("alpha must be >= 0");
        if (bandit.epsilon <= 0) throw ConfigError("bandit epsilon must be > 0");
        if (early_stop.nu == 0) throw ConfigError("nu must be >= 1");
        if (early_stop.gamma < 0 || early_stop.gamma > 1)
            throw ConfigError("gamma must be in [0,1]");
        if (budget < 0) throw ConfigError("budget must be >= 0");
    }
};

// Keys follow the symbols the configuration is usually discussed with:
// n, theta, alpha, m, w, b, nu, gamma, kappa, pi, epsilon (early-stop
// threshold), bandit_epsilon.
inline CrawlConfig config_from_json(const nlohmann::json& j) {
    CrawlConfig c;
    try {
        if (j.contains("n")) c.n = j.at("n").get<unsigned>();
        if (j.contains("theta")) c.theta = j.at("theta").get<double>();
        if (j.contains("alpha")) c.bandit.alpha = j.at("alpha").get<double>();
        if (j.contains("bandit_epsilon")) c.bandit.epsilon = j.at("bandit_epsilon").get<double>();
        if (j.contains("pi")) c.hash.pi = j.at("pi").get<std::uint64_t>();
        if (j.contains("w")) c.hash.w = j.at("w").get<unsigned>();
        if (j.contains("m")) c.hash.m = j.at("m").get<unsigned>();
        if (j.contains("b")) c.b = j.at("b").get<std::size_t>();
        if (j.contains("nu")) c.early_stop.nu = j.at("nu").get<std::uint64_t>();
        if (j.contains("epsilon")) c.early_stop.epsilon = j.at("epsilon").get<double>();
        if (j.contains("gamma")) c.early_stop.gamma = j.at("gamma").get<double>();
        if (j.contains("kappa")) c.early_stop.kappa = j.at("kappa").get<std::uint64_t>();
        if (j.contains("early_stop")) c.early_stop.enabled = j.at("early_stop").get<bool>();
        if (j.contains("weight_mode")) {
            auto s = j.at("weight_mode").get<std::string>();
            if (s == "request_count") c.weight_mode = WeightMode::RequestCount;
            else if (s == "byte_volume") c.weight_mode = WeightMode::ByteVolume;
            else throw ConfigError("weight_mode must be request_count or byte_volume");
        }
        if (j.contains("budget")) {
            if (j.at("budget").is_null()) c.budget = std::numeric_limits<double>::infinity();
            else c.budget = j.at("budget").get<double>();
        }
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("user_agent")) c.user_agent = j.at("user_agent").get<std::string>();
        if (j.contains("politeness_ms")) c.politeness_ms = j.at("politeness_ms").get<std::uint64_t>();
        if (j.contains("honor_robots")) c.honor_robots = j.at("honor_robots").get<bool>();
        if (j.contains("target_mimes"))
            c.target_mimes = j.at("target_mimes").get<std::vector<std::string>>();
        if (j.contains("mime_blocklist"))
            c.mime_blocklist = j.at("mime_blocklist").get<std::vector<std::string>>();
        if (j.contains("extension_blocklist"))
            c.extension_blocklist = j.at("extension_blocklist").get<std::vector<std::string>>();
        if (j.contains("index_backend")) {
            auto s = j.at("index_backend").get<std::string>();
            if (s == "auto") c.index_backend = IndexBackend::Auto;
            else if (s == "exact") c.index_backend = IndexBackend::Exact;
            else if (s == "nsw") c.index_backend = IndexBackend::Nsw;
            else throw ConfigError("index_backend must be auto, exact or nsw");
        }
        if (j.contains("exact_threshold"))
            c.exact_threshold = j.at("exact_threshold").get<std::size_t>();
        if (j.contains("nsw_m")) c.nsw.M = j.at("nsw_m").get<unsigned>();
        if (j.contains("nsw_ef_construction"))
            c.nsw.ef_construction = j.at("nsw_ef_construction").get<unsigned>();
        if (j.contains("nsw_ef_search")) c.nsw.ef_search = j.at("nsw_ef_search").get<unsigned>();
        if (j.contains("focused_retrain_every"))
            c.focused_retrain_every = j.at("focused_retrain_every").get<std::uint64_t>();
        if (j.contains("tpoff_bootstrap"))
            c.tpoff_bootstrap = j.at("tpoff_bootstrap").get<std::uint64_t>();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    c.validate();
    return c;
}

// Environment overrides: FCRAWL_STORE (store path) and FCRAWL_POLITENESS_MS.
inline void apply_env_overrides(CrawlConfig& c, std::string& store_path) {
    if (const char* s = std::getenv("FCRAWL_STORE")) store_path = s;
    if (const char* p = std::getenv("FCRAWL_POLITENESS_MS")) {
        try {
            c.politeness_ms = std::stoull(p);
        } catch (const std::exception&) {
            throw ConfigError("FCRAWL_POLITENESS_MS must be an integer");
        }
    }
}

inline CrawlConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ConfigError("config is not valid JSON: " + path);
    return config_from_json(j);
}

}  // namespace fcrawl
