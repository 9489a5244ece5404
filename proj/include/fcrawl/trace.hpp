#pragma once

#include <cstdint>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace fcrawl {

// One fetched page (redirect hops included). Cumulative fields are
// snapshots taken right after the page's own fetch and target accounting;
// HEAD probes made while scanning its links show up in the next record's
// snapshot and in the final summary.
struct StepRecord {
    std::uint64_t step = 0;      // t, 1-based
    std::string url;
    std::int64_t action = -1;    // pulled action, -1 if none
    int status = 0;
    std::string mime;            // "" when absent
    bool aborted = false;
    std::uint64_t bytes_in = 0;  // header + body received for this page
    std::uint64_t bytes_out = 0;
    double reward = 0.0;         // new target links recursed from this page
    std::uint64_t targets = 0;   // cumulative stored targets
    double budget = 0.0;         // cumulative beta
    std::uint64_t requests = 0;  // cumulative GET + HEAD
    std::uint64_t target_volume = 0;     // cumulative target body bytes
    std::uint64_t nontarget_volume = 0;  // cumulative non-target body bytes
};

struct TraceSummary {
    std::string policy;
    std::uint64_t seed = 0;
    std::uint64_t steps = 0;
    std::uint64_t requests = 0;
    std::uint64_t targets = 0;
    double budget = 0.0;
    std::uint64_t target_volume = 0;
    std::uint64_t nontarget_volume = 0;
    std::string stop_reason;  // frontier_exhausted | budget | early_stop
};

struct CrawlTrace {
    std::vector<StepRecord> records;
    TraceSummary summary;

    std::string serialize() const {
        std::string out;
        for (const auto& r : records) {
            nlohmann::ordered_json j;
            j["step"] = r.step;
            j["url"] = r.url;
            j["action"] = r.action;
            j["status"] = r.status;
            j["mime"] = r.mime;
            j["aborted"] = r.aborted;
            j["bytes_in"] = r.bytes_in;
            j["bytes_out"] = r.bytes_out;
            j["reward"] = r.reward;
            j["targets"] = r.targets;
            j["budget"] = r.budget;
            j["requests"] = r.requests;
            j["target_volume"] = r.target_volume;
            j["nontarget_volume"] = r.nontarget_volume;
            out += j.dump();
            out += '\n';
        }
        nlohmann::ordered_json s;
        s["summary"] = {{"policy", summary.policy},
                        {"seed", summary.seed},
                        {"steps", summary.steps},
                        {"requests", summary.requests},
                        {"targets", summary.targets},
                        {"budget", summary.budget},
                        {"target_volume", summary.target_volume},
                        {"nontarget_volume", summary.nontarget_volume},
                        {"stop_reason", summary.stop_reason}};
        out += s.dump();
        out += '\n';
        return out;
    }

    void save(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write trace: " + path);
        out << serialize();
    }

    static CrawlTrace parse(std::istream& in) {
        CrawlTrace t;
        std::string line;
        bool summary_seen = false;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto j = nlohmann::json::parse(line);
            if (j.contains("summary")) {
                const auto& s = j["summary"];
                t.summary.policy = s.value("policy", std::string{});
                t.summary.seed = s.value("seed", std::uint64_t{0});
                t.summary.steps = s.value("steps", std::uint64_t{0});
                t.summary.requests = s.value("requests", std::uint64_t{0});
                t.summary.targets = s.value("targets", std::uint64_t{0});
                t.summary.budget = s.value("budget", 0.0);
                t.summary.target_volume = s.value("target_volume", std::uint64_t{0});
                t.summary.nontarget_volume = s.value("nontarget_volume", std::uint64_t{0});
                t.summary.stop_reason = s.value("stop_reason", std::string{});
                summary_seen = true;
                continue;
            }
            StepRecord r;
            r.step = j.at("step").get<std::uint64_t>();
            r.url = j.at("url").get<std::string>();
            r.action = j.at("action").get<std::int64_t>();
            r.status = j.at("status").get<int>();
            r.mime = j.at("mime").get<std::string>();
            r.aborted = j.value("aborted", false);
            r.bytes_in = j.at("bytes_in").get<std::uint64_t>();
            r.bytes_out = j.at("bytes_out").get<std::uint64_t>();
            r.reward = j.at("reward").get<double>();
            r.targets = j.at("targets").get<std::uint64_t>();
            r.budget = j.at("budget").get<double>();
            r.requests = j.at("requests").get<std::uint64_t>();
            r.target_volume = j.at("target_volume").get<std::uint64_t>();
            r.nontarget_volume = j.at("nontarget_volume").get<std::uint64_t>();
            t.records.push_back(std::move(r));
        }
        if (!summary_seen) throw std::runtime_error("trace has no summary line");
        return t;
    }

    static CrawlTrace load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot read trace: " + path);
        return parse(in);
    }
};

}  // namespace fcrawl
