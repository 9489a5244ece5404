#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fcrawl/trace.hpp"

namespace fcrawl {

// Denominators for evaluation: what a full reference crawl of the site
// costs and yields. Built from a site manifest, or from the trace of an
// exhaustive crawl.
struct ReferenceTotals {
    std::uint64_t total_requests = 0;
    std::uint64_t total_targets = 0;
    std::uint64_t total_target_bytes = 0;
    std::uint64_t total_nontarget_bytes = 0;

    static ReferenceTotals from_manifest(const nlohmann::json& manifest) {
        ReferenceTotals r;
        const auto& t = manifest.at("totals");
        r.total_requests = t.at("requests").get<std::uint64_t>();
        r.total_targets = t.at("targets").get<std::uint64_t>();
        r.total_target_bytes = t.at("target_bytes").get<std::uint64_t>();
        r.total_nontarget_bytes = t.at("nontarget_bytes").get<std::uint64_t>();
        return r;
    }

    static ReferenceTotals from_manifest_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot read manifest: " + path);
        return from_manifest(nlohmann::json::parse(in));
    }

    static ReferenceTotals from_trace(const CrawlTrace& trace) {
        ReferenceTotals r;
        r.total_requests = trace.summary.requests;
        r.total_targets = trace.summary.targets;
        r.total_target_bytes = trace.summary.target_volume;
        r.total_nontarget_bytes = trace.summary.nontarget_volume;
        return r;
    }
};

// Requests spent until a fraction of all targets is stored, as a percentage
// of the reference crawl's requests. Empty when the run never got there.
inline std::optional<double> requests_to_fraction(const CrawlTrace& trace,
                                                  const ReferenceTotals& ref, double fraction) {
    if (fraction <= 0.0 || fraction > 1.0)
        throw std::invalid_argument("fraction must be in (0, 1]");
    if (ref.total_targets == 0 || ref.total_requests == 0)
        throw std::invalid_argument("reference totals are empty");
    auto need = static_cast<std::uint64_t>(
        std::ceil(fraction * static_cast<double>(ref.total_targets)));
    if (need == 0) need = 1;
    for (const auto& r : trace.records)
        if (r.targets >= need)
            return 100.0 * static_cast<double>(r.requests) /
                   static_cast<double>(ref.total_requests);
    return std::nullopt;
}

// Non-target bytes downloaded by the time the given fraction of the site's
// total target volume has been stored, as a percentage of the site's total
// non-target bytes.
inline std::optional<double> nontarget_volume_at_fraction(const CrawlTrace& trace,
                                                          const ReferenceTotals& ref,
                                                          double fraction) {
    if (fraction <= 0.0 || fraction > 1.0)
        throw std::invalid_argument("fraction must be in (0, 1]");
    if (ref.total_target_bytes == 0 || ref.total_nontarget_bytes == 0)
        throw std::invalid_argument("reference totals are empty");
    auto need = static_cast<std::uint64_t>(
        std::ceil(fraction * static_cast<double>(ref.total_target_bytes)));
    for (const auto& r : trace.records)
        if (r.target_volume >= need)
            return 100.0 * static_cast<double>(r.nontarget_volume) /
                   static_cast<double>(ref.total_nontarget_bytes);
    return std::nullopt;
}

// Effect of stopping early versus running the same crawl to completion:
// requests saved and targets lost, both as percentages of the full run.
// (0, 0) when the stop never fired.
struct EarlyStopReport {
    double saved_requests_pct = 0.0;
    double lost_targets_pct = 0.0;
};

inline EarlyStopReport early_stop_report(const CrawlTrace& stopped, const CrawlTrace& full) {
    EarlyStopReport rep;
    if (stopped.summary.stop_reason != "early_stop") return rep;
    if (full.summary.requests == 0) throw std::invalid_argument("full run made no requests");
    rep.saved_requests_pct = 100.0 * (1.0 - static_cast<double>(stopped.summary.requests) /
                                                static_cast<double>(full.summary.requests));
    if (full.summary.targets > 0)
        rep.lost_targets_pct = 100.0 * (1.0 - static_cast<double>(stopped.summary.targets) /
                                                  static_cast<double>(full.summary.targets));
    return rep;
}

// One evaluated run. The fraction milestones are keyed by integer percent;
// a present-but-empty value means the run never reached the milestone and
// serializes as the literal "unreached". Milestones that cannot be computed
// at all (zero reference totals) are left out of the maps and serialize as
// "n/a".
struct RunReport {
    static constexpr int kFractions[3] = {50, 90, 100};

    std::string site;
    std::string policy;
    std::uint64_t seed = 0;
    std::uint64_t steps = 0;
    std::uint64_t requests = 0;
    std::uint64_t targets = 0;
    double budget = 0.0;
    std::map<int, std::optional<double>> req_to;    // % of reference requests
    std::map<int, std::optional<double>> waste_at;  // % of non-target bytes
    double saved_requests_pct = 0.0;
    double lost_targets_pct = 0.0;
    std::string stop_reason;

    static std::string csv_header() {
        return "site,policy,seed,steps,requests,targets,budget,"
               "req_to_50,req_to_90,req_to_100,waste_at_50,waste_at_90,waste_at_100,"
               "saved_requests_pct,lost_targets_pct,stop_reason";
    }

    std::string csv_row() const {
        auto num = [](double v) {
            std::ostringstream o;
            o << std::setprecision(6) << std::fixed << v;
            return o.str();
        };
        auto cell = [&](const std::map<int, std::optional<double>>& m, int f) -> std::string {
            auto it = m.find(f);
            if (it == m.end()) return "n/a";
            if (!it->second) return "unreached";
            return num(*it->second);
        };
        std::ostringstream out;
        out << site << ',' << policy << ',' << seed << ',' << steps << ',' << requests << ','
            << targets << ',' << num(budget);
        for (int f : kFractions) out << ',' << cell(req_to, f);
        for (int f : kFractions) out << ',' << cell(waste_at, f);
        out << ',' << num(saved_requests_pct) << ',' << num(lost_targets_pct) << ','
            << stop_reason;
        return out.str();
    }

    nlohmann::ordered_json to_json() const {
        auto cell = [](const std::map<int, std::optional<double>>& m) {
            nlohmann::ordered_json out;
            for (const auto& [f, v] : m)
                out[std::to_string(f)] = v ? nlohmann::ordered_json(*v)
                                           : nlohmann::ordered_json(nullptr);
            return out;
        };
        nlohmann::ordered_json j;
        j["site"] = site;
        j["policy"] = policy;
        j["seed"] = seed;
        j["steps"] = steps;
        j["requests"] = requests;
        j["targets"] = targets;
        j["budget"] = budget;
        j["req_to"] = cell(req_to);
        j["waste_at"] = cell(waste_at);
        j["saved_requests_pct"] = saved_requests_pct;
        j["lost_targets_pct"] = lost_targets_pct;
        j["stop_reason"] = stop_reason;
        return j;
    }

    static RunReport from_csv_row(const std::string& row) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream in(row);
        while (std::getline(in, cell, ',')) cells.push_back(cell);
        if (cells.size() != 16) throw std::runtime_error("bad report row: " + row);
        RunReport r;
        auto opt = [&](const std::string& s, std::map<int, std::optional<double>>& m, int f) {
            if (s == "n/a") return;
            if (s == "unreached") m[f] = std::nullopt;
            else m[f] = std::stod(s);
        };
        r.site = cells[0];
        r.policy = cells[1];
        r.seed = std::stoull(cells[2]);
        r.steps = std::stoull(cells[3]);
        r.requests = std::stoull(cells[4]);
        r.targets = std::stoull(cells[5]);
        r.budget = std::stod(cells[6]);
        for (int i = 0; i < 3; ++i) opt(cells[7 + i], r.req_to, kFractions[i]);
        for (int i = 0; i < 3; ++i) opt(cells[10 + i], r.waste_at, kFractions[i]);
        r.saved_requests_pct = std::stod(cells[13]);
        r.lost_targets_pct = std::stod(cells[14]);
        r.stop_reason = cells[15];
        return r;
    }
};

inline RunReport evaluate_trace(const std::string& site, const CrawlTrace& trace,
                                const ReferenceTotals& ref) {
    RunReport r;
    r.site = site;
    r.policy = trace.summary.policy;
    r.seed = trace.summary.seed;
    r.steps = trace.summary.steps;
    r.requests = trace.summary.requests;
    r.targets = trace.summary.targets;
    r.budget = trace.summary.budget;
    r.stop_reason = trace.summary.stop_reason;
    for (int f : RunReport::kFractions) {
        double frac = f / 100.0;
        if (ref.total_targets > 0 && ref.total_requests > 0)
            r.req_to[f] = requests_to_fraction(trace, ref, frac);
        if (ref.total_target_bytes > 0 && ref.total_nontarget_bytes > 0)
            r.waste_at[f] = nontarget_volume_at_fraction(trace, ref, frac);
    }
    return r;
}

// Per-step curve for plotting: cumulative targets and budget against
// request count, one row per crawled page.
inline std::string plot_data_csv(const CrawlTrace& trace) {
    std::string out = "step,requests,budget,targets,target_volume,nontarget_volume,reward\n";
    std::ostringstream o;
    o << std::setprecision(6) << std::fixed;
    for (const auto& r : trace.records) {
        o.str("");
        o << r.step << ',' << r.requests << ',' << r.budget << ',' << r.targets << ','
          << r.target_volume << ',' << r.nontarget_volume << ',' << r.reward << '\n';
        out += o.str();
    }
    return out;
}

}  // namespace fcrawl
