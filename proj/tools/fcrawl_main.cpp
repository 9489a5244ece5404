#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fcrawl/baselines.hpp"
#include "fcrawl/config.hpp"
#include "fcrawl/engine.hpp"
#include "fcrawl/fixture.hpp"
#include "fcrawl/http_fetcher.hpp"
#include "fcrawl/metrics.hpp"
#include "fcrawl/set_cover.hpp"
#include "fcrawl/simulator.hpp"
#include "fcrawl/store.hpp"
#include "fcrawl/trace.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << text;
}

struct CrawlArgs {
    std::string seed_url;
    std::string policy = "sb";
    std::string mode = "replay";
    std::string classifier;  // "", "learned", "oracle"
    std::string config_path;
    std::string store_path;
    std::string manifest_path;
    std::string trace_path;
    std::string model_out;
    std::optional<double> budget;
    std::optional<std::uint64_t> seed;
    bool robots_on = false;   // force robots in replay mode
    bool robots_off = false;
};

fcrawl::PageClass oracle_class(const std::set<std::string>& targets, const std::string& url) {
    return targets.count(url) ? fcrawl::PageClass::Target : fcrawl::PageClass::Html;
}

int cmd_crawl(const CrawlArgs& a) {
    using namespace fcrawl;

    CrawlConfig cfg = a.config_path.empty() ? CrawlConfig{} : load_config(a.config_path);
    std::string store_path = a.store_path;
    apply_env_overrides(cfg, store_path);
    if (a.budget) cfg.budget = *a.budget;
    if (a.seed) cfg.seed = *a.seed;
    if (a.mode == "replay" && !a.robots_on) cfg.honor_robots = false;
    if (a.robots_off) cfg.honor_robots = false;
    cfg.validate();

    FetchMode mode;
    if (a.mode == "live") mode = FetchMode::Live;
    else if (a.mode == "record") mode = FetchMode::Record;
    else if (a.mode == "replay") mode = FetchMode::Replay;
    else if (a.mode == "semi") mode = FetchMode::SemiOnline;
    else throw ConfigError("mode must be live, record, replay or semi");
    if (mode != FetchMode::Live && store_path.empty())
        throw ConfigError("--store is required for mode " + a.mode);

    std::unique_ptr<HttpFetcher> live;
    if (mode != FetchMode::Replay)
        live = std::make_unique<HttpFetcher>(cfg.user_agent, Pacer(cfg.politeness_ms));
    std::unique_ptr<PageStore> store;
    if (!store_path.empty() && mode != FetchMode::Live)
        store = std::make_unique<PageStore>(store_path);
    StoreFetcher fetcher(mode, store.get(), live.get());

    json manifest;
    std::set<std::string> targets;
    std::map<std::string, double> benefit;
    if (!a.manifest_path.empty()) {
        manifest = load_json(a.manifest_path);
        for (const auto& t : manifest.at("targets")) targets.insert(t.get<std::string>());
        for (const auto& p : manifest.at("pages"))
            benefit[p.at("url").get<std::string>()] =
                p.at("target_links").get<double>();
    }

    bool want_oracle_clf = a.classifier == "oracle" || a.policy == "sb-oracle" ||
                           a.policy == "omniscient";
    if (want_oracle_clf && targets.empty() && a.policy != "omniscient")
        throw ConfigError("--manifest with a target list is required for the oracle classifier");

    std::unique_ptr<LinkClassifier> clf;
    LearnedLinkClassifier* learned = nullptr;
    if (want_oracle_clf) {
        clf = std::make_unique<OracleLinkClassifier>(
            [targets](const std::string& u) { return oracle_class(targets, u); });
    } else {
        auto l = std::make_unique<LearnedLinkClassifier>(cfg.b, cfg.target_mimes);
        learned = l.get();
        clf = std::move(l);
    }

    std::unique_ptr<FrontierPolicy> policy;
    if (a.policy == "sb" || a.policy == "sb-oracle") {
        auto p = std::make_unique<SleepingBanditPolicy>(cfg);
        p->set_name(a.policy);
        policy = std::move(p);
    } else if (a.policy == "bfs") {
        policy = std::make_unique<BfsPolicy>();
    } else if (a.policy == "dfs") {
        policy = std::make_unique<DfsPolicy>();
    } else if (a.policy == "random") {
        policy = std::make_unique<RandomPolicy>();
    } else if (a.policy == "omniscient") {
        if (targets.empty())
            throw ConfigError("--manifest with a target list is required for omniscient");
        policy = std::make_unique<OmniscientPolicy>(
            std::vector<std::string>(targets.begin(), targets.end()));
    } else if (a.policy == "focused") {
        policy = std::make_unique<FocusedPolicy>(cfg.focused_retrain_every);
    } else if (a.policy == "tpoff") {
        if (benefit.empty())
            throw ConfigError("--manifest with per-page target_links is required for tpoff");
        policy = std::make_unique<TpoffPolicy>(cfg, [benefit](const std::string& u) {
            auto it = benefit.find(u);
            return it == benefit.end() ? 0.0 : it->second;
        });
    } else {
        throw ConfigError("unknown policy: " + a.policy);
    }

    CrawlRun run(cfg, fetcher, *policy, *clf);
    CrawlTrace trace = run.run(a.seed_url);
    if (!a.trace_path.empty()) trace.save(a.trace_path);
    if (!a.model_out.empty() && learned) {
        std::ofstream out(a.model_out);
        if (!out) throw std::runtime_error("cannot write model: " + a.model_out);
        learned->impl().model().dump(out);
    }

    ordered_json summary;
    summary["policy"] = trace.summary.policy;
    summary["steps"] = trace.summary.steps;
    summary["requests"] = trace.summary.requests;
    summary["targets"] = trace.summary.targets;
    summary["budget"] = trace.summary.budget;
    summary["stop_reason"] = trace.summary.stop_reason;
    std::cout << summary.dump() << "\n";
    return 0;
}

int cmd_generate_site(const std::string& spec_path, const std::string& store_path,
                      const std::string& manifest_path) {
    using namespace fcrawl;
    SiteSpec spec = load_json(spec_path).get<SiteSpec>();
    GeneratedSite site = generate_site(spec);
    if (!store_path.empty()) {
        PageStore store(store_path);
        export_site(site, store);
    }
    ordered_json manifest = site.manifest();
    if (!manifest_path.empty()) write_text(manifest_path, manifest.dump(2) + "\n");
    std::cout << manifest["totals"].dump() << "\n";
    return 0;
}

// Mirror a live site into the store: exhaustive BFS in record mode, then a
// ground-truth manifest recomputed from the stored pages.
int cmd_replicate(const std::string& seed_url, const std::string& config_path,
                  const std::string& store_path, const std::string& manifest_path,
                  const std::string& trace_path, bool robots_off) {
    using namespace fcrawl;
    CrawlConfig cfg = config_path.empty() ? CrawlConfig{} : load_config(config_path);
    std::string store = store_path;
    apply_env_overrides(cfg, store);
    if (store.empty()) throw ConfigError("--store is required");
    if (robots_off) cfg.honor_robots = false;
    cfg.budget = std::numeric_limits<double>::infinity();
    cfg.early_stop.enabled = false;

    HttpFetcher live(cfg.user_agent, Pacer(cfg.politeness_ms));
    PageStore page_store(store);
    // semi-online: pages already in the store are served from it, so an
    // interrupted replication run can resume without refetching
    StoreFetcher fetcher(FetchMode::SemiOnline, &page_store, &live);

    // every link is queued as HTML so each page costs exactly one GET; the
    // reference totals then mean "requests of a full crawl"
    OracleLinkClassifier all_html([](const std::string&) { return PageClass::Html; });
    BfsPolicy policy;
    CrawlRun run(cfg, fetcher, policy, all_html);
    CrawlTrace trace = run.run(seed_url);
    if (!trace_path.empty()) trace.save(trace_path);

    auto seed = normalize_url(seed_url);
    ordered_json manifest =
        manifest_from_store(page_store, "replica", seed.value_or(seed_url), cfg.target_mimes);
    if (!manifest_path.empty()) write_text(manifest_path, manifest.dump(2) + "\n");
    std::cout << manifest["totals"].dump() << "\n";
    return 0;
}

int cmd_evaluate(const std::vector<std::string>& trace_paths, const std::string& manifest_path,
                 const std::string& reference_trace, const std::string& full_trace,
                 const std::string& site, bool as_json, const std::string& out_path) {
    using namespace fcrawl;
    ReferenceTotals ref;
    std::string site_name = site;
    if (!manifest_path.empty()) {
        json manifest = load_json(manifest_path);
        ref = ReferenceTotals::from_manifest(manifest);
        if (site_name.empty()) site_name = manifest.value("site_id", "site");
    } else if (!reference_trace.empty()) {
        ref = ReferenceTotals::from_trace(CrawlTrace::load(reference_trace));
    } else {
        throw ConfigError("--manifest or --reference-trace is required");
    }
    if (site_name.empty()) site_name = "site";
    if (!full_trace.empty() && trace_paths.size() != 1)
        throw ConfigError("--full pairs with exactly one trace");

    std::vector<RunReport> reports;
    for (const auto& p : trace_paths) {
        CrawlTrace t = CrawlTrace::load(p);
        RunReport r = evaluate_trace(site_name, t, ref);
        if (!full_trace.empty()) {
            EarlyStopReport es = early_stop_report(t, CrawlTrace::load(full_trace));
            r.saved_requests_pct = es.saved_requests_pct;
            r.lost_targets_pct = es.lost_targets_pct;
        }
        reports.push_back(std::move(r));
    }

    std::string text;
    if (as_json) {
        ordered_json arr = ordered_json::array();
        for (const auto& r : reports) arr.push_back(r.to_json());
        text = arr.dump(2) + "\n";
    } else {
        text = RunReport::csv_header() + "\n";
        for (const auto& r : reports) text += r.csv_row() + "\n";
    }
    if (out_path.empty()) std::cout << text;
    else write_text(out_path, text);
    return 0;
}

int cmd_oracle(const std::string& instance_path, const std::string& graph_path) {
    using namespace fcrawl;
    WebsiteGraph graph;
    std::vector<std::string> targets;
    ordered_json out;
    if (!instance_path.empty()) {
        json j = load_json(instance_path);
        SetCoverInstance inst;
        inst.m = j.at("m").get<std::size_t>();
        inst.sets = j.at("sets").get<std::vector<std::vector<std::size_t>>>();
        inst.budget = j.value("budget", std::size_t{0});
        ReducedCrawl red = build_reduction(inst);
        graph = std::move(red.graph);
        targets = std::move(red.targets);
        out["fetch_budget"] = red.fetch_budget;
        if (auto cover = brute_force_min_cover(inst)) out["min_cover"] = *cover;
    } else if (!graph_path.empty()) {
        json j = load_json(graph_path);
        for (const auto& n : j.at("nodes")) {
            if (n.is_string()) graph.add_node(n.get<std::string>());
            else graph.add_node(n.at("url").get<std::string>(), n.value("weight", 1.0));
        }
        for (const auto& e : j.at("edges"))
            graph.add_edge(e.at(0).get<std::string>(), e.at(1).get<std::string>());
        graph.root = j.at("root").get<std::string>();
        targets = j.at("targets").get<std::vector<std::string>>();
    } else {
        throw ConfigError("--instance or --graph is required");
    }
    OptimalCrawl best = optimal_crawl(graph, targets);
    out["cost"] = best.cost;
    out["order"] = best.order;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_plot_data(const std::string& trace_path, const std::string& out_path) {
    using namespace fcrawl;
    std::string csv = plot_data_csv(CrawlTrace::load(trace_path));
    if (out_path.empty()) std::cout << csv;
    else write_text(out_path, csv);
    return 0;
}

int cmd_verify_fixture(const std::string& store_path, const std::string& manifest_path) {
    using namespace fcrawl;
    PageStore store(store_path);
    auto diffs = verify_fixture(store, load_json(manifest_path));
    if (diffs.empty()) {
        std::cout << "ok\n";
        return 0;
    }
    for (const auto& d : diffs) std::cout << d << "\n";
    std::cerr << diffs.size() << " mismatch(es)\n";
    return 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"focused crawler with tag-path bandit frontier"};
    app.require_subcommand(1);

    CrawlArgs ca;
    auto* crawl = app.add_subcommand("crawl", "run one crawl from a seed URL");
    crawl->add_option("seed", ca.seed_url, "seed URL")->required();
    crawl->add_option("--policy", ca.policy,
                      "sb | sb-oracle | random | bfs | dfs | omniscient | focused | tpoff");
    crawl->add_option("--mode", ca.mode, "live | record | replay | semi");
    crawl->add_option("--classifier", ca.classifier, "learned | oracle");
    crawl->add_option("--config", ca.config_path, "config JSON");
    crawl->add_option("--store", ca.store_path, "page store directory");
    crawl->add_option("--manifest", ca.manifest_path, "ground-truth manifest JSON");
    crawl->add_option("--trace", ca.trace_path, "write the crawl trace here");
    crawl->add_option("--model-out", ca.model_out, "dump the trained URL model here");
    double budget_v = 0;
    std::uint64_t seed_v = 0;
    auto* bopt = crawl->add_option("--budget", budget_v, "budget override");
    auto* sopt = crawl->add_option("--seed-value", seed_v, "RNG seed override");
    crawl->add_flag("--robots", ca.robots_on, "honor robots.txt even in replay mode");
    crawl->add_flag("--no-robots", ca.robots_off, "ignore robots.txt");

    std::string g_spec, g_store, g_manifest;
    auto* gen = app.add_subcommand("generate-site", "build a synthetic site");
    gen->add_option("--spec", g_spec, "site spec JSON")->required();
    gen->add_option("--store", g_store, "export the site to this page store");
    gen->add_option("--manifest", g_manifest, "write the ground-truth manifest here");

    std::string r_seed, r_config, r_store, r_manifest, r_trace;
    bool r_no_robots = false;
    auto* rep = app.add_subcommand("replicate", "mirror a site into a local store (BFS record)");
    rep->add_option("seed", r_seed, "seed URL")->required();
    rep->add_option("--config", r_config, "config JSON");
    rep->add_option("--store", r_store, "page store directory");
    rep->add_option("--manifest", r_manifest, "write the recomputed manifest here");
    rep->add_option("--trace", r_trace, "write the reference trace here");
    rep->add_flag("--no-robots", r_no_robots, "ignore robots.txt");

    std::vector<std::string> e_traces;
    std::string e_manifest, e_ref_trace, e_full, e_site, e_out;
    bool e_json = false;
    auto* ev = app.add_subcommand("evaluate", "traces -> run report CSV/JSON");
    ev->add_option("traces", e_traces, "trace files")->required();
    ev->add_option("--manifest", e_manifest, "ground-truth manifest JSON");
    ev->add_option("--reference-trace", e_ref_trace, "full reference crawl trace");
    ev->add_option("--full", e_full, "paired no-early-stop trace (fills saved/lost)");
    ev->add_option("--site", e_site, "site id for the report");
    ev->add_option("--out", e_out, "write the report here instead of stdout");
    ev->add_flag("--json", e_json, "emit JSON instead of CSV");

    std::string o_instance, o_graph;
    auto* orc = app.add_subcommand("oracle", "brute-force optimal crawl on a tiny graph");
    orc->add_option("--instance", o_instance, "set-cover instance JSON (m, sets, budget)");
    orc->add_option("--graph", o_graph, "explicit graph JSON (root, nodes, edges, targets)");

    std::string p_trace, p_out;
    auto* plot = app.add_subcommand("plot-data", "per-step crawl curves as CSV");
    plot->add_option("--trace", p_trace, "trace file")->required();
    plot->add_option("--out", p_out, "write CSV here instead of stdout");

    std::string v_store, v_manifest;
    auto* ver = app.add_subcommand("verify-fixture", "recompute a fixture manifest and diff");
    ver->add_option("--store", v_store, "page store directory")->required();
    ver->add_option("--manifest", v_manifest, "manifest JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (bopt->count()) ca.budget = budget_v;
        if (sopt->count()) ca.seed = seed_v;
        if (crawl->parsed()) return cmd_crawl(ca);
        if (gen->parsed()) return cmd_generate_site(g_spec, g_store, g_manifest);
        if (rep->parsed())
            return cmd_replicate(r_seed, r_config, r_store, r_manifest, r_trace, r_no_robots);
        if (ev->parsed())
            return cmd_evaluate(e_traces, e_manifest, e_ref_trace, e_full, e_site, e_json, e_out);
        if (orc->parsed()) return cmd_oracle(o_instance, o_graph);
        if (plot->parsed()) return cmd_plot_data(p_trace, p_out);
        if (ver->parsed()) return cmd_verify_fixture(v_store, v_manifest);
    } catch (const fcrawl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
