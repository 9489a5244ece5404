#include <catch2/catch_amalgamated.hpp>

#include <fcrawl/trace.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CmdResult {
    int code = -1;
    std::string out;
};

CmdResult run_cmd(const std::string& args) {
    std::string cmd = std::string(FCRAWL_BIN) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    CmdResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int rc = pclose(p);
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("fcrawl_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    REQUIRE(out.good());
    out << text;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("generate, verify, crawl, and evaluate chain together") {
    TempDir td;
    fs::path spec = td.path / "spec.json";
    fs::path store = td.path / "store";
    fs::path manifest = td.path / "manifest.json";
    write_file(spec, R"({
        "site_id": "cli",
        "seed": 3,
        "host": "cli.test",
        "wings": [
            {"name": "a", "pages": 12, "catalog_rate": 0.4, "targets_per_catalog": 2},
            {"name": "b", "pages": 8, "catalog_rate": 0.3, "targets_per_catalog": 2,
             "nav_template": "div#side ul li a"}
        ],
        "page_bytes_min": 500, "page_bytes_max": 800,
        "target_bytes_min": 300, "target_bytes_max": 600,
        "redirect_stubs": 1, "dead_links": 1, "scatter_targets": 1
    })");

    auto gen = run_cmd("generate-site --spec " + spec.string() + " --store " + store.string() +
                       " --manifest " + manifest.string());
    CAPTURE(gen.out);
    REQUIRE(gen.code == 0);
    REQUIRE(fs::exists(store / "journal.jsonl"));
    json m = json::parse(read_file(manifest));
    auto total_targets = m["totals"]["targets"].get<std::uint64_t>();
    CHECK(total_targets > 0);

    auto ok = run_cmd("verify-fixture --store " + store.string() + " --manifest " +
                      manifest.string());
    CAPTURE(ok.out);
    CHECK(ok.code == 0);
    CHECK(ok.out.find("ok") != std::string::npos);

    // a tampered manifest must fail verification with a named diff
    json bad = m;
    bad["pages"][0]["body_size"] = bad["pages"][0]["body_size"].get<std::uint64_t>() + 7;
    fs::path tampered = td.path / "tampered.json";
    write_file(tampered, bad.dump());
    auto fail = run_cmd("verify-fixture --store " + store.string() + " --manifest " +
                        tampered.string());
    CHECK(fail.code == 3);
    CHECK(fail.out.find("body_size") != std::string::npos);

    // replay crawls are deterministic byte for byte
    fs::path t1 = td.path / "sb1.jsonl";
    fs::path t2 = td.path / "sb2.jsonl";
    std::string crawl_base = "crawl https://cli.test/ --mode replay --classifier oracle"
                             " --no-robots --seed-value 5 --store " +
                             store.string() + " --manifest " + manifest.string();
    auto c1 = run_cmd(crawl_base + " --policy sb --trace " + t1.string());
    CAPTURE(c1.out);
    REQUIRE(c1.code == 0);
    auto c2 = run_cmd(crawl_base + " --policy sb --trace " + t2.string());
    REQUIRE(c2.code == 0);
    CHECK(read_file(t1) == read_file(t2));

    fcrawl::CrawlTrace trace = fcrawl::CrawlTrace::load(t1.string());
    CHECK(trace.summary.policy == "sb");
    CHECK(trace.summary.targets == total_targets);  // replay covers the whole site
    CHECK(trace.summary.stop_reason == "frontier_exhausted");

    fs::path t3 = td.path / "bfs.jsonl";
    auto c3 = run_cmd(crawl_base + " --policy bfs --trace " + t3.string());
    REQUIRE(c3.code == 0);

    // evaluate both traces against the manifest
    fs::path report = td.path / "report.csv";
    auto ev = run_cmd("evaluate " + t1.string() + " " + t3.string() + " --manifest " +
                      manifest.string() + " --out " + report.string());
    CAPTURE(ev.out);
    REQUIRE(ev.code == 0);
    std::string csv = read_file(report);
    CHECK(csv.rfind("site,policy,seed,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 rows
    CHECK(csv.find(",sb,") != std::string::npos);
    CHECK(csv.find(",bfs,") != std::string::npos);

    // per-step plotting data
    fs::path plot = td.path / "plot.csv";
    auto pl = run_cmd("plot-data --trace " + t1.string() + " --out " + plot.string());
    REQUIRE(pl.code == 0);
    std::string plot_csv = read_file(plot);
    CHECK(plot_csv.rfind("step,requests,budget,", 0) == 0);
    CHECK(std::count(plot_csv.begin(), plot_csv.end(), '\n') ==
          static_cast<long>(trace.records.size()) + 1);

    // a learned-classifier crawl can persist its URL model
    fs::path model = td.path / "model.txt";
    auto cm = run_cmd("crawl https://cli.test/ --mode replay --classifier learned"
                      " --no-robots --seed-value 5 --store " +
                      store.string() + " --policy bfs --trace " +
                      (td.path / "learned.jsonl").string() + " --model-out " + model.string());
    CAPTURE(cm.out);
    REQUIRE(cm.code == 0);
    CHECK(fs::file_size(model) > 0);
}

TEST_CASE("replicate rebuilds the reference manifest from the stored site") {
    TempDir td;
    fs::path spec = td.path / "spec.json";
    fs::path store = td.path / "store";
    fs::path manifest = td.path / "manifest.json";
    write_file(spec, R"({
        "site_id": "rep",
        "seed": 9,
        "host": "rep.test",
        "wings": [{"name": "a", "pages": 10, "catalog_rate": 0.5, "targets_per_catalog": 2}],
        "page_bytes_min": 500, "page_bytes_max": 700,
        "target_bytes_min": 300, "target_bytes_max": 500,
        "redirect_stubs": 1
    })");
    REQUIRE(run_cmd("generate-site --spec " + spec.string() + " --store " + store.string() +
                    " --manifest " + manifest.string())
                .code == 0);

    fs::path replica = td.path / "replica.json";
    auto rep = run_cmd("replicate https://rep.test/ --store " + store.string() +
                       " --manifest " + replica.string() + " --no-robots");
    CAPTURE(rep.out);
    REQUIRE(rep.code == 0);

    json truth = json::parse(read_file(manifest));
    json walked = json::parse(read_file(replica));
    CHECK(walked["totals"] == truth["totals"]);
    CHECK(walked["pages"].size() == truth["pages"].size());
    // generator lists targets in creation order, the store walk sorts by URL
    std::set<std::string> walked_targets(walked["targets"].begin(), walked["targets"].end());
    std::set<std::string> truth_targets(truth["targets"].begin(), truth["targets"].end());
    CHECK(walked_targets == truth_targets);
}

TEST_CASE("the optimal-crawl oracle solves a set-cover instance") {
    TempDir td;
    fs::path inst = td.path / "inst.json";
    write_file(inst, R"({"m": 3, "sets": [[0, 1], [1, 2], [2]], "budget": 2})");
    auto r = run_cmd("oracle --instance " + inst.string());
    CAPTURE(r.out);
    REQUIRE(r.code == 0);
    json out = json::parse(r.out);
    CHECK(out["min_cover"].get<std::size_t>() == 2);
    CHECK(out["cost"].get<double>() == 6.0);  // root + 2 subset pages + 3 elements
    CHECK(out["fetch_budget"].get<std::uint64_t>() == 6);
    CHECK(out["order"][0].get<std::string>() == "https://sc.test/root");
    CHECK(out["order"].size() == 6);
}

TEST_CASE("exit codes distinguish usage, config, and runtime failures") {
    CHECK(run_cmd("--help").code == 0);
    CHECK(run_cmd("crawl --help").code == 0);

    CHECK(run_cmd("frobnicate").code == 1);           // unknown subcommand
    CHECK(run_cmd("crawl").code == 1);                // missing required seed
    CHECK(run_cmd("plot-data --frob x").code == 1);   // unknown flag

    TempDir td;
    fs::path bad_cfg = td.path / "bad.json";
    write_file(bad_cfg, R"({"theta": 9.0})");  // similarity threshold out of range
    auto cfg_err = run_cmd("crawl https://x.test/ --mode replay --store " +
                           (td.path / "s").string() + " --config " + bad_cfg.string());
    CHECK(cfg_err.code == 2);
    CHECK(cfg_err.out.find("config error") != std::string::npos);

    auto no_store = run_cmd("crawl https://x.test/ --mode replay");
    CHECK(no_store.code == 2);

    auto missing = run_cmd("plot-data --trace " + (td.path / "nope.jsonl").string());
    CHECK(missing.code == 3);
}
