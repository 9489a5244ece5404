#pragma once

#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fcrawl/fetch.hpp"
#include "fcrawl/graph.hpp"
#include "fcrawl/mime.hpp"
#include "fcrawl/rng.hpp"
#include "fcrawl/store.hpp"

namespace fcrawl {

struct WingSpec {
    std::string name = "a";
    std::uint64_t pages = 100;
    unsigned branching = 6;            // soft cap on nav children per page
    double catalog_rate = 0.0;         // fraction of pages listing targets
    unsigned targets_per_catalog = 4;
    std::string nav_template = "div#nav ul.menu li a";
    std::string catalog_template = "div.datasets table tr td a";
};

struct SiteSpec {
    std::string site_id = "site";
    std::uint64_t seed = 1;
    std::string host = "sim.test";
    std::vector<WingSpec> wings;
    std::string target_mime = "text/csv";
    std::uint64_t page_bytes_min = 700, page_bytes_max = 2200;
    std::uint64_t target_bytes_min = 900, target_bytes_max = 4200;
    unsigned redirect_stubs = 0;   // /r<j> pages answering 301
    unsigned dead_links = 0;       // links to 404 pages
    unsigned offsite_links = 0;    // out-of-scope hrefs that must be ignored
    unsigned asset_links = 0;      // extensionless pages served as image/png
    // hypothesis-violating targets: scattered over random pages, each under
    // a unique one-off tag path, so path grouping carries no signal for them
    unsigned scatter_targets = 0;
    std::string root_template = "div#root ul.wings li a";
};

template <typename Json>
void to_json(Json& j, const WingSpec& w) {
    j = {{"name", w.name},
         {"pages", w.pages},
         {"branching", w.branching},
         {"catalog_rate", w.catalog_rate},
         {"targets_per_catalog", w.targets_per_catalog},
         {"nav_template", w.nav_template},
         {"catalog_template", w.catalog_template}};
}

template <typename Json>
void from_json(const Json& j, WingSpec& w) {
    w.name = j.value("name", w.name);
    w.pages = j.value("pages", w.pages);
    w.branching = j.value("branching", w.branching);
    w.catalog_rate = j.value("catalog_rate", w.catalog_rate);
    w.targets_per_catalog = j.value("targets_per_catalog", w.targets_per_catalog);
    w.nav_template = j.value("nav_template", w.nav_template);
    w.catalog_template = j.value("catalog_template", w.catalog_template);
}

template <typename Json>
void to_json(Json& j, const SiteSpec& s) {
    j = {{"site_id", s.site_id},
         {"seed", s.seed},
         {"host", s.host},
         {"wings", s.wings},
         {"target_mime", s.target_mime},
         {"page_bytes_min", s.page_bytes_min},
         {"page_bytes_max", s.page_bytes_max},
         {"target_bytes_min", s.target_bytes_min},
         {"target_bytes_max", s.target_bytes_max},
         {"redirect_stubs", s.redirect_stubs},
         {"dead_links", s.dead_links},
         {"offsite_links", s.offsite_links},
         {"asset_links", s.asset_links},
         {"scatter_targets", s.scatter_targets},
         {"root_template", s.root_template}};
}

template <typename Json>
void from_json(const Json& j, SiteSpec& s) {
    s.site_id = j.value("site_id", s.site_id);
    s.seed = j.value("seed", s.seed);
    s.host = j.value("host", s.host);
    if (j.contains("wings")) s.wings = j.at("wings").template get<std::vector<WingSpec>>();
    s.target_mime = j.value("target_mime", s.target_mime);
    s.page_bytes_min = j.value("page_bytes_min", s.page_bytes_min);
    s.page_bytes_max = j.value("page_bytes_max", s.page_bytes_max);
    s.target_bytes_min = j.value("target_bytes_min", s.target_bytes_min);
    s.target_bytes_max = j.value("target_bytes_max", s.target_bytes_max);
    s.redirect_stubs = j.value("redirect_stubs", s.redirect_stubs);
    s.dead_links = j.value("dead_links", s.dead_links);
    s.offsite_links = j.value("offsite_links", s.offsite_links);
    s.asset_links = j.value("asset_links", s.asset_links);
    s.scatter_targets = j.value("scatter_targets", s.scatter_targets);
    s.root_template = j.value("root_template", s.root_template);
}

struct SimPage {
    int status = 200;
    std::string mime;       // normalized
    std::string body;
    std::string location;   // for 3xx
};

struct GeneratedSite {
    SiteSpec spec;
    std::string root;
    std::map<std::string, SimPage> pages;   // every fetchable URL
    WebsiteGraph graph;
    std::vector<std::string> targets;       // generation order
    std::map<std::string, std::uint64_t> target_links;  // html page -> outgoing target links
    std::uint64_t total_target_bytes = 0;
    std::uint64_t total_nontarget_bytes = 0;

    std::uint64_t total_requests() const { return pages.size(); }

    nlohmann::ordered_json manifest() const {
        nlohmann::ordered_json j;
        j["site_id"] = spec.site_id;
        j["seed"] = spec.seed;
        j["host"] = spec.host;
        j["root"] = root;
        j["spec"] = spec;
        nlohmann::ordered_json plist = nlohmann::ordered_json::array();
        for (const auto& [url, p] : pages) {
            nlohmann::ordered_json e;
            e["url"] = url;
            e["status"] = p.status;
            e["mime"] = p.mime;
            e["body_size"] = p.body.size();
            auto it = target_links.find(url);
            e["target_links"] = it == target_links.end() ? 0 : it->second;
            plist.push_back(std::move(e));
        }
        j["pages"] = std::move(plist);
        j["targets"] = targets;
        j["totals"] = {{"requests", total_requests()},
                       {"targets", targets.size()},
                       {"target_bytes", total_target_bytes},
                       {"nontarget_bytes", total_nontarget_bytes}};
        return j;
    }
};

namespace simdetail {

struct Elem {
    std::string name, id;
    std::vector<std::string> classes;
};

// "div#nav ul.menu li a" -> element chain
inline std::vector<Elem> parse_template(const std::string& tpl) {
    std::vector<Elem> out;
    std::istringstream in(tpl);
    std::string tok;
    while (in >> tok) {
        Elem e;
        std::size_t i = 0;
        while (i < tok.size() && tok[i] != '#' && tok[i] != '.') e.name += tok[i++];
        while (i < tok.size()) {
            char kind = tok[i++];
            std::string v;
            while (i < tok.size() && tok[i] != '#' && tok[i] != '.') v += tok[i++];
            if (kind == '#') e.id = v;
            else e.classes.push_back(v);
        }
        out.push_back(std::move(e));
    }
    if (out.size() < 2 || out.back().name != "a")
        throw std::invalid_argument("link template must end in an anchor: " + tpl);
    return out;
}

inline std::string open_tag(const Elem& e) {
    std::string out = "<" + e.name;
    if (!e.id.empty()) out += " id=\"" + e.id + "\"";
    if (!e.classes.empty()) {
        out += " class=\"";
        for (std::size_t i = 0; i < e.classes.size(); ++i) {
            if (i) out += ' ';
            out += e.classes[i];
        }
        out += "\"";
    }
    return out + ">";
}

// render a link block: outer containers, then one per-link wrapper per href
inline std::string render_links(const std::string& tpl,
                                const std::vector<std::pair<std::string, std::string>>& links) {
    if (links.empty()) return "";
    auto chain = parse_template(tpl);
    std::string out;
    std::size_t outer = chain.size() >= 2 ? chain.size() - 2 : 0;
    for (std::size_t i = 0; i < outer; ++i) out += open_tag(chain[i]);
    const Elem& wrapper = chain[chain.size() - 2];
    const Elem& anchor = chain.back();
    for (const auto& [href, text] : links) {
        out += open_tag(wrapper);
        std::string a = open_tag(anchor);
        a.insert(a.size() - 1, " href=\"" + href + "\"");
        out += a + text + "</" + anchor.name + ">";
        out += "</" + wrapper.name + ">";
    }
    for (std::size_t i = outer; i > 0; --i) out += "</" + chain[i - 1].name + ">";
    return out;
}

inline const char* kWords[] = {"data",   "archive", "report", "survey", "record",
                               "annual", "public",  "open",   "series", "index"};

inline std::string filler(Rng& rng, std::uint64_t bytes) {
    std::string out;
    while (out.size() < bytes) {
        out += "<p>";
        for (int i = 0; i < 12 && out.size() < bytes; ++i) {
            out += kWords[rng.below(10)];
            out += ' ';
        }
        out += "</p>";
    }
    return out;
}

inline std::string csv_body(Rng& rng, std::uint64_t bytes) {
    std::string out = "id,name,value\n";
    std::uint64_t row = 0;
    while (out.size() < bytes) {
        out += std::to_string(row++);
        out += ',';
        out += kWords[rng.below(10)];
        out += ',';
        out += std::to_string(rng.below(100000));
        out += '\n';
    }
    return out;
}

}  // namespace simdetail

// Deterministic synthetic website: wings of HTML pages linked in a random
// tree under per-wing nav templates; catalog pages list target documents
// under a separate template. Optional redirect stubs, dead links, offsite
// links and blocklisted-MIME assets exercise the engine's edge paths.
inline GeneratedSite generate_site(const SiteSpec& spec) {
    if (spec.wings.empty()) throw std::invalid_argument("site spec needs at least one wing");
    for (const auto& w : spec.wings) {
        if (w.pages == 0) throw std::invalid_argument("wing must have pages");
        if (w.catalog_rate < 0 || w.catalog_rate > 1)
            throw std::invalid_argument("catalog_rate must be in [0,1]");
    }
    if (spec.page_bytes_max < spec.page_bytes_min ||
        spec.target_bytes_max < spec.target_bytes_min)
        throw std::invalid_argument("byte ranges must satisfy min <= max");

    Rng rng(spec.seed);
    GeneratedSite site;
    site.spec = spec;
    site.root = "https://" + spec.host + "/";

    struct PageDraft {
        std::string url;
        const WingSpec* wing;
        std::vector<std::pair<std::string, std::string>> nav;      // href, text
        std::vector<std::pair<std::string, std::string>> catalog;  // href, text
        std::string extra_html;                                    // scatter links
        std::vector<std::string> extra_targets;
        unsigned children = 0;
    };
    std::vector<PageDraft> drafts;
    std::map<std::string, std::size_t> draft_idx;
    std::vector<std::pair<std::string, std::string>> root_links;

    auto add_draft = [&](std::string url, const WingSpec* wing) {
        draft_idx[url] = drafts.size();
        drafts.push_back({std::move(url), wing, {}, {}, {}, {}, 0});
    };

    std::uint64_t target_counter = 0;
    for (const auto& wing : spec.wings) {
        std::size_t first = drafts.size();
        for (std::uint64_t k = 0; k < wing.pages; ++k) {
            std::string url = "https://" + spec.host + "/" + wing.name + "/p" + std::to_string(k);
            add_draft(url, &wing);
            if (k == 0) {
                root_links.emplace_back(url, wing.name + " section");
            } else {
                // attach under a random earlier page of the same wing,
                // preferring ones with spare branching capacity
                std::size_t parent = first + rng.below(k);
                for (int tries = 0; tries < 4 && drafts[parent].children >= wing.branching;
                     ++tries)
                    parent = first + rng.below(k);
                drafts[parent].nav.emplace_back(url, "page " + std::to_string(k));
                drafts[parent].children += 1;
            }
        }
        for (std::uint64_t k = 0; k < wing.pages; ++k) {
            if (rng.uniform01() >= wing.catalog_rate) continue;
            auto& d = drafts[first + k];
            for (unsigned j = 0; j < wing.targets_per_catalog; ++j) {
                std::string turl = "https://" + spec.host + "/" + wing.name + "/data/f" +
                                   std::to_string(target_counter++) + ".csv";
                d.catalog.emplace_back(turl, "dataset " + std::to_string(target_counter));
                site.targets.push_back(turl);
            }
        }
    }

    // edge-path extras, attached to random html pages
    auto random_draft = [&]() -> PageDraft& { return drafts[rng.below(drafts.size())]; };
    std::vector<std::pair<std::string, SimPage>> extras;
    for (unsigned j = 0; j < spec.redirect_stubs; ++j) {
        std::string stub = "https://" + spec.host + "/r" + std::to_string(j);
        std::string dest = drafts[rng.below(drafts.size())].url;
        random_draft().nav.emplace_back(stub, "shortcut " + std::to_string(j));
        SimPage p;
        p.status = 301;
        p.mime = "text/html";
        p.location = dest;
        extras.emplace_back(stub, std::move(p));
    }
    for (unsigned j = 0; j < spec.dead_links; ++j) {
        std::string dead = "https://" + spec.host + "/dead" + std::to_string(j);
        random_draft().nav.emplace_back(dead, "gone " + std::to_string(j));
        SimPage p;
        p.status = 404;
        p.mime = "text/html";
        p.body = "<html><body>not found</body></html>";
        extras.emplace_back(dead, std::move(p));
    }
    for (unsigned j = 0; j < spec.offsite_links; ++j)
        random_draft().nav.emplace_back("https://elsewhere.example/x" + std::to_string(j),
                                        "external " + std::to_string(j));
    for (unsigned j = 0; j < spec.asset_links; ++j) {
        std::string asset = "https://" + spec.host + "/asset" + std::to_string(j);
        random_draft().nav.emplace_back(asset, "media " + std::to_string(j));
        SimPage p;
        p.status = 200;
        p.mime = "image/png";
        p.body = std::string(512, 'P');
        extras.emplace_back(asset, std::move(p));
    }
    for (unsigned j = 0; j < spec.scatter_targets; ++j) {
        std::string turl =
            "https://" + spec.host + "/scatter/f" + std::to_string(target_counter++) + ".csv";
        site.targets.push_back(turl);
        auto rand_cls = [&] {
            std::string c;
            for (int i = 0; i < 6; ++i) c += static_cast<char>('a' + rng.below(26));
            return c;
        };
        std::string tpl = "div." + rand_cls() + " span." + rand_cls() + " a";
        auto& d = random_draft();
        d.extra_html +=
            simdetail::render_links(tpl, {{turl, "file " + std::to_string(target_counter)}});
        d.extra_targets.push_back(turl);
    }

    // materialize html pages
    auto build_page = [&](const PageDraft& d, const std::string& nav_tpl,
                          const std::string& cat_tpl) {
        std::string body = "<html><head><title>" + d.url + "</title></head><body>";
        body += simdetail::render_links(nav_tpl, d.nav);
        body += simdetail::render_links(cat_tpl, d.catalog);
        body += d.extra_html;
        std::uint64_t want =
            spec.page_bytes_min + rng.below(spec.page_bytes_max - spec.page_bytes_min + 1);
        if (body.size() < want) body += simdetail::filler(rng, want - body.size());
        body += "</body></html>";
        SimPage p;
        p.status = 200;
        p.mime = "text/html";
        p.body = std::move(body);
        return p;
    };

    SimPage root_page;
    {
        PageDraft rd{site.root, nullptr, root_links, {}, {}, {}, 0};
        root_page = build_page(rd, spec.root_template, spec.root_template);
    }
    site.pages.emplace(site.root, std::move(root_page));
    site.graph.add_node(site.root);
    site.target_links[site.root] = 0;

    for (const auto& d : drafts) {
        site.pages.emplace(d.url, build_page(d, d.wing->nav_template, d.wing->catalog_template));
        site.graph.add_node(d.url);
        site.target_links[d.url] = d.catalog.size() + d.extra_targets.size();
    }
    for (auto& [url, p] : extras) {
        site.graph.add_node(url);
        site.pages.emplace(url, std::move(p));
    }
    for (const auto& t : site.targets) {
        SimPage p;
        p.status = 200;
        p.mime = spec.target_mime;
        std::uint64_t want =
            spec.target_bytes_min + rng.below(spec.target_bytes_max - spec.target_bytes_min + 1);
        p.body = simdetail::csv_body(rng, want);
        site.graph.add_node(t);
        site.pages.emplace(t, std::move(p));
    }

    // edges (graph mirrors the html)
    auto add_edges = [&](const std::string& from,
                         const std::vector<std::pair<std::string, std::string>>& links) {
        for (const auto& [to, text] : links)
            if (site.pages.count(to)) site.graph.add_edge(from, to);
    };
    add_edges(site.root, root_links);
    for (const auto& d : drafts) {
        add_edges(d.url, d.nav);
        add_edges(d.url, d.catalog);
        for (const auto& t : d.extra_targets) site.graph.add_edge(d.url, t);
    }
    for (const auto& [url, p] : site.pages) {
        if (p.status == 301 && site.pages.count(p.location)) site.graph.add_edge(url, p.location);
    }
    site.graph.root = site.root;

    for (const auto& [url, p] : site.pages) {
        bool is_target = p.status == 200 && p.mime == spec.target_mime;
        if (is_target) site.total_target_bytes += p.body.size();
        else site.total_nontarget_bytes += p.body.size();
    }
    return site;
}

// Deterministic per-URL 5xx injection: the faulty set is a pure function of
// (rate, seed), identical across runs and platforms.
struct FaultSpec {
    double rate = 0.0;
    std::uint64_t seed = 0;

    bool faulty(const std::string& url) const {
        if (rate <= 0.0) return false;
        std::string hex = sha256_hex(std::to_string(seed) + "|" + url);
        std::uint64_t v = std::stoull(hex.substr(0, 8), nullptr, 16);
        return static_cast<double>(v) < rate * 4294967296.0;
    }
};

// In-memory fetcher over a generated site. No pacing: simulated traffic.
class SimFetcher : public Fetcher {
public:
    explicit SimFetcher(const GeneratedSite& site, FaultSpec faults = {})
        : site_(&site), faults_(faults) {}

    FetchResponse get(const std::string& url, const AbortPredicate& abort_mime) override {
        FetchResponse out;
        if (faults_.faulty(url)) {
            out.status = 503;
            out.mime = "text/html";
            out.request_size = request_size("GET", url);
            out.header_size = header_size(503, "text/html", 0);
            return out;
        }
        auto it = site_->pages.find(url);
        if (it == site_->pages.end()) {
            out.status = 404;
            out.mime = "text/html";
            out.body = "<html><body>no such page</body></html>";
            out.body_size = out.body.size();
            out.header_size = header_size(out.status, *out.mime, out.body_size);
            out.request_size = request_size("GET", url);
            return out;
        }
        const SimPage& p = it->second;
        out.status = p.status;
        out.mime = p.mime;
        if (!p.location.empty()) out.location = p.location;
        out.request_size = request_size("GET", url);
        out.header_size = header_size(p.status, p.mime, p.body.size());
        if (abort_mime && abort_mime(p.mime)) {
            out.aborted = true;  // stream cut before any body bytes
            return out;
        }
        bool redirect = p.status >= 300 && p.status < 400;
        if (!redirect) {
            out.body = p.body;
            out.body_size = out.body.size();
        }
        return out;
    }

    HeadResult head(const std::string& url) override {
        HeadResult out;
        if (faults_.faulty(url)) {
            out.status = 503;
            out.mime = "text/html";
            out.header_size = header_size(503, "text/html", 0);
            out.request_size = request_size("HEAD", url);
            return out;
        }
        auto it = site_->pages.find(url);
        if (it == site_->pages.end()) {
            out.status = 404;
            out.mime = "text/html";
            out.header_size = header_size(404, "text/html", 0);
        } else {
            out.status = it->second.status;
            out.mime = it->second.mime;
            out.header_size = header_size(it->second.status, it->second.mime,
                                          it->second.body.size());
        }
        out.request_size = request_size("HEAD", url);
        return out;
    }

private:
    static std::uint64_t header_size(int status, const std::string& mime, std::uint64_t len) {
        (void)status;
        return 17 + 16 + mime.size() + 18 + std::to_string(len).size() + 4;
    }

    static std::uint64_t request_size(std::string_view method, const std::string& url) {
        return method.size() + url.size() + 32;
    }

    const GeneratedSite* site_;
    FaultSpec faults_;
};

// persist every page so any crawler mode can replay the site
inline void export_site(const GeneratedSite& site, PageStore& store) {
    SimFetcher f(site);
    for (const auto& [url, p] : site.pages) store.record_get(url, f.get(url, nullptr));
}

}  // namespace fcrawl
