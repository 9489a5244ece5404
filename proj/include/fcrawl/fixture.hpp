#pragma once

#include <algorithm>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fcrawl/html.hpp"
#include "fcrawl/mime.hpp"
#include "fcrawl/store.hpp"
#include "fcrawl/url.hpp"

namespace fcrawl {

// Outgoing links on a stored HTML page that land on stored target pages.
inline std::uint64_t count_target_links(const PageStore& store, const StoreRecord& rec,
                                        const std::vector<std::string>& target_mimes) {
    if (rec.status < 200 || rec.status >= 300 || rec.aborted || !rec.body_sha) return 0;
    if (!rec.mime || !mime_is_html(*rec.mime)) return 0;
    auto base = parse_url(rec.url);
    if (!base) return 0;
    std::uint64_t count = 0;
    for (const auto& link : extract_links(store.read_body(*rec.body_sha), *base)) {
        auto it = store.gets().find(link.url);
        if (it == store.gets().end()) continue;
        const StoreRecord& t = it->second;
        if (t.status >= 200 && t.status < 300 && !t.aborted && t.mime &&
            mime_in(*t.mime, target_mimes))
            ++count;
    }
    return count;
}

// Ground-truth manifest recomputed by walking a store exhaustively. Produces
// the same shape the site generator emits, so the two agree byte-for-byte on
// the recomputable fields.
inline nlohmann::ordered_json manifest_from_store(const PageStore& store,
                                                  const std::string& site_id,
                                                  const std::string& root,
                                                  const std::vector<std::string>& target_mimes) {
    std::vector<const StoreRecord*> recs;
    for (const auto& [url, r] : store.gets()) recs.push_back(&r);
    std::sort(recs.begin(), recs.end(),
              [](const StoreRecord* a, const StoreRecord* b) { return a->url < b->url; });

    nlohmann::ordered_json j;
    j["site_id"] = site_id;
    j["root"] = root;
    j["target_mimes"] = target_mimes;
    nlohmann::ordered_json plist = nlohmann::ordered_json::array();
    std::vector<std::string> targets;
    std::uint64_t target_bytes = 0, nontarget_bytes = 0;
    for (const StoreRecord* r : recs) {
        bool is_target = r->status >= 200 && r->status < 300 && !r->aborted && r->mime &&
                         mime_in(*r->mime, target_mimes);
        nlohmann::ordered_json e;
        e["url"] = r->url;
        e["status"] = r->status;
        e["mime"] = r->mime.value_or("");
        e["body_size"] = r->body_size;
        e["target_links"] = count_target_links(store, *r, target_mimes);
        plist.push_back(std::move(e));
        if (is_target) {
            targets.push_back(r->url);
            target_bytes += r->body_size;
        } else {
            nontarget_bytes += r->body_size;
        }
    }
    j["pages"] = std::move(plist);
    j["targets"] = targets;
    j["totals"] = {{"requests", store.gets().size()},
                   {"targets", targets.size()},
                   {"target_bytes", target_bytes},
                   {"nontarget_bytes", nontarget_bytes}};
    return j;
}

// Walk the store, recompute everything the manifest claims, and report every
// disagreement. Empty result = fixture verified.
inline std::vector<std::string> verify_fixture(const PageStore& store,
                                               const nlohmann::json& manifest) {
    std::vector<std::string> diffs;

    std::vector<std::string> target_mimes;
    if (manifest.contains("spec") && manifest["spec"].contains("target_mime"))
        target_mimes.push_back(manifest["spec"]["target_mime"].get<std::string>());
    else if (manifest.contains("target_mimes"))
        target_mimes = manifest["target_mimes"].get<std::vector<std::string>>();
    else
        return {"manifest carries no target MIME declaration"};

    std::set<std::string> listed;
    for (const auto& e : manifest.at("pages")) {
        std::string url = e.at("url").get<std::string>();
        listed.insert(url);
        auto it = store.gets().find(url);
        if (it == store.gets().end()) {
            diffs.push_back(url + ": listed in manifest but missing from store");
            continue;
        }
        const StoreRecord& r = it->second;
        auto check = [&](const char* field, auto manifest_v, auto store_v) {
            if (manifest_v != store_v) {
                std::ostringstream o;
                o << url << ": " << field << " manifest=" << manifest_v
                  << " store=" << store_v;
                diffs.push_back(o.str());
            }
        };
        check("status", e.at("status").get<int>(), r.status);
        check("mime", e.at("mime").get<std::string>(), r.mime.value_or(""));
        check("body_size", e.at("body_size").get<std::uint64_t>(), r.body_size);
        check("target_links", e.at("target_links").get<std::uint64_t>(),
              count_target_links(store, r, target_mimes));
    }
    for (const auto& [url, r] : store.gets())
        if (!listed.count(url)) diffs.push_back(url + ": in store but not in manifest");

    std::set<std::string> want_targets;
    for (const auto& t : manifest.at("targets")) want_targets.insert(t.get<std::string>());
    std::set<std::string> got_targets;
    std::uint64_t target_bytes = 0, nontarget_bytes = 0;
    for (const auto& [url, r] : store.gets()) {
        bool is_target = r.status >= 200 && r.status < 300 && !r.aborted && r.mime &&
                         mime_in(*r.mime, target_mimes);
        if (is_target) {
            got_targets.insert(url);
            target_bytes += r.body_size;
        } else {
            nontarget_bytes += r.body_size;
        }
    }
    for (const auto& t : want_targets)
        if (!got_targets.count(t)) diffs.push_back(t + ": manifest target not a store target");
    for (const auto& t : got_targets)
        if (!want_targets.count(t)) diffs.push_back(t + ": store target not in manifest targets");

    const auto& totals = manifest.at("totals");
    auto check_total = [&](const char* field, std::uint64_t want, std::uint64_t got) {
        if (want != got)
            diffs.push_back(std::string("totals.") + field + ": manifest=" +
                            std::to_string(want) + " recomputed=" + std::to_string(got));
    };
    check_total("requests", totals.at("requests").get<std::uint64_t>(), store.gets().size());
    check_total("targets", totals.at("targets").get<std::uint64_t>(), got_targets.size());
    check_total("target_bytes", totals.at("target_bytes").get<std::uint64_t>(), target_bytes);
    check_total("nontarget_bytes", totals.at("nontarget_bytes").get<std::uint64_t>(),
                nontarget_bytes);
    return diffs;
}

}  // namespace fcrawl
