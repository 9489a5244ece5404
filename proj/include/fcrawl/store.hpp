#pragma once

#include <openssl/evp.h>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "fcrawl/fetch.hpp"

namespace fcrawl {

inline std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

struct StoreRecord {
    std::string url;
    std::string method;  // "GET" | "HEAD"
    int status = 0;
    std::optional<std::string> mime;
    std::optional<std::string> location;
    std::uint64_t header_size = 0;
    std::uint64_t body_size = 0;
    std::optional<std::string> body_sha;  // absent for 3xx/HEAD/aborted
    bool aborted = false;
    std::string fetched_at;
};

// Record/replay page store: an append-only JSONL journal plus
// content-addressed body files under bodies/. At most one GET and one HEAD
// record per normalized URL; on duplicate journal lines the first wins.
class PageStore {
public:
    explicit PageStore(std::filesystem::path dir) : dir_(std::move(dir)) {
        namespace fs = std::filesystem;
        fs::create_directories(dir_ / "bodies");
        load_journal();
    }

    const std::filesystem::path& dir() const { return dir_; }

    bool has_get(const std::string& url) const { return get_.count(url) != 0; }

    std::optional<FetchResponse> replay_get(const std::string& url,
                                            const AbortPredicate& abort_mime) const {
        auto it = get_.find(url);
        if (it == get_.end()) return std::nullopt;
        const StoreRecord& r = it->second;
        FetchResponse out;
        out.status = r.status;
        out.mime = r.mime;
        out.location = r.location;
        out.header_size = r.header_size;
        out.request_size = 0;
        if (r.aborted || (r.mime && abort_mime && abort_mime(*r.mime))) {
            out.aborted = true;
            return out;
        }
        if (r.body_sha) {
            out.body = read_body(*r.body_sha);
            out.body_size = out.body.size();
        }
        return out;
    }

    // HEAD replay; derived from the GET record when no HEAD was recorded
    std::optional<HeadResult> replay_head(const std::string& url) const {
        const StoreRecord* r = nullptr;
        if (auto it = head_.find(url); it != head_.end()) r = &it->second;
        else if (auto g = get_.find(url); g != get_.end()) r = &g->second;
        if (!r) return std::nullopt;
        HeadResult out;
        out.status = r->status;
        out.mime = r->mime;
        out.header_size = r->header_size;
        return out;
    }

    void record_get(const std::string& url, const FetchResponse& resp) {
        if (get_.count(url)) return;
        StoreRecord r;
        r.url = url;
        r.method = "GET";
        r.status = resp.status;
        r.mime = resp.mime;
        r.location = resp.location;
        r.header_size = resp.header_size;
        r.body_size = resp.body_size;
        r.aborted = resp.aborted;
        bool redirect = resp.status >= 300 && resp.status < 400;
        if (!resp.aborted && !redirect && !resp.body.empty()) {
            r.body_sha = sha256_hex(resp.body);
            write_body(*r.body_sha, resp.body);
        }
        r.fetched_at = timestamp();
        append(r);
        get_.emplace(url, std::move(r));
    }

    void record_head(const std::string& url, const HeadResult& resp) {
        if (head_.count(url)) return;
        StoreRecord r;
        r.url = url;
        r.method = "HEAD";
        r.status = resp.status;
        r.mime = resp.mime;
        r.header_size = resp.header_size;
        r.fetched_at = timestamp();
        append(r);
        head_.emplace(url, std::move(r));
    }

    const std::unordered_map<std::string, StoreRecord>& gets() const { return get_; }
    const std::unordered_map<std::string, StoreRecord>& heads() const { return head_; }

    std::string read_body(const std::string& sha) const {
        std::ifstream in(dir_ / "bodies" / sha, std::ios::binary);
        if (!in) throw std::runtime_error("missing body file: " + sha);
        return std::string(std::istreambuf_iterator<char>(in), {});
    }

private:
    void load_journal() {
        std::ifstream in(dir_ / "journal.jsonl");
        if (!in) return;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded()) throw std::runtime_error("corrupt journal line: " + line);
            StoreRecord r;
            r.url = j.at("url").get<std::string>();
            r.method = j.at("method").get<std::string>();
            r.status = j.at("status").get<int>();
            if (!j.at("mime").is_null()) r.mime = j.at("mime").get<std::string>();
            if (j.contains("location") && !j.at("location").is_null())
                r.location = j.at("location").get<std::string>();
            r.header_size = j.value("header_size", std::uint64_t{0});
            r.body_size = j.value("body_size", std::uint64_t{0});
            if (j.contains("sha") && !j.at("sha").is_null())
                r.body_sha = j.at("sha").get<std::string>();
            r.aborted = j.value("aborted", false);
            r.fetched_at = j.value("fetched_at", std::string{});
            auto& map = r.method == "HEAD" ? head_ : get_;
            map.emplace(r.url, std::move(r));  // first record wins
        }
    }

    void append(const StoreRecord& r) {
        nlohmann::ordered_json j;
        j["url"] = r.url;
        j["method"] = r.method;
        j["status"] = r.status;
        j["mime"] = r.mime ? nlohmann::json(*r.mime) : nlohmann::json(nullptr);
        j["location"] = r.location ? nlohmann::json(*r.location) : nlohmann::json(nullptr);
        j["header_size"] = r.header_size;
        j["body_size"] = r.body_size;
        j["sha"] = r.body_sha ? nlohmann::json(*r.body_sha) : nlohmann::json(nullptr);
        j["aborted"] = r.aborted;
        j["fetched_at"] = r.fetched_at;
        std::ofstream out(dir_ / "journal.jsonl", std::ios::app);
        if (!out) throw std::runtime_error("cannot append to journal");
        out << j.dump() << "\n";
    }

    void write_body(const std::string& sha, const std::string& body) const {
        namespace fs = std::filesystem;
        fs::path p = dir_ / "bodies" / sha;
        if (fs::exists(p)) return;  // content-addressed: identical bytes
        std::ofstream out(p, std::ios::binary);
        out.write(body.data(), static_cast<std::streamsize>(body.size()));
    }

    static std::string timestamp() {
        auto now = std::chrono::system_clock::now();
        std::time_t tt = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
        return buf;
    }

    std::filesystem::path dir_;
    std::unordered_map<std::string, StoreRecord> get_;
    std::unordered_map<std::string, StoreRecord> head_;
};

enum class FetchMode { Live, Record, Replay, SemiOnline };

// Composes a store and an optional live fetcher according to the mode.
// Replay misses surface as a synthetic 404-equivalent marker.
class StoreFetcher : public Fetcher {
public:
    StoreFetcher(FetchMode mode, PageStore* store, Fetcher* live)
        : mode_(mode), store_(store), live_(live) {
        if (mode_ != FetchMode::Live && !store_)
            throw std::invalid_argument("store required for this mode");
        if (mode_ != FetchMode::Replay && !live_)
            throw std::invalid_argument("live fetcher required for this mode");
    }

    FetchResponse get(const std::string& url, const AbortPredicate& abort_mime) override {
        if (mode_ == FetchMode::Live) return live_->get(url, abort_mime);
        if (mode_ == FetchMode::Replay || mode_ == FetchMode::SemiOnline) {
            if (auto hit = store_->replay_get(url, abort_mime)) return *hit;
            if (mode_ == FetchMode::Replay) return miss();
        }
        FetchResponse resp = live_->get(url, abort_mime);
        store_->record_get(url, resp);
        return resp;
    }

    HeadResult head(const std::string& url) override {
        if (mode_ == FetchMode::Live) return live_->head(url);
        if (mode_ == FetchMode::Replay || mode_ == FetchMode::SemiOnline) {
            if (auto hit = store_->replay_head(url)) return *hit;
            if (mode_ == FetchMode::Replay) return HeadResult{};  // miss: treated as Neither
        }
        HeadResult resp = live_->head(url);
        store_->record_head(url, resp);
        return resp;
    }

private:
    static FetchResponse miss() {
        FetchResponse r;
        r.status = 404;  // synthetic miss marker: never recorded, no mime
        return r;
    }

    FetchMode mode_;
    PageStore* store_;
    Fetcher* live_;
};

}  // namespace fcrawl
