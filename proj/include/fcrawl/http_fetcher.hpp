#pragma once

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include <map>
#include <memory>
#include <string>

#include "fcrawl/fetch.hpp"
#include "fcrawl/mime.hpp"
#include "fcrawl/url.hpp"

namespace fcrawl {

// Live HTTP(S) client. Redirects are not followed here; the crawl loop owns
// redirect handling. GETs stream and cut the transfer as soon as a
// blocklisted Content-Type shows up.
class HttpFetcher : public Fetcher {
public:
    HttpFetcher(std::string user_agent, Pacer pacer, int timeout_s = 20)
        : ua_(std::move(user_agent)), pacer_(std::move(pacer)), timeout_s_(timeout_s) {}

    FetchResponse get(const std::string& url, const AbortPredicate& abort_mime) override {
        FetchResponse out;
        auto u = parse_url(url);
        if (!u) return out;
        out.request_size = request_size("GET", *u);

        pacer_.pace();
        auto& cli = client(*u);
        bool aborted = false;
        std::string body;
        httplib::Result res = cli.Get(
            target(*u), {{"User-Agent", ua_}},
            [&](const httplib::Response& response) {
                if (response.has_header("Content-Type")) {
                    std::string mime = normalize_mime(response.get_header_value("Content-Type"));
                    if (abort_mime && abort_mime(mime)) {
                        aborted = true;
                        return false;  // cancel the transfer
                    }
                }
                return true;
            },
            [&](const char* data, size_t len) {
                body.append(data, len);
                return true;
            });

        if (!res) {
            if (aborted && res.error() == httplib::Error::Canceled) {
                out.aborted = true;
                out.status = 200;  // headers arrived; body dropped
            }
            return out;
        }
        fill_common(out, *res);
        out.body = std::move(body);
        out.body_size = out.body.size();
        if (res->has_header("Location")) out.location = res->get_header_value("Location");
        return out;
    }

    HeadResult head(const std::string& url) override {
        HeadResult out;
        auto u = parse_url(url);
        if (!u) return out;
        out.request_size = request_size("HEAD", *u);

        pacer_.pace();
        auto& cli = client(*u);
        httplib::Result res = cli.Head(target(*u), {{"User-Agent", ua_}});
        if (!res) return out;
        out.status = res->status;
        if (res->has_header("Content-Type"))
            out.mime = normalize_mime(res->get_header_value("Content-Type"));
        out.header_size = header_bytes(*res);
        return out;
    }

private:
    static std::string target(const Url& u) { return u.path + u.query; }

    std::uint64_t request_size(std::string_view method, const Url& u) const {
        // method + path + version + Host + User-Agent + blank line
        return method.size() + 1 + target(u).size() + 11 + 8 + u.host.size() + 2 + 14 +
               ua_.size() + 4;
    }

    static std::uint64_t header_bytes(const httplib::Response& r) {
        std::uint64_t n = 13 + r.reason.size() + 2;  // status line
        for (const auto& [k, v] : r.headers) n += k.size() + 2 + v.size() + 2;
        return n + 2;
    }

    void fill_common(FetchResponse& out, const httplib::Response& r) {
        out.status = r.status;
        if (r.has_header("Content-Type"))
            out.mime = normalize_mime(r.get_header_value("Content-Type"));
        out.header_size = header_bytes(r);
    }

    httplib::Client& client(const Url& u) {
        std::string key = u.scheme + "://" + u.host + ":" + std::to_string(u.port);
        auto it = clients_.find(key);
        if (it == clients_.end()) {
            auto cli = std::make_unique<httplib::Client>(
                u.scheme + "://" + u.host +
                (u.port >= 0 ? ":" + std::to_string(u.port) : ""));
            cli->set_connection_timeout(timeout_s_);
            cli->set_read_timeout(timeout_s_);
            cli->set_follow_location(false);
            it = clients_.emplace(key, std::move(cli)).first;
        }
        return *it->second;
    }

    std::string ua_;
    Pacer pacer_;
    int timeout_s_;
    std::map<std::string, std::unique_ptr<httplib::Client>> clients_;
};

}  // namespace fcrawl
