#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fcrawl {

struct Url {
    std::string scheme;  // lowercase
    std::string host;    // lowercase
    int port = -1;       // -1: none given
    std::string path;    // always begins with '/'
    std::string query;   // includes leading '?' when present, else empty

    bool has_authority() const { return !host.empty(); }
    std::string str() const;
};

namespace detail {

inline std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

inline int default_port(std::string_view scheme) {
    if (scheme == "http") return 80;
    if (scheme == "https") return 443;
    return -1;
}

// RFC 3986 remove_dot_segments
inline std::string remove_dot_segments(std::string_view in) {
    std::string out;
    std::string buf(in);
    while (!buf.empty()) {
        if (buf.rfind("../", 0) == 0) {
            buf.erase(0, 3);
        } else if (buf.rfind("./", 0) == 0) {
            buf.erase(0, 2);
        } else if (buf.rfind("/./", 0) == 0) {
            buf.erase(0, 2);
        } else if (buf == "/.") {
            buf = "/";
        } else if (buf.rfind("/../", 0) == 0) {
            buf.erase(0, 3);
            auto pos = out.find_last_of('/');
            out.erase(pos == std::string::npos ? 0 : pos);
        } else if (buf == "/..") {
            buf = "/";
            auto pos = out.find_last_of('/');
            out.erase(pos == std::string::npos ? 0 : pos);
        } else if (buf == "." || buf == "..") {
            buf.clear();
        } else {
            auto pos = buf.find('/', buf[0] == '/' ? 1 : 0);
            out += buf.substr(0, pos);
            buf.erase(0, pos == std::string::npos ? buf.size() : pos);
        }
    }
    return out;
}

// percent-encode control bytes and spaces so assembled URLs stay transmittable;
// existing escapes are left alone, making this idempotent
inline std::string encode_unsafe(std::string_view s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        if (c <= 0x20 || c == 0x7F || c == '"' || c == '<' || c == '>') {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 0xF];
        } else {
            out += static_cast<char>(c);
        }
    }
    return out;
}

}  // namespace detail

inline std::string Url::str() const {
    std::string out = scheme + "://" + host;
    if (port >= 0 && port != detail::default_port(scheme))
        out += ":" + std::to_string(port);
    out += path.empty() ? "/" : path;
    out += query;
    return out;
}

// Parse an absolute URL. Returns nullopt on anything malformed; callers treat
// that as out-of-scope, never as an error to propagate.
inline std::optional<Url> parse_url(std::string_view raw) {
    // trim surrounding whitespace
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.front()))) raw.remove_prefix(1);
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.remove_suffix(1);
    if (raw.empty()) return std::nullopt;

    auto colon = raw.find(':');
    if (colon == std::string_view::npos || colon == 0) return std::nullopt;
    std::string_view sv = raw.substr(0, colon);
    if (!std::isalpha(static_cast<unsigned char>(sv[0]))) return std::nullopt;
    for (char c : sv)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.')
            return std::nullopt;

    Url u;
    u.scheme = detail::lower(sv);
    std::string_view rest = raw.substr(colon + 1);
    if (rest.rfind("//", 0) != 0) return std::nullopt;
    rest.remove_prefix(2);

    auto auth_end = rest.find_first_of("/?#");
    std::string_view auth = rest.substr(0, auth_end);
    rest = auth_end == std::string_view::npos ? std::string_view{} : rest.substr(auth_end);

    // strip userinfo
    auto at = auth.rfind('@');
    if (at != std::string_view::npos) auth = auth.substr(at + 1);
    if (auth.empty()) return std::nullopt;

    std::string_view hostpart = auth;
    std::string_view portpart;
    if (auth.front() == '[') {  // IPv6 literal
        auto close = auth.find(']');
        if (close == std::string_view::npos) return std::nullopt;
        hostpart = auth.substr(0, close + 1);
        if (close + 1 < auth.size()) {
            if (auth[close + 1] != ':') return std::nullopt;
            portpart = auth.substr(close + 2);
        }
    } else {
        auto pc = auth.rfind(':');
        if (pc != std::string_view::npos) {
            hostpart = auth.substr(0, pc);
            portpart = auth.substr(pc + 1);
        }
    }
    if (hostpart.empty()) return std::nullopt;
    u.host = detail::lower(hostpart);
    if (!portpart.empty()) {
        int p = 0;
        for (char c : portpart) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
            p = p * 10 + (c - '0');
            if (p > 65535) return std::nullopt;
        }
        u.port = p;
    }

    auto frag = rest.find('#');
    if (frag != std::string_view::npos) rest = rest.substr(0, frag);  // fragment dropped
    auto q = rest.find('?');
    if (q != std::string_view::npos) {
        u.query = detail::encode_unsafe(rest.substr(q));
        rest = rest.substr(0, q);
    }
    u.path = detail::remove_dot_segments(detail::encode_unsafe(rest));
    if (u.path.empty()) u.path = "/";
    if (u.port == detail::default_port(u.scheme)) u.port = -1;
    return u;
}

// Canonical string form: lowercase scheme/host, no fragment, no default port,
// dot segments collapsed, empty path -> "/". Idempotent.
inline std::optional<std::string> normalize_url(std::string_view raw) {
    auto u = parse_url(raw);
    if (!u) return std::nullopt;
    return u->str();
}

// RFC 3986 reference resolution against an absolute base (good-enough subset:
// the base always has scheme+authority here).
inline std::optional<Url> resolve_url(const Url& base, std::string_view ref) {
    // fast path: absolute reference
    if (auto abs = parse_url(ref)) return abs;

    while (!ref.empty() && std::isspace(static_cast<unsigned char>(ref.front()))) ref.remove_prefix(1);
    while (!ref.empty() && std::isspace(static_cast<unsigned char>(ref.back()))) ref.remove_suffix(1);

    // a lone scheme:non-slash reference (mailto:, javascript:, data:) is not a
    // fetchable document
    auto colon = ref.find(':');
    auto slash = ref.find('/');
    auto qm = ref.find('?');
    auto hash = ref.find('#');
    if (colon != std::string_view::npos && colon < std::min({slash, qm, hash}))
        return std::nullopt;

    Url out = base;
    out.query.clear();

    if (hash != std::string_view::npos) ref = ref.substr(0, hash);

    if (ref.rfind("//", 0) == 0) {  // network-path reference
        std::string abs = base.scheme + ":" + std::string(ref);
        return parse_url(abs);
    }

    std::string_view qpart;
    auto q = ref.find('?');
    if (q != std::string_view::npos) {
        qpart = ref.substr(q);
        ref = ref.substr(0, q);
    }

    if (ref.empty()) {
        out.path = base.path;
        out.query = qpart.empty() ? base.query : detail::encode_unsafe(qpart);
        return out;
    }
    if (!qpart.empty()) out.query = detail::encode_unsafe(qpart);

    if (ref.front() == '/') {
        out.path = detail::remove_dot_segments(detail::encode_unsafe(ref));
    } else {
        // merge with base path
        std::string merged;
        auto pos = base.path.find_last_of('/');
        merged = (pos == std::string::npos) ? "/" : base.path.substr(0, pos + 1);
        merged += std::string(ref);
        out.path = detail::remove_dot_segments(detail::encode_unsafe(merged));
    }
    if (out.path.empty()) out.path = "/";
    return out;
}

inline std::optional<std::string> resolve_and_normalize(const Url& base, std::string_view ref) {
    auto u = resolve_url(base, ref);
    if (!u) return std::nullopt;
    if (u->scheme != "http" && u->scheme != "https") return std::nullopt;
    return u->str();
}

namespace detail {
inline std::string_view strip_www(std::string_view host) {
    if (host.size() > 4 && host.rfind("www.", 0) == 0) return host.substr(4);
    return host;
}
}  // namespace detail

// Scope rule: after stripping one leading "www." label from both sides, the
// candidate host must equal the root host or extend it by whole dot-separated
// labels on the left.
inline bool host_in_scope(std::string_view cand_host, std::string_view root_host) {
    auto c = detail::strip_www(cand_host);
    auto r = detail::strip_www(root_host);
    if (c == r) return true;
    if (c.size() > r.size() + 1 && c.substr(c.size() - r.size()) == r &&
        c[c.size() - r.size() - 1] == '.')
        return true;
    return false;
}

inline bool in_scope(const Url& cand, const Url& root) {
    return host_in_scope(cand.host, root.host);
}

// last-path-segment extension test against a blocklist of ".ext" entries
inline bool has_blocklisted_extension(std::string_view url,
                                      const std::vector<std::string>& blocklist) {
    auto q = url.find('?');
    std::string_view path = url.substr(0, q);
    auto h = path.find('#');
    path = path.substr(0, h);
    std::string p = detail::lower(path);
    for (const auto& ext : blocklist) {
        if (p.size() > ext.size() && p.compare(p.size() - ext.size(), ext.size(), ext) == 0)
            return true;
    }
    return false;
}

}  // namespace fcrawl
