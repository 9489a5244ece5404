#pragma once

#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "fcrawl/tagpath.hpp"
#include "fcrawl/url.hpp"

namespace fcrawl {

struct ExtractedLink {
    std::string url;     // resolved + normalized, http(s) only
    TagPath path;        // root-to-element, element included
    std::string anchor;  // collapsed text for <a>, empty otherwise
};

namespace htmldetail {

inline bool is_void_element(std::string_view n) {
    static const std::array<std::string_view, 14> kVoid = {
        "area", "base", "br",    "col",   "embed",  "hr",    "img",
        "input", "link", "meta", "param", "source", "track", "wbr"};
    for (auto v : kVoid)
        if (v == n) return true;
    return false;
}

inline bool is_raw_text(std::string_view n) {
    return n == "script" || n == "style" || n == "textarea" || n == "title" || n == "xmp";
}

// implied end tags: opening `incoming` closes an open `open`
inline bool autocloses(std::string_view open, std::string_view incoming) {
    if (open == "p" && incoming == "p") return true;
    if (open == "li" && incoming == "li") return true;
    if (open == "option" && incoming == "option") return true;
    if (open == "a" && incoming == "a") return true;
    if ((open == "dd" || open == "dt") && (incoming == "dd" || incoming == "dt")) return true;
    if ((open == "td" || open == "th") && (incoming == "td" || incoming == "th" || incoming == "tr"))
        return true;
    if (open == "tr" && incoming == "tr") return true;
    return false;
}

inline std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        if (s[i] != '&') {
            out += s[i++];
            continue;
        }
        auto semi = s.find(';', i);
        if (semi == std::string_view::npos || semi - i > 10) {
            out += s[i++];
            continue;
        }
        std::string_view ent = s.substr(i + 1, semi - i - 1);
        if (ent == "amp") out += '&';
        else if (ent == "lt") out += '<';
        else if (ent == "gt") out += '>';
        else if (ent == "quot") out += '"';
        else if (ent == "apos") out += '\'';
        else if (ent == "nbsp") out += ' ';
        else if (!ent.empty() && ent[0] == '#') {
            long code = 0;
            bool ok = false;
            if (ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X')) {
                for (char c : ent.substr(2)) {
                    if (!std::isxdigit(static_cast<unsigned char>(c))) { ok = false; break; }
                    code = code * 16 + (std::isdigit(static_cast<unsigned char>(c))
                                            ? c - '0'
                                            : (std::tolower(c) - 'a' + 10));
                    ok = true;
                }
            } else {
                for (char c : ent.substr(1)) {
                    if (!std::isdigit(static_cast<unsigned char>(c))) { ok = false; break; }
                    code = code * 10 + (c - '0');
                    ok = true;
                }
            }
            if (ok && code > 0 && code < 128) out += static_cast<char>(code);
            else if (ok) out += '?';  // non-ASCII: placeholder, features only
            else { out += s[i++]; continue; }
        } else {
            out += s[i++];
            continue;
        }
        i = semi + 1;
    }
    return out;
}

struct Attr {
    std::string name;
    std::string value;
};

}  // namespace htmldetail

// Tag-soup link extraction: tolerant of unclosed elements, stray close tags,
// unquoted attributes and comments. Collects one entry per hyperlink-bearing
// element (a/area href, frame/iframe/embed src) with its root-to-element tag
// path and, for <a>, the contained text.
inline std::vector<ExtractedLink> extract_links(std::string_view html, const Url& page_url) {
    using namespace htmldetail;
    std::vector<ExtractedLink> links;
    Url base = page_url;
    bool base_seen = false;

    struct OpenElem {
        TagStep step;
        long link_idx = -1;  // index into links if this is an <a> collecting text
    };
    std::vector<OpenElem> stack;

    auto append_text = [&](std::string_view text) {
        for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
            if (it->link_idx >= 0) {
                std::string dec = decode_entities(text);
                std::string& acc = links[static_cast<std::size_t>(it->link_idx)].anchor;
                for (char c : dec) {
                    if (std::isspace(static_cast<unsigned char>(c))) {
                        if (!acc.empty() && acc.back() != ' ') acc += ' ';
                    } else {
                        acc += c;
                    }
                }
                return;
            }
        }
    };

    std::size_t i = 0;
    const std::size_t n = html.size();
    while (i < n) {
        if (html[i] != '<') {
            auto next = html.find('<', i);
            append_text(html.substr(i, next - i));
            i = next == std::string_view::npos ? n : next;
            continue;
        }
        if (html.compare(i, 4, "<!--") == 0) {
            auto end = html.find("-->", i + 4);
            i = end == std::string_view::npos ? n : end + 3;
            continue;
        }
        if (i + 1 < n && (html[i + 1] == '!' || html[i + 1] == '?')) {
            auto end = html.find('>', i);
            i = end == std::string_view::npos ? n : end + 1;
            continue;
        }
        if (i + 1 < n && html[i + 1] == '/') {
            std::size_t j = i + 2;
            std::string name;
            while (j < n && (std::isalnum(static_cast<unsigned char>(html[j])) || html[j] == '-'))
                name += static_cast<char>(std::tolower(static_cast<unsigned char>(html[j++])));
            auto end = html.find('>', j);
            i = end == std::string_view::npos ? n : end + 1;
            // pop through the matching open element; ignore stray closers
            for (std::size_t k = stack.size(); k > 0; --k) {
                if (stack[k - 1].step.name == name) {
                    stack.resize(k - 1);
                    break;
                }
            }
            continue;
        }
        // open tag
        std::size_t j = i + 1;
        if (j >= n || !std::isalpha(static_cast<unsigned char>(html[j]))) {
            append_text(html.substr(i, 1));
            ++i;
            continue;
        }
        std::string name;
        while (j < n && (std::isalnum(static_cast<unsigned char>(html[j])) || html[j] == '-'))
            name += static_cast<char>(std::tolower(static_cast<unsigned char>(html[j++])));

        std::vector<Attr> attrs;
        bool self_closed = false;
        while (j < n && html[j] != '>') {
            if (html[j] == '/' && j + 1 < n && html[j + 1] == '>') {
                self_closed = true;
                j += 1;
                break;
            }
            if (std::isspace(static_cast<unsigned char>(html[j]))) {
                ++j;
                continue;
            }
            Attr a;
            while (j < n && html[j] != '=' && html[j] != '>' && html[j] != '/' &&
                   !std::isspace(static_cast<unsigned char>(html[j])))
                a.name += static_cast<char>(std::tolower(static_cast<unsigned char>(html[j++])));
            while (j < n && std::isspace(static_cast<unsigned char>(html[j]))) ++j;
            if (j < n && html[j] == '=') {
                ++j;
                while (j < n && std::isspace(static_cast<unsigned char>(html[j]))) ++j;
                if (j < n && (html[j] == '"' || html[j] == '\'')) {
                    char quote = html[j++];
                    auto end = html.find(quote, j);
                    a.value = std::string(html.substr(j, end - j));
                    j = end == std::string_view::npos ? n : end + 1;
                } else {
                    while (j < n && html[j] != '>' &&
                           !std::isspace(static_cast<unsigned char>(html[j])))
                        a.value += html[j++];
                }
            }
            if (!a.name.empty()) attrs.push_back(std::move(a));
        }
        i = (j < n) ? j + 1 : n;

        auto attr = [&](std::string_view want) -> const std::string* {
            for (const auto& a : attrs)
                if (a.name == want) return &a.value;
            return nullptr;
        };

        if (name == "base" && !base_seen) {
            if (const auto* href = attr("href")) {
                if (auto b = resolve_url(base, decode_entities(*href)); b && b->has_authority())
                    base = *b;
                base_seen = true;
            }
            continue;  // void element
        }

        while (!stack.empty() && autocloses(stack.back().step.name, name))
            stack.pop_back();

        TagStep step;
        step.name = name;
        if (const auto* idv = attr("id")) step.id = *idv;
        if (const auto* cls = attr("class")) {
            std::string cur;
            for (char c : *cls) {
                if (std::isspace(static_cast<unsigned char>(c))) {
                    if (!cur.empty()) step.classes.push_back(std::move(cur)), cur.clear();
                } else {
                    cur += c;
                }
            }
            if (!cur.empty()) step.classes.push_back(std::move(cur));
        }

        const std::string* ref = nullptr;
        if (name == "a" || name == "area") ref = attr("href");
        else if (name == "iframe" || name == "frame" || name == "embed") ref = attr("src");

        long link_idx = -1;
        if (ref) {
            if (auto resolved = resolve_and_normalize(base, decode_entities(*ref))) {
                TagPath path;
                path.reserve(stack.size() + 1);
                for (const auto& e : stack) path.push_back(e.step);
                path.push_back(step);
                links.push_back({std::move(*resolved), std::move(path), ""});
                if (name == "a") link_idx = static_cast<long>(links.size()) - 1;
            }
        }

        if (is_raw_text(name) && !self_closed) {
            // skip to the matching close tag, case-insensitively
            std::string closer = "</" + name;
            std::size_t k = i;
            while (k < n) {
                auto cand = html.find('<', k);
                if (cand == std::string_view::npos) { k = n; break; }
                bool match = cand + closer.size() <= n;
                if (match) {
                    for (std::size_t q = 0; q < closer.size(); ++q) {
                        if (std::tolower(static_cast<unsigned char>(html[cand + q])) != closer[q]) {
                            match = false;
                            break;
                        }
                    }
                }
                if (match) {
                    auto end = html.find('>', cand);
                    k = end == std::string_view::npos ? n : end + 1;
                    break;
                }
                k = cand + 1;
            }
            i = k;
            continue;
        }

        if (!self_closed && !is_void_element(name))
            stack.push_back({std::move(step), link_idx});
    }
    return links;
}

}  // namespace fcrawl
