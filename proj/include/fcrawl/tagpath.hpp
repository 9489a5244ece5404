#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "fcrawl/hashing.hpp"

namespace fcrawl {

struct TagStep {
    std::string name;                  // lowercase element name
    std::string id;                    // empty if absent
    std::vector<std::string> classes;  // document order

    bool operator==(const TagStep&) const = default;
};

// root-to-element chain of steps
using TagPath = std::vector<TagStep>;

inline std::string render_step(const TagStep& s) {
    std::string out = s.name;
    if (!s.id.empty()) {
        out += '#';
        out += s.id;
    }
    for (const auto& c : s.classes) {
        out += '.';
        out += c;
    }
    return out;
}

inline std::string render_path(const TagPath& p) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ' ';
        out += render_step(p[i]);
    }
    return out;
}

// Token n-grams over rendered steps, ids assigned densely in first-seen
// order and never re-indexed.
class NgramVocabulary {
public:
    explicit NgramVocabulary(unsigned n = 2) : n_(n) {
        if (n_ == 0) throw std::invalid_argument("ngram size must be >= 1");
    }

    unsigned n() const { return n_; }
    std::uint64_t size() const { return ids_.size(); }

    std::uint32_t lookup_or_add(const std::string& key) {
        auto [it, fresh] = ids_.emplace(key, static_cast<std::uint32_t>(ids_.size()));
        (void)fresh;
        return it->second;
    }

private:
    unsigned n_;
    std::unordered_map<std::string, std::uint32_t> ids_;
};

namespace detail {
// sentinels framing every path; cannot collide with rendered steps
inline constexpr char kBos[] = "\x02";
inline constexpr char kEos[] = "\x03";
}  // namespace detail

// Raw-count bag of n-grams of the framed token sequence. Paths shorter than
// n (after framing) give the zero vector.
inline SparseVec ngram_bow(const TagPath& path, NgramVocabulary& vocab) {
    std::vector<std::string> toks;
    toks.reserve(path.size() + 2);
    toks.emplace_back(detail::kBos);
    for (const auto& s : path) toks.push_back(render_step(s));
    toks.emplace_back(detail::kEos);

    const unsigned n = vocab.n();
    std::map<std::uint32_t, double> counts;
    if (toks.size() >= n) {
        for (std::size_t i = 0; i + n <= toks.size(); ++i) {
            std::string key = toks[i];
            for (unsigned j = 1; j < n; ++j) {
                key += '\x1f';
                key += toks[i + j];
            }
            counts[vocab.lookup_or_add(key)] += 1.0;
        }
    }
    return SparseVec(counts.begin(), counts.end());
}

// vocabulary + projection table + a memo for identical paths seen while the
// vocabulary hasn't grown (hot on template-heavy pages)
class Vectorizer {
public:
    Vectorizer(unsigned n, HashParams params) : vocab_(n), table_(params) {}

    std::vector<double> vectorize(const TagPath& path) {
        std::string key = render_path(path);
        if (auto it = memo_.find(key); it != memo_.end() && memo_d_ == vocab_.size())
            return it->second;
        SparseVec bow = ngram_bow(path, vocab_);
        table_.extend(vocab_.size());
        auto vec = project(bow, table_);
        if (vocab_.size() != memo_d_) {
            memo_.clear();  // denominators changed; all cached vectors stale
            memo_d_ = vocab_.size();
        }
        memo_.emplace(std::move(key), vec);
        return vec;
    }

    NgramVocabulary& vocab() { return vocab_; }
    const ProjectionTable& table() const { return table_; }

private:
    NgramVocabulary vocab_;
    ProjectionTable table_;
    std::unordered_map<std::string, std::vector<double>> memo_;
    std::uint64_t memo_d_ = 0;
};

}  // namespace fcrawl
