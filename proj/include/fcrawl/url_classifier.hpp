#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fcrawl/mime.hpp"

namespace fcrawl {

enum class PageClass { Html, Target };

inline const char* to_string(PageClass c) { return c == PageClass::Html ? "HTML" : "Target"; }

// 95 printable ASCII chars + 1 catch-all bucket; features are counts of
// adjacent char pairs
inline constexpr std::uint32_t kCharBuckets = 96;
inline constexpr std::uint32_t kUrlFeatureDims = kCharBuckets * kCharBuckets;  // 9216

namespace clfdetail {
inline std::uint32_t char_bucket(unsigned char c) {
    return (c >= 0x20 && c <= 0x7E) ? static_cast<std::uint32_t>(c - 0x20) : kCharBuckets - 1;
}
}  // namespace clfdetail

using UrlFeatures = std::vector<std::pair<std::uint32_t, double>>;  // sorted by id

inline UrlFeatures url_features(std::string_view url) {
    std::map<std::uint32_t, double> counts;
    for (std::size_t i = 0; i + 1 < url.size(); ++i) {
        std::uint32_t id = clfdetail::char_bucket(static_cast<unsigned char>(url[i])) * kCharBuckets +
                           clfdetail::char_bucket(static_cast<unsigned char>(url[i + 1]));
        counts[id] += 1.0;
    }
    return UrlFeatures(counts.begin(), counts.end());
}

// Logistic regression trained one mini-batch at a time. Zero-initialised, so
// training order alone determines the weights (deterministic).
class OnlineLogit {
public:
    explicit OnlineLogit(std::uint32_t dims = kUrlFeatureDims)
        : w_(dims, 0.0) {}

    double score(const UrlFeatures& x) const {
        double s = bias_;
        for (const auto& [id, v] : x) s += w_[id] * v;
        return s;
    }

    double predict_proba(const UrlFeatures& x) const {
        return 1.0 / (1.0 + std::exp(-score(x)));
    }

    // one pass over the batch, SGD with decaying rate and L2 shrinkage on
    // the touched coordinates
    void train_batch(const std::vector<std::pair<UrlFeatures, int>>& batch) {
        double lr = 0.1 / (1.0 + 0.001 * static_cast<double>(trained_batches_));
        for (const auto& [x, y] : batch) {
            double g = 1.0 / (1.0 + std::exp(-score(x))) - static_cast<double>(y);
            for (const auto& [id, v] : x)
                w_[id] -= lr * (g * v + kL2 * w_[id]);
            bias_ -= lr * g;
        }
        ++trained_batches_;
    }

    std::uint64_t trained_batches() const { return trained_batches_; }

    // flat text format: header, bias, then one "feature-id weight" pair per
    // line for nonzero weights
    void dump(std::ostream& os) const {
        os.precision(17);
        os << "urlmodel 1 " << w_.size() << " " << trained_batches_ << "\n";
        os << "bias " << bias_ << "\n";
        for (std::uint32_t i = 0; i < w_.size(); ++i)
            if (w_[i] != 0.0) os << i << " " << w_[i] << "\n";
    }

    static std::optional<OnlineLogit> load(std::istream& is) {
        std::string tag;
        int version = 0;
        std::uint32_t dims = 0;
        std::uint64_t batches = 0;
        if (!(is >> tag >> version >> dims >> batches) || tag != "urlmodel" || version != 1)
            return std::nullopt;
        OnlineLogit m(dims);
        m.trained_batches_ = batches;
        if (!(is >> tag >> m.bias_) || tag != "bias") return std::nullopt;
        std::uint32_t id;
        double v;
        while (is >> id >> v) {
            if (id >= dims) return std::nullopt;
            m.w_[id] = v;
        }
        return m;
    }

private:
    static constexpr double kL2 = 1e-6;
    std::vector<double> w_;
    double bias_ = 0.0;
    std::uint64_t trained_batches_ = 0;
};

// Two-class online URL classifier. While the first training batch is still
// being collected, classification falls back to a HEAD probe of the URL;
// afterwards it is a pure model prediction and never probes again. Labeled
// pairs keep arriving from crawled pages via observe().
class UrlClassifier {
public:
    // head(url) -> normalized mime, nullopt on failure
    using HeadProbe = std::function<std::optional<std::string>(const std::string&)>;

    UrlClassifier(std::size_t batch_size, std::vector<std::string> target_mimes)
        : batch_size_(batch_size), target_mimes_(std::move(target_mimes)) {
        if (batch_size_ == 0) throw std::invalid_argument("batch size must be >= 1");
    }

    PageClass classify_or_probe(const std::string& url, const HeadProbe& head) {
        maybe_train();
        if (initial_phase_) {
            PageClass label = PageClass::Html;  // HEAD failure and plain pages both land here
            if (auto mime = head(url)) {
                if (mime_is_html(*mime)) label = PageClass::Html;
                else if (mime_in(*mime, target_mimes_)) label = PageClass::Target;
            }
            buffer_.emplace_back(url_features(url), label == PageClass::Target ? 1 : 0);
            return label;
        }
        return model_.score(url_features(url)) > 0.0 ? PageClass::Target : PageClass::Html;
    }

    // labeled pair from a completed GET
    void observe(const std::string& url, PageClass label) {
        buffer_.emplace_back(url_features(url), label == PageClass::Target ? 1 : 0);
    }

    bool initial_phase() const { return initial_phase_; }
    std::size_t buffered() const { return buffer_.size(); }
    const OnlineLogit& model() const { return model_; }
    OnlineLogit& model() { return model_; }

private:
    void maybe_train() {
        if (buffer_.size() < batch_size_) return;
        model_.train_batch(buffer_);
        buffer_.clear();
        initial_phase_ = false;
    }

    std::size_t batch_size_;
    std::vector<std::string> target_mimes_;
    OnlineLogit model_;
    std::vector<std::pair<UrlFeatures, int>> buffer_;
    bool initial_phase_ = true;
};

}  // namespace fcrawl
