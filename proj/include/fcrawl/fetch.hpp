#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>

namespace fcrawl {

struct HeadResult {
    int status = 0;                    // 0: network failure / miss
    std::optional<std::string> mime;   // normalized
    std::uint64_t header_size = 0;
    std::uint64_t request_size = 0;
};

struct FetchResponse {
    int status = 0;                    // 0: network failure / replay miss
    std::optional<std::string> mime;   // normalized
    std::optional<std::string> location;  // raw Location header on 3xx
    std::string body;                  // empty when aborted or bodyless
    std::uint64_t header_size = 0;
    std::uint64_t body_size = 0;       // bytes actually received
    std::uint64_t request_size = 0;
    bool aborted = false;              // stream cut on a blocklisted MIME
};

// abort predicate: given the normalized MIME, stop the transfer?
using AbortPredicate = std::function<bool(const std::string&)>;

class Fetcher {
public:
    virtual ~Fetcher() = default;
    virtual FetchResponse get(const std::string& url, const AbortPredicate& abort_mime) = 0;
    virtual HeadResult head(const std::string& url) = 0;
};

// Enforces a minimum gap between consecutive requests. The clock is
// injectable so tests can run without real sleeps.
class Pacer {
public:
    using NowFn = std::function<std::uint64_t()>;     // monotonic ms
    using SleepFn = std::function<void(std::uint64_t)>;

    explicit Pacer(std::uint64_t delay_ms)
        : delay_ms_(delay_ms),
          now_([] {
              return static_cast<std::uint64_t>(
                  std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now().time_since_epoch())
                      .count());
          }),
          sleep_([](std::uint64_t ms) {
              std::this_thread::sleep_for(std::chrono::milliseconds(ms));
          }) {}

    Pacer(std::uint64_t delay_ms, NowFn now, SleepFn sleep)
        : delay_ms_(delay_ms), now_(std::move(now)), sleep_(std::move(sleep)) {}

    void pace() {
        std::uint64_t t = now_();
        if (has_last_ && delay_ms_ > 0) {
            std::uint64_t due = last_ + delay_ms_;
            if (t < due) {
                sleep_(due - t);
                t = now_();
            }
        }
        last_ = t;
        has_last_ = true;
    }

    std::uint64_t delay_ms() const { return delay_ms_; }

private:
    std::uint64_t delay_ms_;
    NowFn now_;
    SleepFn sleep_;
    std::uint64_t last_ = 0;
    bool has_last_ = false;
};

}  // namespace fcrawl
