#pragma once

#include <cstdint>
#include <ostream>

#include "covertsim/clock.hpp"

namespace covertsim::os {

/// macOS ICMP Echo rate limit. A per-boot random threshold in [251, 500]
/// applies to fixed-length intervals; once the interval's request count
/// exceeds the threshold, the next request is answered with probability
/// 1/(excess requests).
class MacIcmpRateLimiter {
public:
    template <class R>
    explicit MacIcmpRateLimiter(R& rng, double interval_len = 1.0)
        : limit_(static_cast<uint32_t>(rng.uniform_in(251, 500))),
          interval_len_(interval_len) {}

    /// Admit (answer) an incoming Echo request?
    template <class R>
    bool admit(const SimClock& clock, R& rng) {
        uint64_t interval = static_cast<uint64_t>(clock.now / interval_len_);
        if (interval != interval_index_) {
            interval_index_ = interval;
            interval_count_ = 0;
        }
        uint32_t seen = interval_count_++;
        if (seen <= limit_) return true;
        return rng.uniform(seen - limit_) == 0;
    }

    uint32_t limit() const { return limit_; }
    uint32_t interval_count() const { return interval_count_; }

    void snapshot(std::ostream& out) const {
        out << "icmp_rate_limiter limit=" << limit_
            << " interval_count=" << interval_count_ << "\n";
    }

private:
    uint32_t limit_;
    double interval_len_;
    uint64_t interval_index_ = ~uint64_t{0};
    uint32_t interval_count_ = 0;
};

}  // namespace covertsim::os
