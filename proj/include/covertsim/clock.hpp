#pragma once

#include <cmath>
#include <cstdint>

namespace covertsim {

/// Simulated host clock. `now` is in seconds; tick counters at a fixed
/// frequency derive from it. Monotone by construction: advance_to never
/// moves backwards.
struct SimClock {
    double now = 0.0;

    void advance_to(double t) {
        if (t > now) now = t;
    }

    /// Integer ticks elapsed at `hz` since time zero: floor(now * hz).
    uint64_t jiffies(double hz) const {
        return static_cast<uint64_t>(std::floor(now * hz));
    }
};

}  // namespace covertsim
