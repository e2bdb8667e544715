#pragma once

#include <cstdint>
#include <ostream>

#include "covertsim/clock.hpp"

namespace covertsim::os {

/// NetBSD TCP initial sequence number, top 8 bits: the sum of a 2 Hz timer
/// and a count of connections since boot, modulo 256. The counter advances
/// once per generated ISN (one per SYN+ACK or client SYN).
class NetbsdIsnGenerator {
public:
    static constexpr double kTimerHz = 2.0;

    uint8_t syn_ack_msb(const SimClock& clock, bool register_connection = true) {
        if (register_connection) ++connection_count_;
        uint64_t timer = clock.jiffies(kTimerHz);
        return static_cast<uint8_t>((timer + connection_count_) & 0xff);
    }

    uint64_t connection_count() const { return connection_count_; }

    void snapshot(std::ostream& out) const {
        out << "netbsd_isn connection_count=" << connection_count_ << "\n";
    }

private:
    uint64_t connection_count_ = 0;
};

}  // namespace covertsim::os
