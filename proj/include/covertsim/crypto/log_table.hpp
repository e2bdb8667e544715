#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "covertsim/os/flowlabel_prng.hpp"

namespace covertsim::crypto {

/// Discrete-log table for the flow-label group: maps 2^n mod N -> n for
/// n in [0, N-1). 2 generates the full multiplicative group mod N, so the
/// table is a bijection on [1, N-1]. Building it costs N-1 modular
/// multiplications (a few milliseconds); the mask-recovery phase then runs
/// entirely on a byte-sized table of logs reduced mod 12.
class LogTable {
public:
    static constexpr uint32_t kN = os::FlowLabelPrng::kGroupModulus;
    static constexpr uint32_t kInvalidLog12 = 0xff;

    LogTable() : log_(kN, 0), log12_(1u << 19, kInvalidLog12) {
        uint64_t pow = 1;
        for (uint32_t n = 0; n + 1 < kN; ++n) {
            log_[pow] = n;
            log12_[pow] = static_cast<uint8_t>(n % 12);
            pow = (pow * 2) % kN;
        }
        // pow has cycled back to 1 here (2 is a primitive root)
    }

    /// log base 2 of v mod N, for v in [1, N-1].
    uint32_t log2_of(uint32_t v) const { return log_[v]; }

    /// log mod 12, or kInvalidLog12 when v is 0 or outside [1, N-1].
    /// Accepts any 19-bit value so candidate masks can be probed blindly.
    uint8_t log2_mod12(uint32_t v) const { return log12_[v]; }

    bool valid(uint32_t v) const { return v >= 1 && v < kN; }

    /// Shared instance; the table is immutable after construction.
    static const LogTable& instance() {
        static LogTable table;
        return table;
    }

private:
    std::vector<uint32_t> log_;
    std::vector<uint8_t> log12_;
};

}  // namespace covertsim::crypto
