#pragma once

#include <cstdint>
#include <ostream>

#include "covertsim/clock.hpp"
#include "covertsim/modmath.hpp"

namespace covertsim::os {

/// Seed material for the NetBSD flow-label PRNG (19 low bits of the field).
struct FlowLabelSeed {
    uint32_t lcg_state = 0;   // in [0, kLcgModulus)
    uint32_t out_mask = 0;    // 19-bit xor mask on the output
    uint32_t exp_offset = 0;  // exponent offset in [0, kGroupModulus-1)
    uint32_t mult = 1;        // LCG multiplier: an even power of 7, so mult = 1 mod 12
    uint32_t inc = 1;         // LCG increment, coprime to kLcgModulus
    uint32_t gen = 2;         // generator of the multiplicative group mod kGroupModulus
};

/// NetBSD IPv6 flow-label generator. The 19 low bits come from an LCG state
/// pushed through a modular exponentiation and an xor mask; the top bit is
/// static between reseeds and flips at each reseed. Reseeding happens after
/// 180 seconds or 200000 internal LCG steps, whichever comes first.
///
/// One flow label costs two PRNG invocations, each advancing the LCG by a
/// random 1..4 steps; only the second invocation's output is used.
class FlowLabelPrng {
public:
    static constexpr uint32_t kLcgModulus = 279936;    // 2^7 * 3^7
    static constexpr uint32_t kGroupModulus = 524269;  // prime; order 2^2 * 3^2 * 14563
    static constexpr double kReseedSeconds = 180.0;
    static constexpr uint64_t kReseedSteps = 200000;

    FlowLabelPrng() = default;

    template <class R>
    FlowLabelPrng(const SimClock& clock, R& rng) {
        seed_ = draw_seed(rng);
        msb_ = rng.uniform(2) != 0;
        last_reseed_ = clock.now;
    }

    /// Inject explicit state; used by oracles with known ground truth.
    void set_state(const FlowLabelSeed& seed, bool msb, double reseed_time = 0.0) {
        seed_ = seed;
        msb_ = msb;
        steps_since_reseed_ = 0;
        last_reseed_ = reseed_time;
    }

    template <class R>
    static FlowLabelSeed draw_seed(R& rng) {
        FlowLabelSeed s;
        s.lcg_state = static_cast<uint32_t>(rng.uniform(kLcgModulus));
        s.out_mask = static_cast<uint32_t>(rng.uniform(1u << 19));
        s.exp_offset = static_cast<uint32_t>(rng.uniform(kGroupModulus - 1));
        s.mult = static_cast<uint32_t>(pow_mod(7, 2 * rng.uniform(1u << 19), kLcgModulus));
        do {
            s.inc = static_cast<uint32_t>(rng.uniform_in(1, kLcgModulus - 1));
        } while (s.inc % 2 == 0 || s.inc % 3 == 0);
        uint64_t e;
        do {
            e = rng.uniform_in(1, kGroupModulus - 1);
        } while (e % 2 == 0 || e % 3 == 0 || e % 14563 == 0);
        s.gen = static_cast<uint32_t>(pow_mod(2, e, kGroupModulus));
        return s;
    }

    /// Generate one 20-bit flow label. When want_value is false the LCG and
    /// reseed bookkeeping advance identically but the output exponentiation
    /// is skipped (for packets nobody observes).
    template <class R>
    uint32_t next_label(const SimClock& clock, R& rng, bool want_value = true) {
        maybe_reseed(clock, rng);
        invoke(rng);
        invoke(rng);
        uint32_t high = msb_ ? (1u << 19) : 0;
        if (!want_value) return high;
        uint32_t low = seed_.out_mask ^
                       static_cast<uint32_t>(pow_mod(
                           seed_.gen, seed_.lcg_state + seed_.exp_offset, kGroupModulus));
        return high | low;
    }

    bool msb() const { return msb_; }
    uint64_t steps_since_reseed() const { return steps_since_reseed_; }
    double last_reseed() const { return last_reseed_; }
    const FlowLabelSeed& state() const { return seed_; }

    void snapshot(std::ostream& out) const {
        out << "flowlabel_prng lcg_state=" << seed_.lcg_state
            << " out_mask=" << seed_.out_mask << " exp_offset=" << seed_.exp_offset
            << " mult=" << seed_.mult << " inc=" << seed_.inc << " gen=" << seed_.gen
            << " msb=" << (msb_ ? 1 : 0) << " steps=" << steps_since_reseed_ << "\n";
    }

private:
    template <class R>
    void maybe_reseed(const SimClock& clock, R& rng) {
        if (clock.now - last_reseed_ >= kReseedSeconds ||
            steps_since_reseed_ >= kReseedSteps) {
            seed_ = draw_seed(rng);
            msb_ = !msb_;
            steps_since_reseed_ = 0;
            last_reseed_ = clock.now;
        }
    }

    template <class R>
    void invoke(R& rng) {
        uint64_t n = 1 + rng.uniform(4);
        uint64_t x = seed_.lcg_state;
        for (uint64_t i = 0; i < n; ++i) {
            x = (static_cast<uint64_t>(seed_.mult) * x + seed_.inc) % kLcgModulus;
        }
        seed_.lcg_state = static_cast<uint32_t>(x);
        steps_since_reseed_ += n;
    }

    FlowLabelSeed seed_;
    bool msb_ = false;
    uint64_t steps_since_reseed_ = 0;
    double last_reseed_ = 0.0;
};

}  // namespace covertsim::os
