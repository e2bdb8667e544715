#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "covertsim/modmath.hpp"
#include "covertsim/os/flowlabel_prng.hpp"
#include "covertsim/os/icmp_rate_limiter.hpp"
#include "covertsim/os/netbsd_isn.hpp"
#include "covertsim/os/syn_cache.hpp"
#include "covertsim/rng.hpp"

using namespace covertsim;
using os::FlowLabelPrng;
using os::FlowLabelSeed;
using os::MacIcmpRateLimiter;
using os::NetbsdIsnGenerator;
using os::SynCache;

TEST_CASE("two connections at the same instant differ by one") {
    NetbsdIsnGenerator isn;
    SimClock clock;
    clock.advance_to(123.456);
    uint8_t m1 = isn.syn_ack_msb(clock);
    uint8_t m2 = isn.syn_ack_msb(clock);
    REQUIRE(static_cast<uint8_t>(m2 - m1) == 1);
}

TEST_CASE("one idle second advances the top byte by two") {
    NetbsdIsnGenerator isn;
    SimClock clock;
    clock.advance_to(10.0);
    uint8_t m1 = isn.syn_ack_msb(clock, false);
    clock.advance_to(11.0);
    uint8_t m2 = isn.syn_ack_msb(clock, false);
    REQUIRE(static_cast<uint8_t>(m2 - m1) == 2);
}

TEST_CASE("four connections within 0.2 s move the byte past the idle bound") {
    NetbsdIsnGenerator isn;
    SimClock clock;
    clock.advance_to(50.03);
    uint8_t m = isn.syn_ack_msb(clock);
    clock.advance_to(50.08);
    for (int i = 0; i < 4; ++i) isn.syn_ack_msb(clock);
    clock.advance_to(50.23);
    uint8_t m2 = isn.syn_ack_msb(clock);
    uint8_t delta = static_cast<uint8_t>(m2 - m);
    REQUIRE(delta >= 4);
    REQUIRE(delta > 1 + static_cast<int>(std::ceil(2 * 0.2)));
}

namespace {

// Straight-line transcription of the flow-label generator: explicit LCG
// steps and modular exponentiation, independent of the production class.
struct FlowLabelReference {
    uint64_t x, s1, s2, a, b, g;
    static constexpr uint64_t M = 279936;
    static constexpr uint64_t N = 524269;

    template <class R>
    uint32_t generate(R& rng) {
        for (int invocation = 0; invocation < 2; ++invocation) {
            uint64_t n = 1 + rng.uniform(4);
            for (uint64_t i = 0; i < n; ++i) x = (a * x + b) % M;
        }
        uint64_t v = 1;
        uint64_t base = g % N;
        uint64_t e = x + s2;
        while (e) {
            if (e & 1) v = (v * base) % N;
            base = (base * base) % N;
            e >>= 1;
        }
        return static_cast<uint32_t>(s1 ^ v);
    }
};

}  // namespace

TEST_CASE("flow label output equals the straight-line evaluation") {
    Rng seed_rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        FlowLabelSeed seed = FlowLabelPrng::draw_seed(seed_rng);
        FlowLabelPrng prng;
        prng.set_state(seed, false);
        FlowLabelReference ref{seed.lcg_state, seed.out_mask, seed.exp_offset, seed.mult, seed.inc, seed.gen};
        Rng draws_a(1000 + trial), draws_b(1000 + trial);
        SimClock clock;
        for (int i = 0; i < 20; ++i) {
            uint32_t got = prng.next_label(clock, draws_a);
            uint32_t want = ref.generate(draws_b);
            REQUIRE(got == want);
        }
    }
}

TEST_CASE("labels stay below 2^19 plus the static top bit") {
    Rng rng(22);
    SimClock clock;
    FlowLabelPrng prng(clock, rng);
    bool msb = prng.msb();
    for (int i = 0; i < 1000; ++i) {
        uint32_t label = prng.next_label(clock, rng);
        REQUIRE(label < (1u << 20));
        REQUIRE((label >> 19) == (msb ? 1u : 0u));
        REQUIRE((label & 0x7ffffu) < FlowLabelPrng::kGroupModulus);
        REQUIRE((label & 0x7ffffu) != (prng.state().out_mask ^ 0u));  // g^e mod N is never 0
    }
}

TEST_CASE("negated seeds produce identical output sequences") {
    constexpr uint64_t M = FlowLabelPrng::kLcgModulus;
    constexpr uint64_t N = FlowLabelPrng::kGroupModulus;
    Rng seed_rng(23);
    int skipped = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        FlowLabelSeed seed = FlowLabelPrng::draw_seed(seed_rng);
        FlowLabelSeed neg;
        neg.lcg_state = static_cast<uint32_t>((M - seed.lcg_state) % M);
        neg.out_mask = seed.out_mask;
        neg.exp_offset = static_cast<uint32_t>(((N - 1) - ((M + seed.exp_offset) % (N - 1))) % (N - 1));
        neg.mult = seed.mult;
        neg.inc = static_cast<uint32_t>(M - seed.inc);
        neg.gen = static_cast<uint32_t>(inv_mod(seed.gen, N));

        FlowLabelPrng p1, p2;
        p1.set_state(seed, false);
        p2.set_state(neg, false);
        Rng draws_a(5000 + trial), draws_b(5000 + trial);
        SimClock clock;
        bool zero_state_hit = false;
        for (int i = 0; i < 8; ++i) {
            uint32_t l1 = p1.next_label(clock, draws_a);
            uint32_t l2 = p2.next_label(clock, draws_b);
            if (p1.state().lcg_state == 0) {
                // x=0 maps to itself under negation and breaks the exponent
                // identity for that output only; the equivalence claim holds
                // on orbits that avoid it.
                zero_state_hit = true;
                break;
            }
            REQUIRE(l1 == l2);
        }
        if (zero_state_hit) ++skipped;
    }
    REQUIRE(skipped <= 2);
}

TEST_CASE("reseed triggers on elapsed time and flips the top bit") {
    Rng rng(24);
    SimClock clock;
    FlowLabelPrng prng(clock, rng);
    bool msb = prng.msb();
    clock.advance_to(10.0);
    prng.next_label(clock, rng);
    REQUIRE(prng.msb() == msb);
    clock.advance_to(181.0);
    prng.next_label(clock, rng);
    REQUIRE(prng.msb() == !msb);
    REQUIRE(prng.steps_since_reseed() <= 8);
}

TEST_CASE("reseed triggers on accumulated steps before exceeding the cap by 8") {
    Rng rng(25);
    SimClock clock;
    FlowLabelPrng prng(clock, rng);
    bool msb = prng.msb();
    uint64_t labels = 0;
    while (prng.msb() == msb) {
        uint64_t before = prng.steps_since_reseed();
        prng.next_label(clock, rng, false);
        ++labels;
        if (prng.msb() == msb) {
            REQUIRE(prng.steps_since_reseed() < FlowLabelPrng::kReseedSteps + 8);
            REQUIRE(prng.steps_since_reseed() >= before);
        }
    }
    // 200000 steps at 5 per label
    REQUIRE(labels >= 200000 / 8);
    REQUIRE(labels <= 200000 / 2 + 2);
}

TEST_CASE("syn cache accepts into an empty table without eviction") {
    SynCache cache(SynCache::Config{}, 99);
    SimClock clock;
    auto r = cache.insert(clock, 0x0a000001, 40000, 22);
    REQUIRE(r.accepted);
    REQUIRE_FALSE(r.evicted.has_value());
    REQUIRE(cache.live_entries() == 1);
}

TEST_CASE("insertion at the global cap evicts exactly one oldest entry") {
    SynCache cache(SynCache::Config{}, 7);
    SimClock clock;
    for (uint32_t i = 0; i < SynCache::kGlobalCap; ++i) {
        clock.advance_to(i * 1e-5);
        auto r = cache.insert(clock, 0x0a000000 + i, static_cast<uint16_t>(i), 22);
        REQUIRE(r.accepted);
        REQUIRE_FALSE(r.evicted.has_value());
    }
    REQUIRE(cache.active_size() == SynCache::kGlobalCap);
    auto r = cache.insert(clock, 0x0b000001, 1234, 22);
    REQUIRE(r.accepted);
    REQUIRE(r.evicted.has_value());
    REQUIRE(cache.active_size() == SynCache::kGlobalCap);
}

TEST_CASE("conservation: insertions - evictions - expirations - removals = live") {
    SynCache cache(SynCache::Config{}, 3);
    SimClock clock;
    Rng rng(31);
    std::vector<uint64_t> ids;
    for (int step = 0; step < 30000; ++step) {
        clock.advance_to(step * 0.01);
        auto r = cache.insert(clock, static_cast<uint32_t>(rng.next_u64()),
                              static_cast<uint16_t>(rng.next_u64()), 22);
        if (r.accepted) ids.push_back(r.entry_id);
        if (step % 7 == 0 && !ids.empty()) {
            cache.remove(ids[rng.uniform(ids.size())]);
        }
        REQUIRE(cache.inserted() - cache.evicted() - cache.expired() -
                    cache.removed() ==
                cache.live_entries());
    }
}

TEST_CASE("receiver entries survive a full-cache flood at the expected rate") {
    // K=10 planted entries, then 10255+1000 further insertions; survivors
    // should average about 0.32 with sigma 0.56. A small trial count here
    // keeps the unit suite fast; the acceptance suite runs the full check.
    Rng rng(32);
    const int trials = 60;
    double total = 0;
    for (int t = 0; t < trials; ++t) {
        SynCache cache(SynCache::Config{}, rng.next_u64());
        SimClock clock;
        std::vector<uint64_t> planted;
        for (int k = 0; k < 10; ++k) {
            auto r = cache.insert(clock, 0x01010101, static_cast<uint16_t>(40000 + k), 22);
            planted.push_back(r.entry_id);
        }
        clock.advance_to(1.0);
        for (int i = 0; i < 10255 + 1000; ++i) {
            cache.insert(clock, static_cast<uint32_t>(rng.next_u64()),
                         static_cast<uint16_t>(rng.next_u64()), 22);
        }
        int survivors = 0;
        for (uint64_t id : planted) {
            if (cache.alive(id, clock.now)) ++survivors;
        }
        total += survivors;
    }
    double mean = total / trials;
    REQUIRE(mean < 0.32 + 3.0 * 0.56 / std::sqrt(static_cast<double>(trials)));
}

TEST_CASE("openbsd variant freezes after 100000 insertions") {
    SynCache::Config cfg;
    cfg.variant = SynCache::Variant::openbsd;
    SynCache cache(cfg, 5);
    SimClock clock;
    Rng rng(33);
    int n = 0;
    for (; n < 95000; ++n) {
        clock.advance_to(0.0001 * n);
        cache.insert(clock, static_cast<uint32_t>(rng.next_u64()),
                     static_cast<uint16_t>(rng.next_u64()), 22);
    }
    // planted just before the freeze boundary, so it is still present when
    // the active cache rolls over
    uint64_t receiver_entry = cache.insert(clock, 0x07070707, 55555, 22).entry_id;
    while (cache.freezes() == 0) {
        clock.advance_to(0.0001 * ++n);
        cache.insert(clock, static_cast<uint32_t>(rng.next_u64()),
                     static_cast<uint16_t>(rng.next_u64()), 22);
        REQUIRE(n < 120000);
    }
    REQUIRE(cache.inserted() >= SynCache::kFreezeInsertions);
    // the frozen receiver entry is no longer evictable
    REQUIRE(cache.alive(receiver_entry, clock.now));
    for (int i = 0; i < 12000; ++i) {
        cache.insert(clock, static_cast<uint32_t>(rng.next_u64()),
                     static_cast<uint16_t>(rng.next_u64()), 22);
    }
    REQUIRE(cache.alive(receiver_entry, clock.now));
}

TEST_CASE("syn+ack schedule follows the 3-second base with factor-2 backoff") {
    SynCache cache(SynCache::Config{}, 1);
    auto offsets = cache.synack_offsets();
    REQUIRE(offsets == std::vector<double>{0.0, 3.0, 9.0, 21.0, 45.0});
}

TEST_CASE("icmp limiter admits everything below the per-boot threshold") {
    Rng rng(41);
    MacIcmpRateLimiter limiter(rng);
    REQUIRE(limiter.limit() >= 251);
    REQUIRE(limiter.limit() <= 500);
    SimClock clock;
    clock.advance_to(3.2);
    for (int i = 0; i < 100; ++i) REQUIRE(limiter.admit(clock, rng));
}

TEST_CASE("after a 600-request burst the next probe is rarely answered") {
    Rng rng(42);
    int answered = 0;
    const int trials = 2000;
    for (int t = 0; t < trials; ++t) {
        MacIcmpRateLimiter limiter(rng);
        SimClock clock;
        clock.advance_to(t * 10.0 + 0.1);
        for (int i = 0; i < 600; ++i) limiter.admit(clock, rng);
        clock.advance_to(t * 10.0 + 0.9);
        if (limiter.admit(clock, rng)) ++answered;
    }
    // per-probe answer probability is 1/(600-limit) <= 1/100
    REQUIRE(answered <= trials / 100 + 12);
}

TEST_CASE("the interval reset makes the next probe certain again") {
    Rng rng(43);
    MacIcmpRateLimiter limiter(rng);
    SimClock clock;
    clock.advance_to(5.1);
    for (int i = 0; i < 600; ++i) limiter.admit(clock, rng);
    clock.advance_to(6.05);
    REQUIRE(limiter.admit(clock, rng));
}
