#pragma once

#include <array>
#include <cstdint>
#include <ostream>

#include "covertsim/clock.hpp"
#include "covertsim/hash.hpp"

namespace covertsim::os {

/// Linux IPv4 ID generator for connection-less transport protocols (ICMP,
/// UDP). A fixed array of 2048 16-bit counters is indexed by a keyed hash of
/// the packet's address tuple; each emission advances the counter by a random
/// hop bounded by the tick time elapsed since the bucket was last used.
class LinuxIpidGenerator {
public:
    static constexpr uint32_t kBucketCount = 2048;

    LinuxIpidGenerator() = default;

    /// Counters start with random contents, as after a kernel boot; the
    /// last-access times start at tick zero.
    template <class R>
    LinuxIpidGenerator(uint64_t hash_key, double tick_hz, R& rng)
        : hash_key_(hash_key), tick_hz_(tick_hz) {
        for (auto& c : counters_) c = static_cast<uint16_t>(rng.uniform(0x10000));
        last_access_.fill(0);
    }

    /// Bucket index for an outbound packet: keyed hash over (destination,
    /// source, protocol, container tag) reduced mod 2048. The receiver of the
    /// packet is the destination here.
    static uint32_t bucket_index(uint64_t hash_key, uint32_t dst_ip, uint32_t src_ip,
                                 uint8_t proto, uint64_t net_key) {
        return static_cast<uint32_t>(
            keyed_hash(hash_key, {dst_ip, src_ip, proto, net_key}) % kBucketCount);
    }

    uint32_t bucket_for(uint32_t dst_ip, uint32_t src_ip, uint8_t proto,
                        uint64_t net_key) const {
        return bucket_index(hash_key_, dst_ip, src_ip, proto, net_key);
    }

    /// Emit the IPv4 ID for an outbound packet. The counter advances by
    /// hop = 1 + random({0..elapsed-1}) where elapsed is in ticks and
    /// random(empty set) = 0, so back-to-back packets in one tick step by 1.
    template <class R>
    uint16_t next_id(const SimClock& clock, uint32_t dst_ip, uint32_t src_ip,
                     uint8_t proto, uint64_t net_key, R& rng) {
        uint32_t i = bucket_for(dst_ip, src_ip, proto, net_key);
        return next_id_in_bucket(clock, i, rng);
    }

    template <class R>
    uint16_t next_id_in_bucket(const SimClock& clock, uint32_t bucket, R& rng) {
        uint64_t t_now = clock.jiffies(tick_hz_);
        uint64_t idle = t_now - last_access_[bucket];
        uint64_t hop = 1 + rng.uniform(idle);
        counters_[bucket] = static_cast<uint16_t>((counters_[bucket] + hop) & 0xffff);
        last_access_[bucket] = t_now;
        return counters_[bucket];
    }

    uint16_t counter(uint32_t bucket) const { return counters_[bucket]; }
    uint64_t last_access(uint32_t bucket) const { return last_access_[bucket]; }
    double tick_hz() const { return tick_hz_; }
    uint64_t hash_key() const { return hash_key_; }

    /// State snapshot in the structured-text form used by golden-file tests.
    /// Only touched buckets are listed to keep snapshots small.
    void snapshot(std::ostream& out) const {
        out << "linux_ipid tick_hz=" << tick_hz_ << "\n";
        for (uint32_t i = 0; i < kBucketCount; ++i) {
            if (last_access_[i] != 0) {
                out << "bucket " << i << " counter=" << counters_[i]
                    << " last_access=" << last_access_[i] << "\n";
            }
        }
    }

private:
    std::array<uint16_t, kBucketCount> counters_{};
    std::array<uint64_t, kBucketCount> last_access_{};
    uint64_t hash_key_ = 0;
    double tick_hz_ = 250.0;
};

}  // namespace covertsim::os
