#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <ostream>
#include <unordered_map>
#include <vector>

#include "covertsim/clock.hpp"
#include "covertsim/hash.hpp"

namespace covertsim::os {

/// NetBSD / OpenBSD TCP SYN cache: 293 keyed-hash buckets of up to 105
/// half-open entries, with a global limit of 10255. At the global limit an
/// insertion evicts the oldest entry of the first non-empty bucket starting
/// from the new entry's bucket. Each entry retransmits its SYN+ACK at 3 s and
/// then with exponential backoff (offsets 0, 3, 9, 21, 45).
///
/// The OpenBSD variant freezes the active cache after 100000 insertions and
/// hands new insertions to a fresh instance; frozen entries are no longer
/// evictable and only expire naturally.
class SynCache {
public:
    static constexpr uint32_t kBucketCount = 293;
    static constexpr uint32_t kBucketCap = 105;
    static constexpr uint32_t kGlobalCap = 10255;
    static constexpr uint64_t kFreezeInsertions = 100000;

    enum class Variant { netbsd, openbsd };

    struct Config {
        Variant variant = Variant::netbsd;
        double synack_base_timeout = 3.0;  // first retransmit offset
        int synack_transmissions = 5;      // total SYN+ACK packets per entry
        double entry_lifetime = 75.0;      // natural expiry after insertion
    };

    struct Entry {
        uint32_t src_ip = 0;
        uint16_t src_port = 0;
        uint16_t dst_port = 0;
        double insert_time = 0.0;
        uint32_t bucket = 0;
        bool frozen = false;
    };

    struct InsertResult {
        bool accepted = false;
        uint64_t entry_id = 0;
        std::optional<Entry> evicted;
        bool froze_now = false;  // OpenBSD variant rolled to a fresh instance
    };

    SynCache() : SynCache(Config{}, 0) {}
    SynCache(const Config& cfg, uint64_t hash_key) : cfg_(cfg), hash_key_(hash_key) {}

    /// SYN+ACK transmission offsets relative to insertion: base*(2^k - 1).
    std::vector<double> synack_offsets() const {
        std::vector<double> offsets;
        double pow2 = 1.0;
        for (int k = 0; k < cfg_.synack_transmissions; ++k) {
            offsets.push_back(cfg_.synack_base_timeout * (pow2 - 1.0));
            pow2 *= 2.0;
        }
        return offsets;
    }

    uint32_t bucket_of(uint32_t src_ip, uint16_t src_port, uint16_t dst_port) const {
        return static_cast<uint32_t>(
            keyed_hash(hash_key_, {src_ip, src_port, dst_port}) % kBucketCount);
    }

    InsertResult insert(const SimClock& clock, uint32_t src_ip, uint16_t src_port,
                        uint16_t dst_port) {
        sweep_expired(clock.now);
        InsertResult result;
        if (cfg_.variant == Variant::openbsd &&
            active_insertions_ >= kFreezeInsertions) {
            freeze_active();
            result.froze_now = true;
        }
        uint32_t bucket = bucket_of(src_ip, src_port, dst_port);
        if (active_size_ >= kGlobalCap) {
            result.evicted = evict_from(bucket);
        } else if (buckets_[bucket].size() >= kBucketCap) {
            ++refused_;
            return result;  // bucket full below the global cap: refuse
        }
        Entry e;
        e.src_ip = src_ip;
        e.src_port = src_port;
        e.dst_port = dst_port;
        e.insert_time = clock.now;
        e.bucket = bucket;
        uint64_t id = next_id_++;
        entries_.emplace(id, e);
        buckets_[bucket].push_back(id);
        expiry_order_.push_back(id);
        ++active_size_;
        ++inserted_;
        ++active_insertions_;
        result.accepted = true;
        result.entry_id = id;
        return result;
    }

    /// Entry still present (half-open) at the given time.
    bool alive(uint64_t id, double now) const {
        auto it = entries_.find(id);
        if (it == entries_.end()) return false;
        return now < it->second.insert_time + cfg_.entry_lifetime;
    }

    /// Remove an entry on peer RST or handshake completion.
    bool remove(uint64_t id) {
        auto it = entries_.find(id);
        if (it == entries_.end()) return false;
        if (!it->second.frozen) {
            erase_from_bucket(it->second.bucket, id);
            --active_size_;
        }
        entries_.erase(it);
        ++removed_;
        return true;
    }

    void sweep_expired(double now) {
        while (!expiry_order_.empty()) {
            uint64_t id = expiry_order_.front();
            auto it = entries_.find(id);
            if (it == entries_.end()) {
                expiry_order_.pop_front();
                continue;
            }
            if (now < it->second.insert_time + cfg_.entry_lifetime) break;
            expiry_order_.pop_front();
            if (!it->second.frozen) {
                erase_from_bucket(it->second.bucket, id);
                --active_size_;
            }
            entries_.erase(it);
            ++expired_;
        }
    }

    size_t live_entries() const { return entries_.size(); }
    size_t active_size() const { return active_size_; }
    uint64_t inserted() const { return inserted_; }
    uint64_t evicted() const { return evicted_; }
    uint64_t expired() const { return expired_; }
    uint64_t removed() const { return removed_; }
    uint64_t refused() const { return refused_; }
    uint64_t freezes() const { return freezes_; }
    const Config& config() const { return cfg_; }

    void snapshot(std::ostream& out) const {
        out << "syn_cache variant="
            << (cfg_.variant == Variant::openbsd ? "openbsd" : "netbsd")
            << " live=" << entries_.size() << " active=" << active_size_
            << " inserted=" << inserted_ << " evicted=" << evicted_
            << " expired=" << expired_ << " freezes=" << freezes_ << "\n";
    }

private:
    std::optional<Entry> evict_from(uint32_t start_bucket) {
        for (uint32_t k = 0; k < kBucketCount; ++k) {
            uint32_t b = (start_bucket + k) % kBucketCount;
            if (!buckets_[b].empty()) {
                uint64_t victim = buckets_[b].front();
                buckets_[b].pop_front();
                auto it = entries_.find(victim);
                Entry copy = it->second;
                entries_.erase(it);
                --active_size_;
                ++evicted_;
                return copy;
            }
        }
        return std::nullopt;
    }

    void erase_from_bucket(uint32_t bucket, uint64_t id) {
        auto& dq = buckets_[bucket];
        for (auto it = dq.begin(); it != dq.end(); ++it) {
            if (*it == id) {
                dq.erase(it);
                return;
            }
        }
    }

    void freeze_active() {
        for (auto& dq : buckets_) dq.clear();
        for (auto& [id, e] : entries_) e.frozen = true;
        active_size_ = 0;
        active_insertions_ = 0;
        ++freezes_;
    }

    Config cfg_;
    uint64_t hash_key_ = 0;
    std::unordered_map<uint64_t, Entry> entries_;
    std::array<std::deque<uint64_t>, kBucketCount> buckets_;
    std::deque<uint64_t> expiry_order_;
    size_t active_size_ = 0;
    uint64_t next_id_ = 1;
    uint64_t inserted_ = 0;
    uint64_t active_insertions_ = 0;
    uint64_t evicted_ = 0;
    uint64_t expired_ = 0;
    uint64_t removed_ = 0;
    uint64_t refused_ = 0;
    uint64_t freezes_ = 0;
};

}  // namespace covertsim::os
