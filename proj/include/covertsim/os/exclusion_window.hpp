#pragma once

#include <bitset>
#include <cstdint>
#include <ostream>
#include <vector>

namespace covertsim::os {

/// macOS / OpenBSD IPv4 ID generator: a ring of the most recently emitted
/// IDs plus a membership bitmap. Each emission draws uniformly from the
/// values outside the ring, so any two IDs at most `capacity` emissions apart
/// are distinct. capacity is 4096 on macOS and 32768 on OpenBSD.
class ExclusionWindowGenerator {
public:
    static constexpr uint32_t kMacosWindow = 4096;
    static constexpr uint32_t kOpenbsdWindow = 32768;

    explicit ExclusionWindowGenerator(uint32_t capacity = kMacosWindow)
        : capacity_(capacity) {
        ring_.reserve(capacity);
    }

    template <class R>
    uint16_t next_id(R& rng) {
        // Rejection sampling over the excluded set; at most half the space is
        // excluded, so the expected number of draws is bounded by 2.
        uint16_t id;
        do {
            id = static_cast<uint16_t>(rng.uniform(0x10000));
        } while (in_window_[id]);
        push(id);
        ++emitted_;
        return id;
    }

    bool in_window(uint16_t id) const { return in_window_[id]; }
    uint32_t capacity() const { return capacity_; }
    size_t window_size() const { return ring_.size(); }
    uint64_t emitted() const { return emitted_; }

    void snapshot(std::ostream& out) const {
        out << "exclusion_window capacity=" << capacity_ << " emitted=" << emitted_
            << " window_size=" << ring_.size() << "\n";
        size_t start = head_;
        for (size_t k = 0; k < ring_.size(); ++k) {
            out << "id " << ring_[(start + k) % ring_.size()] << "\n";
        }
    }

private:
    void push(uint16_t id) {
        if (ring_.size() < capacity_) {
            ring_.push_back(id);
        } else {
            in_window_[ring_[head_]] = false;
            ring_[head_] = id;
            head_ = (head_ + 1) % capacity_;
        }
        in_window_[id] = true;
    }

    uint32_t capacity_;
    std::vector<uint16_t> ring_;
    size_t head_ = 0;
    std::bitset<65536> in_window_;
    uint64_t emitted_ = 0;
};

}  // namespace covertsim::os
