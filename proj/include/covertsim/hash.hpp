#pragma once

#include <cstdint>
#include <initializer_list>

#include "covertsim/rng.hpp"

namespace covertsim {

/// Keyed 64-bit mixing hash over a short tuple of words.
///
/// Used wherever a kernel keys a bucket table with a boot secret (Linux ID
/// counter array, BSD SYN-cache buckets). Only keyed-ness and uniformity
/// matter to the protocols built on top, so a splitmix-style mixer is enough.
inline uint64_t keyed_hash(uint64_t key, std::initializer_list<uint64_t> words) {
    uint64_t h = key ^ 0x243f6a8885a308d3ULL;
    for (uint64_t w : words) {
        h ^= w;
        h = Rng::splitmix64(h);
    }
    h = Rng::splitmix64(h);
    return h;
}

}  // namespace covertsim
