#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace covertsim::os {

/// Generator hardening policies. `none` must reproduce the unmitigated
/// generator bit-for-bit; the others close specific leak classes:
///  - zero_id_when_df: emit ID=0 for atomic (DF=1) packets
///  - full_random_id: fresh random field per packet, no state
///  - per_destination_class: independent state per destination class
///    (private-range vs public destinations)
///  - per_container: independent state per container
enum class MitigationMode {
    none,
    zero_id_when_df,
    full_random_id,
    per_destination_class,
    per_container,
};

inline const char* to_string(MitigationMode m) {
    switch (m) {
        case MitigationMode::none: return "none";
        case MitigationMode::zero_id_when_df: return "zero_id_when_df";
        case MitigationMode::full_random_id: return "full_random_id";
        case MitigationMode::per_destination_class: return "per_destination_class";
        case MitigationMode::per_container: return "per_container";
    }
    return "?";
}

inline MitigationMode mitigation_from_string(const std::string& s) {
    if (s == "none") return MitigationMode::none;
    if (s == "zero_id_when_df") return MitigationMode::zero_id_when_df;
    if (s == "full_random_id") return MitigationMode::full_random_id;
    if (s == "per_destination_class") return MitigationMode::per_destination_class;
    if (s == "per_container") return MitigationMode::per_container;
    throw std::invalid_argument("unknown mitigation mode: " + s);
}

enum class GeneratorKind {
    ipv4_id,          // Linux counters, Windows paths, exclusion window
    tcp_isn,
    flow_label,
    syn_cache,        // stateful structure, no field to randomize
    icmp_rate_limit,  // stateful structure, no field to randomize
};

/// Randomization-style policies only make sense for generators that emit a
/// header field; state-structure leaks (SYN cache, rate limiter) can only be
/// compartmentalized.
inline bool policy_compatible(GeneratorKind kind, MitigationMode mode) {
    switch (mode) {
        case MitigationMode::none:
        case MitigationMode::per_destination_class:
        case MitigationMode::per_container:
            return true;
        case MitigationMode::zero_id_when_df:
            return kind == GeneratorKind::ipv4_id;
        case MitigationMode::full_random_id:
            return kind == GeneratorKind::ipv4_id || kind == GeneratorKind::tcp_isn ||
                   kind == GeneratorKind::flow_label;
    }
    return false;
}

/// Destination class under per_destination_class: 0 for private-range
/// (internal) destinations, 1 for public ones.
inline int dest_class(uint32_t addr) {
    uint32_t a = addr >> 24;
    uint32_t b = (addr >> 16) & 0xff;
    bool priv = a == 10 || (a == 172 && b >= 16 && b < 32) || (a == 192 && b == 168);
    return priv ? 0 : 1;
}

/// A generator variant under a mitigation policy: one inner instance per
/// state class. Class count is 1 for none/zero/random, 2 for destination
/// classes, and caller-chosen for containers.
template <class G>
class MitigatedGenerator {
public:
    MitigatedGenerator() = default;

    template <class Make>
    MitigatedGenerator(GeneratorKind kind, MitigationMode mode, int container_count,
                       Make&& make)
        : mode_(mode) {
        if (!policy_compatible(kind, mode)) {
            throw std::invalid_argument(std::string("mitigation ") + to_string(mode) +
                                        " is incompatible with this generator");
        }
        int n = 1;
        if (mode == MitigationMode::per_destination_class) n = 2;
        if (mode == MitigationMode::per_container) n = container_count;
        for (int i = 0; i < n; ++i) instances_.push_back(make(i));
    }

    MitigationMode mode() const { return mode_; }

    /// Instance serving a packet to `dst_addr` emitted via `container`.
    G& route(uint32_t dst_addr, int container) {
        switch (mode_) {
            case MitigationMode::per_destination_class:
                return instances_[dest_class(dst_addr)];
            case MitigationMode::per_container:
                return instances_[container % instances_.size()];
            default:
                return instances_[0];
        }
    }

    const std::vector<G>& instances() const { return instances_; }
    std::vector<G>& instances() { return instances_; }

private:
    MitigationMode mode_ = MitigationMode::none;
    std::vector<G> instances_;
};

}  // namespace covertsim::os
