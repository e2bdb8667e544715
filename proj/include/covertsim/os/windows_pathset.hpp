#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <vector>

#include "covertsim/clock.hpp"

namespace covertsim::os {

/// Windows per-(source, destination) IPv4 ID state. Each address tuple owns a
/// Path object holding a 16-bit counter seeded with random data; counters are
/// reclaimed in batch purge sequences that walk the whole set at a fixed rate
/// and drop entries whose last access is older than the stale TTL.
///
/// Purge progress is evaluated lazily: every mutating call first replays the
/// visits whose nominal time has passed, judging staleness at each entry's
/// exact visit time. Observable state is identical to a tick-driven purge.
class WindowsPathSet {
public:
    struct Config {
        double stale_ttl = 60.0;        // seconds before an entry may be purged
        double purge_rate = 2000.0;     // entries visited per second
        uint32_t flood_threshold = 5000;  // new paths per half-second window
        uint32_t size_threshold = 32768;
        double flood_window_len = 0.5;
        bool double_purge_bug = false;  // run a second sequence right after the first
    };

    struct TickReport {
        uint64_t purged_count = 0;
        bool sequence_active = false;
    };

    WindowsPathSet() = default;
    explicit WindowsPathSet(const Config& cfg) : cfg_(cfg) {}

    /// Emit the IPv4 ID for a packet from src_ip to dst_ip. Creates the Path
    /// with a random counter base on first use, then increments per packet.
    template <class R>
    uint16_t emit(const SimClock& clock, uint32_t src_ip, uint32_t dst_ip, R& rng) {
        advance(clock.now);
        uint64_t key = (static_cast<uint64_t>(src_ip) << 32) | dst_ip;
        auto it = paths_.find(key);
        if (it == paths_.end()) {
            Path p;
            p.counter = static_cast<uint16_t>(rng.uniform(0x10000));
            p.last_access = clock.now;
            it = paths_.emplace(key, p).first;
            ++created_;
            note_new_path(clock.now);
        }
        Path& p = it->second;
        p.counter = static_cast<uint16_t>((p.counter + 1) & 0xffff);
        p.last_access = clock.now;
        return p.counter;
    }

    /// Advance purge machinery to the clock and report progress since the
    /// previous call.
    TickReport tick(const SimClock& clock) {
        advance(clock.now);
        TickReport r{purged_since_tick_, purge_active_};
        purged_since_tick_ = 0;
        return r;
    }

    bool contains(uint32_t src_ip, uint32_t dst_ip) const {
        return paths_.count((static_cast<uint64_t>(src_ip) << 32) | dst_ip) != 0;
    }

    size_t size() const { return paths_.size(); }
    uint64_t total_created() const { return created_; }
    uint64_t total_purged() const { return purged_; }
    bool purge_active() const { return purge_active_; }

    /// Entries removed with last access newer than the stale TTL. Stays zero;
    /// the non-disruption acceptance check asserts it across every run.
    uint64_t disruption_violations() const { return disruption_violations_; }

    /// Youngest entry age seen at a purge removal, for the same check.
    double min_purged_age() const { return min_purged_age_; }

    const Config& config() const { return cfg_; }

    void snapshot(std::ostream& out) const {
        out << "windows_pathset size=" << paths_.size() << " created=" << created_
            << " purged=" << purged_ << " purge_active=" << (purge_active_ ? 1 : 0)
            << "\n";
        for (const auto& [key, p] : paths_) {
            out << "path " << (key >> 32) << ":" << (key & 0xffffffffu)
                << " counter=" << p.counter << " last_access=" << p.last_access
                << "\n";
        }
    }

private:
    struct Path {
        uint16_t counter = 0;
        double last_access = 0.0;
    };

    void note_new_path(double now) {
        uint64_t window = static_cast<uint64_t>(now / cfg_.flood_window_len);
        if (window != flood_window_index_) {
            flood_window_index_ = window;
            flood_window_count_ = 0;
        }
        ++flood_window_count_;
        if (!purge_active_ &&
            (flood_window_count_ >= cfg_.flood_threshold ||
             paths_.size() >= cfg_.size_threshold)) {
            start_purge(now);
        }
    }

    void start_purge(double now) {
        purge_active_ = true;
        purge_start_ = now;
        purge_cursor_ = 0;
        purge_keys_.clear();
        purge_keys_.reserve(paths_.size());
        for (const auto& [key, p] : paths_) purge_keys_.push_back(key);
    }

    void advance(double now) {
        while (purge_active_) {
            if (purge_cursor_ >= purge_keys_.size()) {
                finish_purge();
                continue;
            }
            double visit_time = purge_start_ + static_cast<double>(purge_cursor_) / cfg_.purge_rate;
            if (visit_time > now) break;
            uint64_t key = purge_keys_[purge_cursor_++];
            auto it = paths_.find(key);
            if (it != paths_.end()) {
                double age = visit_time - it->second.last_access;
                if (age > cfg_.stale_ttl) {
                    if (age < min_purged_age_) min_purged_age_ = age;
                    if (age < cfg_.stale_ttl) ++disruption_violations_;
                    paths_.erase(it);
                    ++purged_;
                    ++purged_since_tick_;
                }
            }
        }
    }

    void finish_purge() {
        double end_time =
            purge_start_ + static_cast<double>(purge_keys_.size()) / cfg_.purge_rate;
        purge_keys_.clear();
        purge_cursor_ = 0;
        if (cfg_.double_purge_bug && !rerun_done_) {
            rerun_done_ = true;
            start_purge(end_time);
            return;
        }
        purge_active_ = false;
        rerun_done_ = false;
    }

    Config cfg_;
    std::map<uint64_t, Path> paths_;

    uint64_t flood_window_index_ = ~uint64_t{0};
    uint32_t flood_window_count_ = 0;

    bool purge_active_ = false;
    bool rerun_done_ = false;
    double purge_start_ = 0.0;
    size_t purge_cursor_ = 0;
    std::vector<uint64_t> purge_keys_;

    uint64_t created_ = 0;
    uint64_t purged_ = 0;
    uint64_t purged_since_tick_ = 0;
    uint64_t disruption_violations_ = 0;
    double min_purged_age_ = 1e300;
};

}  // namespace covertsim::os
