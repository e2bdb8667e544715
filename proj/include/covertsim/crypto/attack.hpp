#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "covertsim/crypto/log_table.hpp"
#include "covertsim/crypto/sample_set.hpp"
#include "covertsim/modmath.hpp"
#include "covertsim/os/flowlabel_prng.hpp"

namespace covertsim::crypto {

inline constexpr uint32_t kLcgModulus = os::FlowLabelPrng::kLcgModulus;
inline constexpr uint32_t kGroupModulus = os::FlowLabelPrng::kGroupModulus;
inline constexpr uint32_t kGroupOrder = kGroupModulus - 1;
inline constexpr uint32_t kSegmentSize = 104854;  // ceil(group order / 5)
inline constexpr size_t kMinPairs = 77;

enum class AttackStatus {
    ok,
    insufficient_pairs,
    mask_not_found,
    mask_ambiguous,
    generator_not_found,
    generator_ambiguous,
    lcg_recovery_failed,
};

inline const char* to_string(AttackStatus s) {
    switch (s) {
        case AttackStatus::ok: return "ok";
        case AttackStatus::insufficient_pairs: return "insufficient pairs";
        case AttackStatus::mask_not_found: return "mask not found";
        case AttackStatus::mask_ambiguous: return "mask ambiguous";
        case AttackStatus::generator_not_found: return "generator not found";
        case AttackStatus::generator_ambiguous: return "generator ambiguous";
        case AttackStatus::lcg_recovery_failed: return "lcg recovery failed";
    }
    return "?";
}

/// Mask-recovery output. step_factor is (log2 of the generator * increment)
/// mod 12 and pins the per-pair internal step counts.
struct MaskRecovery {
    AttackStatus status = AttackStatus::mask_not_found;
    uint32_t mask = 0;
    uint32_t step_factor = 0;             // 1, 5, 7 or 11
    std::vector<uint8_t> pair_steps;      // steps per pair; 0xff = outside [2,8]
    std::vector<uint32_t> surviving_pairs;
    double threshold = 0.0;
    uint32_t masks_passing = 0;
    std::vector<uint32_t> tied_masks;
};

struct GeneratorCandidate {
    uint32_t gen = 0;
    uint32_t gen_log = 0;  // e with gen = 2^e mod N
    int empty_segment = -1;
};

/// Phase-3 survivor: the generator plus the feasible range for the exponent
/// offset, summarized by a chosen representative at the range midpoint.
struct PrunedGenerator {
    GeneratorCandidate candidate;
    int64_t window_min = 0;  // extent of (lcg_state + offset), unwrap-adjusted
    int64_t window_max = 0;
    uint32_t offset_candidates = 0;  // size of the feasible offset range
    uint32_t offset_chosen = 0;      // midpoint representative, mod group order
};

struct LcgRecovery {
    AttackStatus status = AttackStatus::lcg_recovery_failed;
    uint32_t mult = 1;
    uint32_t inc = 0;
    int offset_retries = 0;
};

struct RecoveredSeed {
    uint32_t mask = 0;
    uint32_t gen = 0;
    uint32_t gen_log = 0;
    uint32_t exp_offset = 0;
    uint32_t offset_candidates = 0;
    uint32_t mult = 1;
    uint32_t inc = 0;
    uint32_t step_factor = 0;
    std::vector<uint8_t> pair_steps;
};

struct AttackReport {
    AttackStatus status = AttackStatus::mask_not_found;
    RecoveredSeed seed;
    double phase1_ms = 0, phase2_ms = 0, phase3_ms = 0, phase4_ms = 0;
    size_t pairs_total = 0;
    size_t pairs_surviving = 0;
    uint32_t masks_passing = 0;
    size_t generator_candidates = 0;
    size_t generators_surviving = 0;
    int offset_retries = 0;
    size_t validated_pairs = 0;
    size_t consistent_pairs = 0;
    std::string error;

    bool ok() const { return status == AttackStatus::ok; }
    double total_ms() const { return phase1_ms + phase2_ms + phase3_ms + phase4_ms; }
};

/// Roll the LCG state forward n steps.
inline uint32_t lcg_advance(uint32_t x, uint32_t n, uint32_t mult, uint32_t inc,
                            uint64_t modulus = kLcgModulus) {
    uint64_t acc = 1, series = 0;
    for (uint32_t k = 0; k < n; ++k) {
        series = (series + acc) % modulus;
        acc = (acc * mult) % modulus;
    }
    return static_cast<uint32_t>((acc * x + series * inc) % modulus);
}

/// Full seed recovery from observed consecutive flow labels.
class FlowLabelAttack {
public:
    struct Config {
        bool mask_prefilter = true;  // coarse first pass over a pair subset
        int max_offset_retries = 8;
        size_t beam_limit = 16;
        double min_valid_fraction = 2.0 / 3.0;
    };

    explicit FlowLabelAttack(const LogTable& table) : table_(table) {}
    FlowLabelAttack(const LogTable& table, const Config& cfg)
        : table_(table), cfg_(cfg) {}

    /// Phase 1: recover the output mask by enumerating all 2^19 candidates
    /// and testing the mod-12 log differences of consecutive pairs against
    /// the four step-factor profiles.
    MaskRecovery recover_mask(const SampleSet& samples) const {
        MaskRecovery out;
        const size_t pair_count = samples.pair_count();
        if (pair_count < kMinPairs) {
            out.status = AttackStatus::insufficient_pairs;
            return out;
        }
        std::vector<uint32_t> first, second;
        first.reserve(pair_count);
        second.reserve(pair_count);
        for (const auto& [f, s] : samples.pairs) {
            first.push_back(f);
            second.push_back(s);
        }

        double threshold = 7.0 / 12.0 * static_cast<double>(pair_count) +
                           5.0 * std::sqrt(77.0 * static_cast<double>(pair_count)) / 12.0;
        uint32_t int_threshold =
            static_cast<uint32_t>(std::ceil(threshold - 1e-9));
        out.threshold = threshold;

        size_t prefilter_pairs = (cfg_.mask_prefilter && pair_count >= 64) ? 32 : 0;
        uint32_t prefilter_keep = static_cast<uint32_t>(3 * prefilter_pairs / 4);

        struct Hit {
            uint32_t mask;
            uint32_t factor;
            uint32_t score;
        };
        std::vector<Hit> hits;
        for (uint32_t mask = 0; mask < (1u << 19); ++mask) {
            if (prefilter_pairs != 0) {
                auto [score, factor] =
                    score_mask(first.data(), second.data(), prefilter_pairs, mask);
                if (score < prefilter_keep) continue;
            }
            auto [score, factor] =
                score_mask(first.data(), second.data(), pair_count, mask);
            if (score >= int_threshold) hits.push_back({mask, factor, score});
        }

        out.masks_passing = static_cast<uint32_t>(hits.size());
        if (hits.empty()) {
            out.status = AttackStatus::mask_not_found;
            return out;
        }
        if (hits.size() > 1) {
            out.status = AttackStatus::mask_ambiguous;
            for (const Hit& h : hits) out.tied_masks.push_back(h.mask);
            return out;
        }

        out.status = AttackStatus::ok;
        out.mask = hits[0].mask;
        out.step_factor = hits[0].factor;
        // step_factor is self-inverse mod 12, so steps = diff * factor mod 12
        out.pair_steps.assign(pair_count, 0xff);
        for (size_t i = 0; i < pair_count; ++i) {
            uint8_t la = table_.log2_mod12(first[i] ^ out.mask);
            uint8_t lb = table_.log2_mod12(second[i] ^ out.mask);
            if (la == LogTable::kInvalidLog12 || lb == LogTable::kInvalidLog12) continue;
            uint32_t d = (12 + lb - la) % 12;
            uint32_t n = d * out.step_factor % 12;
            if (n >= 2 && n <= 8) {
                out.pair_steps[i] = static_cast<uint8_t>(n);
                out.surviving_pairs.push_back(static_cast<uint32_t>(i));
            }
        }
        return out;
    }

    /// Phase 2: enumerate one exponent per {g, g^-1} pair and keep generators
    /// whose implied (state + offset) values leave one of five equal segments
    /// of the group order empty.
    std::vector<GeneratorCandidate> candidate_generators(const SampleSet& samples,
                                                         uint32_t mask) const {
        std::vector<uint32_t> logs = value_logs(samples, mask);
        std::vector<GeneratorCandidate> candidates;
        uint64_t pow = 1;  // 2^e as e advances
        for (uint32_t e = 1; e < kGroupOrder / 2; ++e) {
            pow = (pow * 2) % kGroupModulus;
            if (e % 2 == 0 || e % 3 == 0 || e % 14563 == 0) continue;
            uint64_t w = inv_mod(e, kGroupOrder);
            bool seen[5] = {false, false, false, false, false};
            int covered = 0;
            for (uint32_t lv : logs) {
                uint32_t u = static_cast<uint32_t>(
                    static_cast<uint64_t>(w) * lv % kGroupOrder);
                int seg = static_cast<int>(u / kSegmentSize);
                if (!seen[seg]) {
                    seen[seg] = true;
                    if (++covered == 5) break;
                }
            }
            if (covered < 5) {
                int empty = 0;
                while (seen[empty]) ++empty;
                candidates.push_back({static_cast<uint32_t>(pow), e, empty});
            }
        }
        return candidates;
    }

    /// Phase 3: bound the (state + offset) window per candidate, discard
    /// windows wider than the LCG modulus (or implausibly tight), and pick
    /// the offset-range midpoint as representative.
    std::vector<PrunedGenerator> prune_generators(
        const SampleSet& samples, uint32_t mask,
        const std::vector<GeneratorCandidate>& candidates) const {
        std::vector<uint32_t> logs = value_logs(samples, mask);
        std::vector<PrunedGenerator> out;
        for (const GeneratorCandidate& cand : candidates) {
            uint64_t w = inv_mod(cand.gen_log, kGroupOrder);
            int64_t anchor = static_cast<int64_t>(
                std::min<uint64_t>(static_cast<uint64_t>(cand.empty_segment + 1) *
                                       kSegmentSize,
                                   kGroupOrder));
            int64_t vmin = kGroupOrder, vmax = -1;
            for (uint32_t lv : logs) {
                uint32_t u = static_cast<uint32_t>(
                    static_cast<uint64_t>(w) * lv % kGroupOrder);
                int64_t v = (static_cast<int64_t>(u) - anchor) % kGroupOrder;
                if (v < 0) v += kGroupOrder;
                vmin = std::min(vmin, v);
                vmax = std::max(vmax, v);
            }
            int64_t spread = vmax - vmin + 1;
            if (spread > kLcgModulus) continue;      // wider than the LCG range
            if (2 * spread < kLcgModulus) continue;  // implausibly tight cluster
            PrunedGenerator p;
            p.candidate = cand;
            p.window_min = anchor + vmin;
            p.window_max = anchor + vmax;
            p.offset_candidates = static_cast<uint32_t>(kLcgModulus - spread + 1);
            int64_t mid = (p.window_max - kLcgModulus + 1 + p.window_min) / 2;
            p.offset_chosen = normalize_offset(mid);
            out.push_back(p);
        }
        return out;
    }

    /// Phase 4: recover multiplier and increment by residue lifting, one
    /// factor of 3 or 2 at a time, keeping extensions that pass a count
    /// threshold over the informative pairs.
    LcgRecovery recover_lcg(const SampleSet& samples, const MaskRecovery& mask_info,
                            const PrunedGenerator& pruned, uint32_t offset) const {
        LcgRecovery out;
        uint64_t w = inv_mod(pruned.candidate.gen_log, kGroupOrder);
        struct PairState {
            uint32_t x0, x1;
            uint8_t steps;
        };
        std::vector<PairState> pairs;
        for (uint32_t idx : mask_info.surviving_pairs) {
            const auto& [f0, f1] = samples.pairs[idx];
            uint32_t x0, x1;
            if (!state_from_label(f0, mask_info.mask, w, offset, x0)) continue;
            if (!state_from_label(f1, mask_info.mask, w, offset, x1)) continue;
            pairs.push_back({x0, x1, mask_info.pair_steps[idx]});
        }

        uint32_t log_mod12 = pruned.candidate.gen_log % 12;
        uint32_t inc0 = log_mod12 * mask_info.step_factor % 12;  // self-inverse log
        struct Branch {
            uint32_t mult, inc;
            uint32_t score;
        };
        std::vector<Branch> beam{{1, inc0, 0}};
        uint64_t modulus = 12;
        static constexpr int kFactors[11] = {3, 3, 3, 3, 3, 3, 2, 2, 2, 2, 2};
        for (int factor : kFactors) {
            uint64_t next_modulus = modulus * factor;
            size_t informative = 0;
            for (const PairState& p : pairs) {
                if (factor == 3 && (p.steps == 3 || p.steps == 6)) continue;
                if (factor == 2 && (p.steps == 4 || p.steps == 8)) continue;
                ++informative;
            }
            double pt = static_cast<double>(informative);
            double threshold = factor == 3
                                   ? pt / 3.0 + 5.0 * std::sqrt(2.0 * pt) / 3.0
                                   : pt / 2.0 + 2.5 * std::sqrt(pt);
            auto int_threshold = static_cast<uint32_t>(std::ceil(threshold - 1e-9));

            std::vector<Branch> next;
            for (const Branch& br : beam) {
                for (int ma = 0; ma < factor; ++ma) {
                    for (int mb = 0; mb < factor; ++mb) {
                        uint32_t mult =
                            static_cast<uint32_t>(br.mult + modulus * ma);
                        uint32_t inc = static_cast<uint32_t>(br.inc + modulus * mb);
                        uint32_t score = 0;
                        for (const PairState& p : pairs) {
                            if (factor == 3 && (p.steps == 3 || p.steps == 6)) continue;
                            if (factor == 2 && (p.steps == 4 || p.steps == 8)) continue;
                            if (lcg_advance(p.x0 % next_modulus, p.steps, mult, inc,
                                            next_modulus) == p.x1 % next_modulus) {
                                ++score;
                            }
                        }
                        if (score >= int_threshold) next.push_back({mult, inc, score});
                    }
                }
            }
            if (next.empty()) {
                out.status = AttackStatus::lcg_recovery_failed;
                return out;
            }
            std::sort(next.begin(), next.end(), [](const Branch& a, const Branch& b) {
                if (a.score != b.score) return a.score > b.score;
                if (a.mult != b.mult) return a.mult < b.mult;
                return a.inc < b.inc;
            });
            if (next.size() > cfg_.beam_limit) next.resize(cfg_.beam_limit);
            beam = std::move(next);
            modulus = next_modulus;
        }

        // final pick: best full-range consistency over all surviving pairs
        uint32_t best_score = 0;
        size_t best_count = 0;
        for (const Branch& br : beam) {
            uint32_t score = 0;
            for (const PairState& p : pairs) {
                if (lcg_advance(p.x0, p.steps, br.mult, br.inc) == p.x1) ++score;
            }
            if (score > best_score) {
                best_score = score;
                out.mult = br.mult;
                out.inc = br.inc;
                best_count = 1;
            } else if (score == best_score) {
                ++best_count;
            }
        }
        if (best_score == 0 || best_count != 1) {
            out.status = AttackStatus::lcg_recovery_failed;
            return out;
        }
        out.status = AttackStatus::ok;
        return out;
    }

    /// All four phases plus validation and timing.
    AttackReport run(const SampleSet& samples) const {
        using clock = std::chrono::steady_clock;
        AttackReport report;
        report.pairs_total = samples.pair_count();

        auto t0 = clock::now();
        MaskRecovery mask = recover_mask(samples);
        report.phase1_ms = ms_since(t0);
        report.masks_passing = mask.masks_passing;
        if (mask.status != AttackStatus::ok) {
            report.status = mask.status;
            report.error = std::string("phase 1: ") + to_string(mask.status);
            return report;
        }
        report.pairs_surviving = mask.surviving_pairs.size();

        t0 = clock::now();
        auto candidates = candidate_generators(samples, mask.mask);
        report.phase2_ms = ms_since(t0);
        report.generator_candidates = candidates.size();
        if (candidates.empty()) {
            report.status = AttackStatus::generator_not_found;
            report.error = "phase 2: no generator candidate left a segment empty";
            return report;
        }

        t0 = clock::now();
        auto pruned = prune_generators(samples, mask.mask, candidates);
        report.phase3_ms = ms_since(t0);
        report.generators_surviving = pruned.size();
        if (pruned.empty()) {
            report.status = AttackStatus::generator_not_found;
            report.error = "phase 3: every candidate was pruned";
            return report;
        }

        t0 = clock::now();
        struct Validated {
            RecoveredSeed seed;
            size_t consistent;
            int retries;
        };
        std::vector<Validated> winners;
        for (const PrunedGenerator& p : pruned) {
            int retries = 0;
            for (uint32_t offset : offset_schedule(p)) {
                LcgRecovery lcg = recover_lcg(samples, mask, p, offset);
                if (lcg.status != AttackStatus::ok) {
                    ++retries;
                    if (retries > cfg_.max_offset_retries) break;
                    continue;
                }
                RecoveredSeed seed;
                seed.mask = mask.mask;
                seed.gen = p.candidate.gen;
                seed.gen_log = p.candidate.gen_log;
                seed.exp_offset = offset;
                seed.offset_candidates = p.offset_candidates;
                seed.mult = lcg.mult;
                seed.inc = lcg.inc;
                seed.step_factor = mask.step_factor;
                seed.pair_steps = mask.pair_steps;
                size_t consistent = count_consistent(samples, mask, seed);
                if (static_cast<double>(consistent) >=
                    cfg_.min_valid_fraction *
                        static_cast<double>(mask.surviving_pairs.size())) {
                    winners.push_back({std::move(seed), consistent, retries});
                    break;
                }
                ++retries;
                if (retries > cfg_.max_offset_retries) break;
            }
        }
        report.phase4_ms = ms_since(t0);

        if (winners.empty()) {
            report.status = AttackStatus::lcg_recovery_failed;
            report.error = "phase 4: no lift path validated";
            return report;
        }
        if (winners.size() > 1) {
            report.status = AttackStatus::generator_ambiguous;
            report.error = "phase 4: multiple generators validated";
            return report;
        }
        report.status = AttackStatus::ok;
        report.seed = winners[0].seed;
        report.offset_retries = winners[0].retries;
        report.validated_pairs = mask.surviving_pairs.size();
        report.consistent_pairs = winners[0].consistent;
        return report;
    }

private:
    /// Score one mask candidate: the best of the four step-factor profiles.
    std::pair<uint32_t, uint32_t> score_mask(const uint32_t* first,
                                             const uint32_t* second, size_t count,
                                             uint32_t mask) const {
        uint32_t c[12] = {0};
        for (size_t i = 0; i < count; ++i) {
            uint8_t la = table_.log2_mod12(first[i] ^ mask);
            uint8_t lb = table_.log2_mod12(second[i] ^ mask);
            if (la == LogTable::kInvalidLog12 || lb == LogTable::kInvalidLog12) continue;
            ++c[(12 + lb - la) % 12];
        }
        // profiles of d = steps * factor mod 12 for steps in [2,8]
        uint32_t x1 = c[2] + c[3] + c[4] + c[5] + c[6] + c[7] + c[8];
        uint32_t x5 = c[1] + c[3] + c[4] + c[6] + c[8] + c[10] + c[11];
        uint32_t x7 = c[1] + c[2] + c[4] + c[6] + c[8] + c[9] + c[11];
        uint32_t x11 = c[4] + c[5] + c[6] + c[7] + c[8] + c[9] + c[10];
        uint32_t best = x1, factor = 1;
        if (x5 > best) { best = x5; factor = 5; }
        if (x7 > best) { best = x7; factor = 7; }
        if (x11 > best) { best = x11; factor = 11; }
        return {best, factor};
    }

    std::vector<uint32_t> value_logs(const SampleSet& samples, uint32_t mask) const {
        std::vector<uint32_t> logs;
        logs.reserve(samples.values.size());
        for (uint32_t v : samples.values) {
            uint32_t m = v ^ mask;
            if (table_.valid(m)) logs.push_back(table_.log2_of(m));
        }
        return logs;
    }

    bool state_from_label(uint32_t value, uint32_t mask, uint64_t w, uint32_t offset,
                          uint32_t& x_out) const {
        uint32_t m = value ^ mask;
        if (!table_.valid(m)) return false;
        uint64_t u = w * table_.log2_of(m) % kGroupOrder;
        uint64_t x = (u + kGroupOrder - offset) % kGroupOrder;
        if (x >= kLcgModulus) return false;
        x_out = static_cast<uint32_t>(x);
        return true;
    }

    static uint32_t normalize_offset(int64_t v) {
        int64_t m = static_cast<int64_t>(kGroupOrder);
        v %= m;
        if (v < 0) v += m;
        return static_cast<uint32_t>(v);
    }

    /// Offsets to try in phase 4: the midpoint first, then points spread
    /// across the feasible range for the retry loop.
    std::vector<uint32_t> offset_schedule(const PrunedGenerator& p) const {
        std::vector<uint32_t> offsets{p.offset_chosen};
        int64_t low = p.window_max - kLcgModulus + 1;
        int64_t high = p.window_min;
        int64_t span = high - low;
        for (int k = 0; k <= cfg_.max_offset_retries && span > 0; ++k) {
            uint32_t o = normalize_offset(low + span * k / cfg_.max_offset_retries);
            if (std::find(offsets.begin(), offsets.end(), o) == offsets.end()) {
                offsets.push_back(o);
            }
        }
        return offsets;
    }

    size_t count_consistent(const SampleSet& samples, const MaskRecovery& mask,
                            const RecoveredSeed& seed) const {
        uint64_t w = inv_mod(seed.gen_log, kGroupOrder);
        size_t consistent = 0;
        for (uint32_t idx : mask.surviving_pairs) {
            const auto& [f0, f1] = samples.pairs[idx];
            uint32_t x0, x1;
            if (!state_from_label(f0, seed.mask, w, seed.exp_offset, x0)) continue;
            if (!state_from_label(f1, seed.mask, w, seed.exp_offset, x1)) continue;
            if (lcg_advance(x0, mask.pair_steps[idx], seed.mult, seed.inc) == x1) {
                ++consistent;
            }
        }
        return consistent;
    }

    static double ms_since(std::chrono::steady_clock::time_point t0) {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }

    const LogTable& table_;
    Config cfg_;
};

struct Prediction {
    bool ok = false;
    std::array<uint32_t, 7> labels{};  // 19-bit candidates for steps 2..8
};

/// Forward prediction: invert a fresh label to the LCG state and list the
/// seven possible next labels (one per internal step count in [2,8]).
inline Prediction predict_next(uint32_t label, const RecoveredSeed& seed,
                               const LogTable& table) {
    Prediction out;
    uint32_t m = (label & 0x7ffff) ^ seed.mask;
    if (!table.valid(m)) return out;  // mask xor label outside the group
    uint64_t w = inv_mod(seed.gen_log, kGroupOrder);
    uint64_t u = w * table.log2_of(m) % kGroupOrder;
    uint64_t x = (u + kGroupOrder - seed.exp_offset) % kGroupOrder;
    // beyond the observed window the state frame is undefined; reduce and
    // predict anyway, the caller accounts for the failure band
    uint32_t x0 = static_cast<uint32_t>(x % kLcgModulus);
    for (uint32_t n = 2; n <= 8; ++n) {
        uint32_t xn = lcg_advance(x0, n, seed.mult, seed.inc);
        out.labels[n - 2] =
            seed.mask ^ static_cast<uint32_t>(pow_mod(
                            seed.gen, xn + seed.exp_offset, kGroupModulus));
    }
    out.ok = true;
    return out;
}

/// Ground-truth comparison: the recovered seed matches if it equals the true
/// seed or its negation up to the inherent offset shift (offset +k pairs with
/// increment +(1-mult)k).
inline bool recovered_matches(const os::FlowLabelSeed& truth,
                              const RecoveredSeed& rec) {
    auto check_frame = [&](uint32_t gen, uint32_t offset, uint32_t inc) {
        if (rec.gen != gen || rec.mask != truth.out_mask || rec.mult != truth.mult) {
            return false;
        }
        int64_t k = (static_cast<int64_t>(offset) - rec.exp_offset) % kGroupOrder;
        if (k > kGroupOrder / 2) k -= kGroupOrder;
        if (k < -(static_cast<int64_t>(kGroupOrder) / 2)) k += kGroupOrder;
        if (k <= -static_cast<int64_t>(kLcgModulus) ||
            k >= static_cast<int64_t>(kLcgModulus)) {
            return false;
        }
        int64_t m = kLcgModulus;
        int64_t shifted =
            ((inc + (1 - static_cast<int64_t>(truth.mult)) % m * k) % m + m) % m;
        return static_cast<int64_t>(rec.inc) == shifted;
    };
    // direct frame
    if (check_frame(truth.gen, truth.exp_offset, truth.inc)) return true;
    // negated frame: inverse generator, reflected offset, negated increment
    uint32_t neg_gen = static_cast<uint32_t>(inv_mod(truth.gen, kGroupModulus));
    uint32_t neg_offset = static_cast<uint32_t>(
        (kGroupOrder - (static_cast<uint64_t>(kLcgModulus) + truth.exp_offset) %
                           kGroupOrder) %
        kGroupOrder);
    uint32_t neg_inc = kLcgModulus - truth.inc;
    return check_frame(neg_gen, neg_offset, neg_inc);
}

}  // namespace covertsim::crypto
