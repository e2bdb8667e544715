#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace covertsim::crypto {

/// Flow-label observations available to the attacker: individual 19-bit
/// values (top bit already stripped) and the consecutive pairs among them.
/// A pair means the two labels were generated back to back; known gaps break
/// pairs but both values still count.
struct SampleSet {
    std::vector<uint32_t> values;
    std::vector<std::pair<uint32_t, uint32_t>> pairs;

    size_t value_count() const { return values.size(); }
    size_t pair_count() const { return pairs.size(); }

    /// Build from a gap-free run of consecutive 20-bit labels.
    static SampleSet from_labels(const std::vector<uint32_t>& labels) {
        std::vector<std::optional<uint32_t>> stream;
        stream.reserve(labels.size());
        for (uint32_t l : labels) stream.emplace_back(l);
        return from_stream(stream);
    }

    /// Build from a label stream where nullopt marks a known gap.
    static SampleSet from_stream(const std::vector<std::optional<uint32_t>>& stream) {
        SampleSet s;
        std::optional<uint32_t> prev;
        for (const auto& item : stream) {
            if (!item.has_value()) {
                prev.reset();
                continue;
            }
            uint32_t v = *item & 0x7ffff;
            s.values.push_back(v);
            if (prev.has_value()) s.pairs.emplace_back(*prev, v);
            prev = v;
        }
        return s;
    }

    /// Parse the line-delimited sample format: one 20-bit label per line,
    /// '-' (or 'gap') marking a known missing label, '#' starting a comment.
    static SampleSet parse(std::istream& in) {
        std::vector<std::optional<uint32_t>> stream;
        std::string line;
        size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            size_t hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            std::istringstream ls(line);
            std::string tok;
            if (!(ls >> tok)) continue;
            if (tok == "-" || tok == "gap") {
                stream.emplace_back(std::nullopt);
                continue;
            }
            unsigned long v;
            try {
                v = std::stoul(tok);
            } catch (const std::exception&) {
                throw std::runtime_error("sample file line " + std::to_string(line_no) +
                                         ": not a label: " + tok);
            }
            if (v >= (1ul << 20)) {
                throw std::runtime_error("sample file line " + std::to_string(line_no) +
                                         ": label out of 20-bit range");
            }
            stream.emplace_back(static_cast<uint32_t>(v));
        }
        return from_stream(stream);
    }
};

}  // namespace covertsim::crypto
