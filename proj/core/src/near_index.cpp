#include "near_index.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "stochcode/entropy.hpp"
#include "stochcode/errors.hpp"

namespace stochcode {

namespace {

constexpr std::size_t kMaxChunkBits = 22;
constexpr double kMaxIndexBytes = 512.0 * 1024 * 1024;

std::vector<std::uint32_t> low_weight_masks(std::size_t width, std::size_t max_weight) {
    std::vector<std::uint32_t> out;
    // Enumerate by weight so the zero mask comes first.
    for (std::size_t w = 0; w <= max_weight && w <= width; ++w) {
        if (w == 0) {
            out.push_back(0);
            continue;
        }
        std::uint32_t m = (std::uint32_t{1} << w) - 1;
        const std::uint32_t limit = std::uint32_t{1} << width;
        while (m < limit) {
            out.push_back(m);
            const std::uint32_t c = m & (~m + 1);
            const std::uint32_t r = m + c;
            m = (((r ^ m) >> 2) / c) | r;
        }
    }
    return out;
}

} // namespace

NearIndex::NearIndex(std::vector<std::uint64_t> words, std::size_t u, std::size_t radius)
    : words_(std::move(words)), u_(u), radius_(radius), stride_((u + 63) / 64) {
    require(u >= 1 && u <= 128, "NearIndex supports 1 <= u <= 128");
    require(words_.size() % stride_ == 0, "word buffer not a multiple of the stride");
    count_ = words_.size() / stride_;
    require(count_ < std::numeric_limits<std::uint32_t>::max(), "too many words");

    const double n = static_cast<double>(count_);
    double best_cost = std::numeric_limits<double>::infinity();
    std::size_t best_c = 0;
    for (std::size_t c = 1; c <= u; ++c) {
        const std::size_t wmax = (u + c - 1) / c;
        const std::size_t wmin = u / c;
        if (wmax > kMaxChunkBits) continue;
        if (wmin == 0) break;
        const double bytes = static_cast<double>(c) * (std::exp2(static_cast<double>(wmax)) + n) * 4.0;
        if (bytes > kMaxIndexBytes) continue;
        const std::size_t rc = radius / c;
        const double probes = std::exp2(log2_ball_volume(wmax, rc));
        const double cost = static_cast<double>(c) * probes * (1.0 + n / std::exp2(static_cast<double>(wmin)));
        if (cost < best_cost) {
            best_cost = cost;
            best_c = c;
        }
    }
    require(best_c != 0, "no feasible chunking for NearIndex");

    const std::size_t c = best_c;
    const std::size_t rc = radius / c;
    const std::size_t base = u / c, extra = u % c;
    pattern_sets_.resize(kMaxChunkBits + 1);
    std::size_t start = 0;
    chunks_.reserve(c);
    for (std::size_t i = 0; i < c; ++i) {
        const std::size_t width = base + (i < extra ? 1 : 0);
        if (pattern_sets_[width].empty()) pattern_sets_[width] = low_weight_masks(width, rc);
        Chunk ch{start, width, {}, {}, &pattern_sets_[width]};
        const std::size_t buckets = std::size_t{1} << width;
        ch.offsets.assign(buckets + 1, 0);
        for (std::size_t id = 0; id < count_; ++id) ++ch.offsets[extract_bits(word(id), start, width) + 1];
        for (std::size_t b = 0; b < buckets; ++b) ch.offsets[b + 1] += ch.offsets[b];
        ch.ids.resize(count_);
        std::vector<std::uint32_t> fill(ch.offsets.begin(), ch.offsets.end() - 1);
        for (std::size_t id = 0; id < count_; ++id)
            ch.ids[fill[extract_bits(word(id), start, width)]++] = static_cast<std::uint32_t>(id);
        chunks_.push_back(std::move(ch));
        start += width;
    }
}

void NearIndex::query(const std::uint64_t* y, std::vector<std::uint32_t>& out) const {
    out.clear();
    for (const Chunk& ch : chunks_) {
        const auto key = static_cast<std::uint32_t>(extract_bits(y, ch.start, ch.width));
        for (std::uint32_t pat : *ch.patterns) {
            const std::uint32_t b = key ^ pat;
            for (std::uint32_t k = ch.offsets[b]; k < ch.offsets[b + 1]; ++k) {
                const std::uint32_t id = ch.ids[k];
                const std::uint64_t* w = word(id);
                std::size_t d = 0;
                for (std::size_t j = 0; j < stride_; ++j) d += static_cast<std::size_t>(std::popcount(w[j] ^ y[j]));
                if (d <= radius_) out.push_back(id);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

} // namespace stochcode
