#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace stochcode {

// Radius search over a fixed list of short words (u <= 128). Each word is cut
// into c chunks; a word within distance rho of y agrees with y to within
// floor(rho / c) on some chunk, so only buckets reachable by low-weight chunk
// flips are inspected.
class NearIndex {
public:
    NearIndex(std::vector<std::uint64_t> words, std::size_t u, std::size_t radius);
    NearIndex(const NearIndex&) = delete;
    NearIndex& operator=(const NearIndex&) = delete;

    std::size_t size() const { return count_; }
    std::size_t stride() const { return stride_; }
    std::size_t chunks() const { return chunks_.size(); }
    const std::uint64_t* word(std::size_t id) const { return words_.data() + id * stride_; }

    // Ids of all words within the radius of y, sorted.
    void query(const std::uint64_t* y, std::vector<std::uint32_t>& out) const;

private:
    struct Chunk {
        std::size_t start;
        std::size_t width;
        std::vector<std::uint32_t> offsets;
        std::vector<std::uint32_t> ids;
        const std::vector<std::uint32_t>* patterns;
    };

    std::vector<std::uint64_t> words_;
    std::size_t u_;
    std::size_t radius_;
    std::size_t stride_;
    std::size_t count_;
    std::vector<Chunk> chunks_;
    std::vector<std::vector<std::uint32_t>> pattern_sets_;
};

inline std::uint64_t extract_bits(const std::uint64_t* w, std::size_t start, std::size_t width) {
    const std::size_t q = start >> 6, r = start & 63;
    std::uint64_t v = w[q] >> r;
    if (r != 0 && r + width > 64) v |= w[q + 1] << (64 - r);
    return width == 64 ? v : v & ((std::uint64_t{1} << width) - 1);
}

} // namespace stochcode
