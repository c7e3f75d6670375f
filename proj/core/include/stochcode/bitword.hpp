#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace stochcode {

class Rng;

// Fixed-length bit string. Bit i lives in word i/64 at position i%64.
// Bits past size() in the last word are always zero.
class BitWord {
public:
    BitWord() = default;
    explicit BitWord(std::size_t nbits);

    // Character i of `bits` becomes bit i. Only '0' and '1' allowed.
    static BitWord from_string(std::string_view bits);
    // Low `nbits` bits of `value`, bit 0 first.
    static BitWord from_uint(std::uint64_t value, std::size_t nbits);
    static BitWord random(std::size_t nbits, Rng& rng);

    std::size_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v);
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    // Up to 64 bits starting at `offset`, bit `offset` in position 0.
    std::uint64_t get_bits(std::size_t offset, std::size_t count) const;
    void set_bits(std::size_t offset, std::size_t count, std::uint64_t value);

    BitWord slice(std::size_t offset, std::size_t count) const;
    void assign(std::size_t offset, const BitWord& src);
    void append(const BitWord& other);

    std::size_t weight() const;
    std::size_t distance(const BitWord& other) const;

    BitWord& operator^=(const BitWord& other);
    friend BitWord operator^(BitWord a, const BitWord& b) { return a ^= b; }
    bool operator==(const BitWord& other) const = default;

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& words() { return words_; }

    std::string to_string() const;

    // 8-byte little-endian bit count, then ceil(n/8) bytes; bit 8j+k is bit k
    // of byte j and the unused high bits of the final byte are zero.
    std::vector<std::uint8_t> serialize() const;
    static BitWord deserialize(const std::vector<std::uint8_t>& bytes);
    static BitWord deserialize(const std::uint8_t* data, std::size_t len, std::size_t* consumed);

private:
    void trim();

    std::vector<std::uint64_t> words_;
    std::size_t nbits_ = 0;
};

std::ostream& operator<<(std::ostream& os, const BitWord& w);

BitWord concat(const std::vector<BitWord>& parts);

} // namespace stochcode
