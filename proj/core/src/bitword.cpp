#include "stochcode/bitword.hpp"

#include <algorithm>
#include <bit>
#include <ostream>

#include "stochcode/errors.hpp"
#include "stochcode/rng.hpp"

namespace stochcode {

namespace {

std::uint64_t low_mask(std::size_t count) {
    return count >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << count) - 1);
}

} // namespace

BitWord::BitWord(std::size_t nbits) : words_((nbits + 63) / 64, 0), nbits_(nbits) {}

BitWord BitWord::from_string(std::string_view bits) {
    BitWord w(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            w.set(i, true);
        else if (bits[i] != '0')
            throw BadInput("BitWord::from_string: expected only '0' and '1'");
    }
    return w;
}

BitWord BitWord::from_uint(std::uint64_t value, std::size_t nbits) {
    require(nbits <= 64, "BitWord::from_uint: at most 64 bits");
    BitWord w(nbits);
    if (nbits > 0) w.words_[0] = value & low_mask(nbits);
    return w;
}

BitWord BitWord::random(std::size_t nbits, Rng& rng) {
    BitWord w(nbits);
    for (auto& x : w.words_) x = rng.next();
    w.trim();
    return w;
}

void BitWord::set(std::size_t i, bool v) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v)
        words_[i >> 6] |= m;
    else
        words_[i >> 6] &= ~m;
}

std::uint64_t BitWord::get_bits(std::size_t offset, std::size_t count) const {
    if (count == 0) return 0;
    require(count <= 64 && offset + count <= nbits_, "BitWord::get_bits: out of range");
    const std::size_t wi = offset >> 6, sh = offset & 63;
    std::uint64_t v = words_[wi] >> sh;
    if (sh != 0 && sh + count > 64) v |= words_[wi + 1] << (64 - sh);
    return v & low_mask(count);
}

void BitWord::set_bits(std::size_t offset, std::size_t count, std::uint64_t value) {
    if (count == 0) return;
    require(count <= 64 && offset + count <= nbits_, "BitWord::set_bits: out of range");
    value &= low_mask(count);
    const std::size_t wi = offset >> 6, sh = offset & 63;
    const std::uint64_t m = low_mask(count);
    words_[wi] = (words_[wi] & ~(m << sh)) | (value << sh);
    if (sh != 0 && sh + count > 64) {
        const std::size_t spill = sh + count - 64;
        const std::uint64_t m2 = low_mask(spill);
        words_[wi + 1] = (words_[wi + 1] & ~m2) | (value >> (64 - sh));
    }
}

BitWord BitWord::slice(std::size_t offset, std::size_t count) const {
    require(offset + count <= nbits_, "BitWord::slice: out of range");
    BitWord out(count);
    if ((offset & 63) == 0) {
        for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] = words_[(offset >> 6) + i];
        out.trim();
        return out;
    }
    for (std::size_t pos = 0; pos < count; pos += 64) {
        const std::size_t c = std::min<std::size_t>(64, count - pos);
        out.words_[pos >> 6] = get_bits(offset + pos, c);
    }
    return out;
}

void BitWord::assign(std::size_t offset, const BitWord& src) {
    require(offset + src.size() <= nbits_, "BitWord::assign: out of range");
    for (std::size_t pos = 0; pos < src.size(); pos += 64) {
        const std::size_t c = std::min<std::size_t>(64, src.size() - pos);
        set_bits(offset + pos, c, src.words_[pos >> 6]);
    }
}

void BitWord::append(const BitWord& other) {
    const std::size_t old = nbits_;
    nbits_ += other.nbits_;
    words_.resize((nbits_ + 63) / 64, 0);
    assign(old, other);
}

std::size_t BitWord::weight() const {
    std::size_t s = 0;
    for (auto x : words_) s += static_cast<std::size_t>(std::popcount(x));
    return s;
}

std::size_t BitWord::distance(const BitWord& other) const {
    require(nbits_ == other.nbits_, "BitWord::distance: length mismatch");
    std::size_t s = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
        s += static_cast<std::size_t>(std::popcount(words_[i] ^ other.words_[i]));
    return s;
}

BitWord& BitWord::operator^=(const BitWord& other) {
    require(nbits_ == other.nbits_, "BitWord xor: length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

std::string BitWord::to_string() const {
    std::string s(nbits_, '0');
    for (std::size_t i = 0; i < nbits_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

std::vector<std::uint8_t> BitWord::serialize() const {
    std::vector<std::uint8_t> out(8 + (nbits_ + 7) / 8, 0);
    const std::uint64_t n = nbits_;
    for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(n >> (8 * i));
    for (std::size_t j = 0; j < (nbits_ + 7) / 8; ++j)
        out[8 + j] = static_cast<std::uint8_t>(words_[j >> 3] >> (8 * (j & 7)));
    return out;
}

BitWord BitWord::deserialize(const std::uint8_t* data, std::size_t len, std::size_t* consumed) {
    if (len < 8) throw FormatError("BitWord: truncated length header");
    std::uint64_t n = 0;
    for (int i = 0; i < 8; ++i) n |= std::uint64_t{data[i]} << (8 * i);
    const std::uint64_t nbytes = (n + 7) / 8;
    if (n > (std::uint64_t{1} << 40) || len - 8 < nbytes) throw FormatError("BitWord: truncated payload");
    BitWord w(static_cast<std::size_t>(n));
    for (std::size_t j = 0; j < nbytes; ++j)
        w.words_[j >> 3] |= std::uint64_t{data[8 + j]} << (8 * (j & 7));
    if (n % 8 != 0 && (data[8 + nbytes - 1] >> (n % 8)) != 0)
        throw FormatError("BitWord: nonzero padding bits");
    if (consumed) *consumed = 8 + nbytes;
    return w;
}

BitWord BitWord::deserialize(const std::vector<std::uint8_t>& bytes) {
    std::size_t used = 0;
    BitWord w = deserialize(bytes.data(), bytes.size(), &used);
    if (used != bytes.size()) throw FormatError("BitWord: trailing bytes");
    return w;
}

void BitWord::trim() {
    if (nbits_ % 64 != 0 && !words_.empty()) words_.back() &= low_mask(nbits_ % 64);
}

std::ostream& operator<<(std::ostream& os, const BitWord& w) { return os << w.to_string(); }

BitWord concat(const std::vector<BitWord>& parts) {
    BitWord out;
    for (const auto& p : parts) out.append(p);
    return out;
}

} // namespace stochcode
