#include "stochcode/rng.hpp"

#include <algorithm>

#include "stochcode/errors.hpp"

namespace stochcode {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

namespace {

// FNV-1a over the label bytes.
std::uint64_t label_hash(std::string_view label) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

} // namespace

std::uint64_t derive_seed(std::uint64_t key, std::uint64_t index, std::string_view label) {
    std::uint64_t h = splitmix64(key);
    h = splitmix64(h ^ index);
    h = splitmix64(h ^ label_hash(label));
    return h;
}

std::uint64_t Rng::below(std::uint64_t bound) {
    require(bound != 0, "Rng::below: zero bound");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return x % bound;
}

KeyedStream::KeyedStream(const BitWord& key, std::string_view label) {
    std::uint64_t a = splitmix64(key.size() ^ label_hash(label));
    std::uint64_t b = splitmix64(a ^ 0x5851F42D4C957F2DULL);
    for (auto w : key.words()) {
        a = splitmix64(a ^ w);
        b = splitmix64(b + w + 0x14057B7EF767814FULL);
    }
    k0_ = a;
    k1_ = b;
}

std::uint64_t KeyedStream::next() {
    const std::uint64_t c = counter_++;
    return splitmix64(splitmix64(k0_ ^ c) + k1_);
}

std::uint64_t KeyedStream::below(std::uint64_t bound) {
    require(bound != 0, "KeyedStream::below: zero bound");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return x % bound;
}

BitWord KeyedStream::bits(std::size_t n) {
    BitWord w(n);
    for (std::size_t pos = 0; pos < n; pos += 64) {
        const std::size_t c = std::min<std::size_t>(64, n - pos);
        w.set_bits(pos, c, next());
    }
    return w;
}

BitWord expand_seed(const BitWord& seed, std::size_t nbits, std::string_view label) {
    KeyedStream s(seed, label);
    return s.bits(nbits);
}

} // namespace stochcode
