#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "stochcode/bitword.hpp"

namespace stochcode {

std::uint64_t splitmix64(std::uint64_t x);

// Keyed hash of (key, index, label). Used to split a master seed into
// independent per-trial and per-purpose streams.
std::uint64_t derive_seed(std::uint64_t key, std::uint64_t index, std::string_view label);

// Experiment randomness. The engine is std::mt19937_64, whose output sequence
// is fixed by the standard; bounded draws use rejection so results do not
// depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    // Uniform in [0, bound). bound must be nonzero.
    std::uint64_t below(std::uint64_t bound);
    bool bit() { return next() >> 63; }
    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) { return uniform() < p; }

    Rng split(std::string_view label) { return Rng(derive_seed(next(), 0, label)); }

private:
    std::mt19937_64 engine_;
};

// Counter-mode stream keyed by an arbitrary bit string. Deterministic in the
// key and the label; used wherever a short seed is stretched.
class KeyedStream {
public:
    KeyedStream(const BitWord& key, std::string_view label);

    std::uint64_t next();
    std::uint64_t below(std::uint64_t bound);
    BitWord bits(std::size_t n);

private:
    std::uint64_t k0_;
    std::uint64_t k1_;
    std::uint64_t counter_ = 0;
};

// Stretch `seed` to `nbits` pseudorandom bits (the seed itself is not copied).
BitWord expand_seed(const BitWord& seed, std::size_t nbits, std::string_view label);

} // namespace stochcode
