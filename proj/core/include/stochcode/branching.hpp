#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stochcode/bitword.hpp"
#include "stochcode/pseudo.hpp"

namespace stochcode {

class Rng;

// Read-once, left-to-right branching program over n input bits with at most
// `width` states. Used as a distinguisher when auditing pseudorandom objects.
// Layer i maps (state, bit) -> state; start state 0.
class OnlineProgram {
public:
    OnlineProgram(std::string name, std::size_t width, std::size_t length);

    const std::string& name() const { return name_; }
    std::size_t width() const { return width_; }
    std::size_t length() const { return length_; }

    // A single layer reused at every position, or one layer per position.
    void set_uniform_layer(std::vector<std::uint16_t> layer);
    void set_layers(std::vector<std::vector<std::uint16_t>> layers);
    void set_accepting(std::vector<bool> accept);

    std::uint16_t step(std::size_t pos, std::uint16_t state, bool bit) const {
        const auto& L = layers_[layers_.size() == 1 ? 0 : pos];
        return L[2 * state + (bit ? 1 : 0)];
    }
    bool accepting(std::uint16_t state) const { return accept_[state]; }

    // Run over bits [from, from + count) of `x` starting in `state`.
    std::uint16_t run(const BitWord& x, std::size_t from, std::size_t count, std::uint16_t state) const;
    bool accepts(const BitWord& x) const;
    // Exact acceptance probability on uniformly random input.
    double uniform_acceptance() const;

private:
    std::string name_;
    std::size_t width_;
    std::size_t length_;
    std::vector<std::vector<std::uint16_t>> layers_;
    std::vector<bool> accept_;
};

OnlineProgram program_constant(std::size_t n, bool accept);
OnlineProgram program_read_bit(std::size_t n, std::size_t index);
OnlineProgram program_parity(std::size_t n);
OnlineProgram program_count_mod(std::size_t n, std::size_t mod, std::size_t residue);
// Accept when the number of ones is at least k (counter saturates at width-1).
OnlineProgram program_threshold(std::size_t n, std::size_t k, std::size_t width);
// Accept when `pattern` occurs as a contiguous substring (KMP automaton).
OnlineProgram program_pattern(std::size_t n, const BitWord& pattern);
// Random per-position transition tables and random accepting set.
OnlineProgram program_random(std::size_t n, std::size_t width, Rng& rng);

// Fixed audit family: parity, counters, thresholds, patterns and `random_count`
// random programs, all of width <= width. Deterministic in `seed`.
std::vector<OnlineProgram> probe_family(std::size_t n, std::size_t width, std::size_t random_count,
                                        std::uint64_t seed);

struct NisanAudit {
    double prg_acceptance = 0.0;
    double uniform_acceptance = 0.0;
    double advantage = 0.0;
    std::uint64_t enumerated = 0; // seeds (or seed classes) enumerated
};

// Exact acceptance of `program` on Nisan output over a uniform seed. The two
// top-level affine hashes are averaged in closed form over the four quarter
// blocks, so only h_1..h_{k-2} are enumerated: 2^(2(k-2)S') cases, each
// costing O(q^2 + q * width * m).
NisanAudit nisan_audit_exact(const NisanParams& params, const OnlineProgram& program);

} // namespace stochcode
