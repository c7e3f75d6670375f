#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stochcode/bitword.hpp"

namespace stochcode {

class Rng;

struct ChannelOutcome {
    BitWord received;
    std::size_t flips = 0;
    bool budget_exceeded = false;
};

// Additive channel: received = c xor e.
ChannelOutcome apply_additive(const BitWord& e, const BitWord& c);

// Oblivious error vectors.
BitWord error_burst(std::size_t n, std::size_t weight, std::size_t offset = 0);
BitWord error_random(std::size_t n, std::size_t weight, Rng& rng);
BitWord error_bsc(std::size_t n, double p, Rng& rng);
// `per_block` errors in each of as many distinct random blocks as the weight allows.
BitWord error_block_killer(std::size_t n, std::size_t block, std::size_t per_block, std::size_t weight, Rng& rng);

// Online channel with per-position transition tables. A table maps
// (state, bit) at index 2*state+bit to (next_state << 1) | out_bit.
class OnlineBpChannel {
public:
    OnlineBpChannel(std::string name, std::size_t states, std::size_t length, std::size_t lookahead = 0);

    const std::string& name() const { return name_; }
    std::size_t states() const { return states_; }
    std::size_t space_bits() const;
    std::size_t length() const { return length_; }
    std::size_t lookahead() const { return lookahead_; }
    std::size_t table_count() const { return tables_.size(); }

    // Registers a table and returns its id.
    std::size_t add_table(std::vector<std::uint32_t> table);
    // Position i (of length + lookahead steps) uses table `id`.
    void assign(std::size_t position, std::size_t id);
    void assign_range(std::size_t from, std::size_t to, std::size_t id);

    std::uint32_t step(std::size_t pos, std::uint32_t state, bool bit) const {
        return tables_[layer_[pos]][2 * state + (bit ? 1u : 0u)];
    }

private:
    std::string name_;
    std::size_t states_;
    std::size_t length_;
    std::size_t lookahead_;
    std::vector<std::vector<std::uint32_t>> tables_;
    std::vector<std::uint32_t> layer_;
};

// One left-to-right pass from state 0. With lookahead t the input is padded by
// t zeros and output step i + t is the received bit i.
ChannelOutcome apply_bp(const OnlineBpChannel& ch, const BitWord& c);

// Randomized online adversary: a distribution over deterministic channels.
struct BpAdversary {
    std::string name;
    std::size_t budget = 0;
    std::function<OnlineBpChannel(Rng&)> sample;
};

ChannelOutcome apply_bp(const BpAdversary& adv, const BitWord& c, Rng& rng);

// Flip positions 0, stride, 2*stride, ... until `budget` flips (stateless).
OnlineBpChannel bp_prefix_flipper(std::size_t n, std::size_t budget, std::size_t stride);
// Flip the first `budget` positions.
OnlineBpChannel bp_budget_greedy(std::size_t n, std::size_t budget);
// KMP automaton for `pattern`; once it matches, flip every following bit up to
// the end of the current epoch of `budget` positions, then stop for good.
OnlineBpChannel bp_pattern_trigger(std::size_t n, std::size_t budget, const BitWord& pattern);
// Flip a fixed set of positions (stateless).
OnlineBpChannel bp_position_set(std::size_t n, const std::vector<std::size_t>& positions, std::string name);

BitWord default_trigger_pattern(std::size_t bits);

// Shipped online adversaries at budget floor(p n).
std::vector<BpAdversary> shipped_bp_adversaries(std::size_t n, double p);

struct SwappingChannel {
    BitWord state;
    std::optional<std::size_t> budget;
};

// Positions where c and the state agree pass through; the rest get uniform bits
// until `budget` flips have been made.
ChannelOutcome apply_swapping(const SwappingChannel& ch, const BitWord& c, Rng& rng);
// Exact output distribution of the unbudgeted channel, indexed by received word (n <= 16).
std::vector<double> swapping_distribution(const BitWord& state, const BitWord& c);

std::size_t swap_budget(std::size_t n, double nu);

// W^main: draws a codeword of a uniform (m', r') and swaps towards it.
ChannelOutcome swap_main_attack(const std::function<BitWord(Rng&)>& codebook_sampler, const BitWord& c, Rng& rng,
                                std::optional<std::size_t> budget = std::nullopt);

// Declarative channel description: "type=random p=0.1" style key=value tokens.
struct ChannelSpec {
    std::string type = "none";
    std::map<std::string, std::string> params;

    static ChannelSpec parse(std::string_view text);
    std::string to_string() const;
    double number(const std::string& key, double fallback) const;
    std::string text(const std::string& key, const std::string& fallback) const;
};

// Inputs a channel may need beyond the codeword.
struct ChannelContext {
    std::size_t block = 0;                            // block size for block-structured errors
    std::size_t block_radius = 0;                     // errors per block that a decoder tolerates
    std::function<BitWord(Rng&)> codebook_sampler;    // for swapping attacks
};

// Runs any configured channel on c. Types: none, burst, random, bsc,
// block-killer, prefix, greedy, pattern16, pattern8, random-bp, swap, swap-budget.
ChannelOutcome run_channel(const ChannelSpec& spec, const BitWord& c, Rng& rng, const ChannelContext& ctx = {});

const std::vector<std::string>& channel_types();

} // namespace stochcode
