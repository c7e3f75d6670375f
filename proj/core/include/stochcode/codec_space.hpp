#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "stochcode/bitword.hpp"
#include "stochcode/ctrlcode.hpp"
#include "stochcode/pseudo.hpp"
#include "stochcode/rec.hpp"
#include "stochcode/rs.hpp"
#include "stochcode/serial.hpp"

namespace stochcode {

class Rng;

struct SpaceParams {
    std::size_t N = 8192;
    double p = 0.1;
    double eps = 0.07;
    std::size_t S = 6;
    std::size_t b_ctrl = 64;
    std::size_t ell = 32;
    int ctrl_field_bits = 5;
    int ctrl_d_max = 8;
    std::size_t seed_len = 15;
    std::size_t perm_t = 64;
    std::size_t nisan_block_bits = 12;
    std::size_t threshold = 0; // RS list agreement threshold; 0 selects the smallest admissible
    std::size_t list_cap = 8;
    LscParams lsc;
    double rec_eps = 0.5;
    std::size_t rec_a = 14;
    RecOptions rec_options;
    std::uint64_t seed = 11;
};

struct SpaceControl {
    Seed s_pi;
    Seed s_T;
    Seed s_gamma;

    bool operator==(const SpaceControl&) const = default;
};

struct SpaceLayout {
    std::size_t N = 0;
    double p = 0.0;
    double eps = 0.0;
    std::size_t S = 0;
    std::size_t b_ctrl = 0;
    std::size_t n_blocks = 0;
    std::size_t ell = 0;
    std::size_t n_payload = 0;
    std::size_t seed_len = 0;
    std::size_t perm_t = 0;
    std::size_t threshold = 0;
    std::size_t list_cap = 0; // L_out
    RsCode rs_ctrl;
    LscCode lsc;
    RecCode rec;
    NisanParams nisan;

    std::size_t message_bits() const { return rec.message_bits(); }
    double rate() const { return static_cast<double>(message_bits()) / static_cast<double>(N); }
    double rs_rate() const { return static_cast<double>(rs_ctrl.k()) / static_cast<double>(ell); }
    std::size_t control_bits() const { return 3 * seed_len; }
    // Threshold used for n pooled pairs.
    std::size_t agreement_threshold(std::size_t pairs) const;

    void write(ByteWriter& out) const;
    static SpaceLayout read(ByteReader& in);
};

void validate_layout(const SpaceLayout& layout);
SpaceLayout space_layout(const SpaceParams& params);

SpaceControl draw_space_control(const SpaceLayout& layout, Rng& rng);
BitWord control_bits(const SpaceControl& omega);
SpaceControl space_control_from_bits(const SpaceLayout& layout, const BitWord& bits);
std::vector<GFElem> control_symbols(const SpaceLayout& layout, const SpaceControl& omega);

struct SpaceExpansion {
    Permutation perm;
    BitWord gamma;
    std::vector<std::uint32_t> control_positions; // ascending
    std::vector<std::uint32_t> payload_positions; // ascending
};
SpaceExpansion expand_control(const SpaceLayout& layout, const SpaceControl& omega);

struct SpaceEncoding {
    BitWord codeword;
    SpaceControl omega;
    std::vector<std::uint64_t> lsc_randomness;
};

SpaceEncoding space_encode(const SpaceLayout& layout, const BitWord& m, Rng& rng);
SpaceEncoding space_encode_with(const SpaceLayout& layout, const BitWord& m, const SpaceControl& omega,
                                const std::vector<std::uint64_t>& lsc_randomness);

// Payload stripped of control blocks, with the offset removed and the permutation undone.
BitWord space_payload(const SpaceLayout& layout, const BitWord& x, const SpaceExpansion& ex);

struct SpaceDecodeReport {
    std::vector<BitWord> messages;                 // sorted, at most list_cap
    std::vector<std::vector<LscCandidate>> blocks; // LSC list per block
    std::size_t pairs = 0;                         // distinct pooled pairs
    std::size_t threshold = 0;
    std::vector<SpaceControl> controls;            // RS list candidates
    bool truncated = false;
};

SpaceDecodeReport space_list_decode_report(const SpaceLayout& layout, const BitWord& x);
std::vector<BitWord> space_list_decode(const SpaceLayout& layout, const BitWord& x);

struct SpaceCounters {
    std::size_t good_control = 0;    // control blocks with error weight <= LSC radius
    std::size_t correct_in_list = 0; // control blocks whose list holds their own pair
    std::size_t max_block_list = 0;
    std::size_t control_candidates = 0;
    std::size_t control_list_bound = 0;
    bool good_sampler = false;       // good_control >= eps ell / 2
    bool lists_ok = false;           // correct_in_list >= eps ell / 2
    bool control_in_list = false;
    bool payload_ok = false;         // REC decodes the payload under the true seeds
    bool in_list = false;
    std::size_t output_size = 0;
};

SpaceCounters space_counters(const SpaceLayout& layout, const SpaceEncoding& sent, const BitWord& m, const BitWord& x,
                             const SpaceDecodeReport& report);

} // namespace stochcode
