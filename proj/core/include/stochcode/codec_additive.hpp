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

struct AdditiveParams {
    std::size_t N = 32768;
    double p = 0.1;
    double eps = 0.1;
    std::size_t b_ctrl = 128;
    std::size_t ell = 64;
    int ctrl_field_bits = 6;
    int ctrl_d_max = 19;
    std::size_t seed_len = 40;
    std::size_t perm_t = 64;
    std::size_t offset_t = 512;
    ScParams sc;
    double rec_eps = 0.5;
    std::size_t rec_a = 14;
    RecOptions rec_options;
    std::uint64_t seed = 7;
};

// Secret seeds of one encoding.
struct ControlInfo {
    Seed s_pi;
    Seed s_delta;
    Seed s_T;

    bool operator==(const ControlInfo&) const = default;
};

// Derived parameters of the additive construction.
struct CodeLayout {
    std::size_t N = 0;
    double p = 0.0;
    double eps = 0.0;
    std::size_t b_ctrl = 0;
    std::size_t n_blocks = 0;
    std::size_t ell = 0;
    std::size_t n_payload = 0;
    std::size_t seed_len = 0;
    std::size_t perm_t = 0;
    std::size_t offset_t = 0;
    RsCode rs_ctrl;
    ScCode sc;
    RecCode rec;

    std::size_t message_bits() const { return rec.message_bits(); }
    double rate() const { return static_cast<double>(message_bits()) / static_cast<double>(N); }
    // 1 - H(p) - rate
    double eps_effective() const;
    std::size_t control_bits() const { return 3 * seed_len; }

    void write(ByteWriter& out) const;
    static CodeLayout read(ByteReader& in);
};

// Checks every layout invariant; throws BadInput on the first violation.
void validate_layout(const CodeLayout& layout);
CodeLayout additive_layout(const AdditiveParams& params);

ControlInfo draw_control(const CodeLayout& layout, Rng& rng);
BitWord control_bits(const ControlInfo& omega);
ControlInfo control_from_bits(const CodeLayout& layout, const BitWord& bits);
// RS evaluations a_i of the control polynomial at the ell evaluation points.
std::vector<GFElem> control_symbols(const CodeLayout& layout, const ControlInfo& omega);

// Objects derived from the seeds.
struct ControlExpansion {
    Permutation perm;
    BitWord delta;
    std::vector<std::uint32_t> control_positions; // ascending
    std::vector<std::uint32_t> payload_positions; // ascending
};
ControlExpansion expand_control(const CodeLayout& layout, const ControlInfo& omega);

struct AdditiveEncoding {
    BitWord codeword;
    ControlInfo omega;
    std::vector<std::uint64_t> sc_randomness; // r_i per control symbol
};

AdditiveEncoding additive_encode(const CodeLayout& layout, const BitWord& m, Rng& rng);
// Deterministic given the seeds and the SC randomness.
AdditiveEncoding additive_encode_with(const CodeLayout& layout, const BitWord& m, const ControlInfo& omega,
                                      const std::vector<std::uint64_t>& sc_randomness);

struct AdditiveDecodeReport {
    std::optional<BitWord> message;
    std::optional<ControlInfo> control;
    // Per block: SC decode result as m | r << b, or -1 when rejected.
    std::vector<std::int64_t> blocks;
    std::size_t pairs = 0; // after dedup
};

AdditiveDecodeReport additive_decode_report(const CodeLayout& layout, const BitWord& x);
std::optional<BitWord> additive_decode(const CodeLayout& layout, const BitWord& x);

// Instrumentation against a known encoding.
struct DecodeCounters {
    std::size_t good_control = 0;      // control blocks with error weight <= (p+eps) b_ctrl
    std::size_t correct_control = 0;   // control blocks decoded to their own pair
    std::size_t wrong_control = 0;     // control blocks decoded to another pair
    std::size_t payload_accepted = 0;  // payload blocks accepted by the SC decoder
    long rs_margin = 0;                // correct - 2 (wrong + payload) - (d_max + 1)
    bool good_sampler = false;         // good_control >= eps ell / 2
    bool control_ok = false;           // correct >= eps ell / 4 and wrong < eps ell / 24
    bool payload_ok = false;           // payload_accepted < eps ell / 24
    bool control_recovered = false;
    bool decoded_ok = false;
};

DecodeCounters additive_counters(const CodeLayout& layout, const AdditiveEncoding& sent, const BitWord& m,
                                const BitWord& x, const AdditiveDecodeReport& report);

// Average-error variant: the message carries the seeds and one shared SC
// randomness string. Layout: payload | control bits | r.
std::size_t avg_message_bits(const CodeLayout& layout);
BitWord avg_encode(const CodeLayout& layout, const BitWord& full);

struct AvgDecodeReport {
    std::optional<BitWord> message;
    std::optional<std::uint64_t> r;
    std::size_t winner_votes = 0;
    std::size_t runner_up_votes = 0;
    std::size_t margin() const { return winner_votes - runner_up_votes; }
};

AvgDecodeReport avg_decode_report(const CodeLayout& layout, const BitWord& x);
std::optional<BitWord> avg_decode(const CodeLayout& layout, const BitWord& x);

} // namespace stochcode
