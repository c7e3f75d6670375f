#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "stochcode/bitword.hpp"
#include "stochcode/ctrlcode.hpp"
#include "stochcode/rs.hpp"
#include "stochcode/serial.hpp"

namespace stochcode {

class Rng;

struct RecOptions {
    std::size_t n_rec = 0;            // required block length; 0 picks n_data = 2^a
    std::size_t mc_trials = 100000;   // BSC_p trials per inner candidate
    std::size_t candidate_budget = 20; // inner candidates per data-block size
    std::size_t max_block = 128;
};

// Concatenated code: outer Reed-Solomon over GF(2^a) with points 0..n_data-1,
// each symbol encoded by an inner [b_data, a] binary linear code decoded by
// maximum likelihood (lowest index wins ties).
class RecCode {
public:
    RecCode() = default;
    RecCode(RsCode outer, SmallLinearCode inner, double p, double inner_error, std::size_t mc_trials);

    const RsCode& outer() const { return outer_; }
    const SmallLinearCode& inner() const { return inner_; }
    std::size_t a() const { return inner_.dimension(); }
    std::size_t b_data() const { return inner_.length(); }
    std::size_t n_data() const { return outer_.n(); }
    std::size_t n_rec() const { return n_data() * b_data(); }
    std::size_t message_bits() const { return outer_.k() * a(); }
    double rate() const { return static_cast<double>(message_bits()) / static_cast<double>(n_rec()); }
    // Inner blocks the outer code always corrects.
    std::size_t correctable_blocks() const { return (n_data() - outer_.k()) / 2; }
    double kappa() const { return static_cast<double>(correctable_blocks()) / static_cast<double>(n_data()); }
    double p() const { return p_; }
    double inner_error() const { return inner_error_; }
    std::size_t mc_trials() const { return mc_trials_; }

    // Maximum-likelihood inner decode of block words (stride words).
    std::uint32_t inner_decode(const std::uint64_t* block) const;
    const std::uint64_t* inner_codeword(std::uint32_t symbol) const {
        return codebook_->data() + std::size_t{symbol} * inner_.stride();
    }

    void write(ByteWriter& out) const;
    static RecCode read(ByteReader& in);

private:
    RsCode outer_;
    SmallLinearCode inner_;
    double p_ = 0.0;
    double inner_error_ = 0.0;
    std::size_t mc_trials_ = 0;
    std::shared_ptr<const std::vector<std::uint64_t>> codebook_;
};

struct InnerErrorEstimate {
    std::uint64_t errors = 0;
    std::uint64_t trials = 0;
    double rate() const { return trials == 0 ? 0.0 : static_cast<double>(errors) / static_cast<double>(trials); }
};

// Block error rate of ML decoding over BSC_p on uniformly random codewords.
// Stops early once `stop_after` errors are seen (0: never).
InnerErrorEstimate rec_measure_inner_error(const RecCode& code, double p, std::size_t trials, Rng& rng,
                                           std::uint64_t stop_after = 0);

// Outer dimension: d_max + 1 = ceil((1 - eps/10) n_data). Data-block size is
// searched upward from a / (1 - H(p) - eps/10); the first inner candidate whose
// measured ML error is <= kappa/10 is kept.
RecCode rec_build(double p, double eps, std::size_t a, std::uint64_t seed, const RecOptions& options = {});

BitWord rec_encode(const RecCode& code, const BitWord& m);
// ML decode of every inner block.
std::vector<GFElem> rec_inner_symbols(const RecCode& code, const BitWord& y);
std::optional<BitWord> rec_decode(const RecCode& code, const BitWord& y);

} // namespace stochcode
