#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stochcode/bitword.hpp"

namespace stochcode {

using Seed = BitWord;
using Permutation = std::vector<std::uint32_t>;

// ---- t-wise independent bits -------------------------------------------------

// Field width used by twise_bits for n outputs: smallest w >= 1 with 2^w >= n.
int twise_field_bits(std::size_t n);
std::size_t twise_seed_len(std::size_t t, std::size_t n);

// Seed = t coefficients of w bits each (constant term first). Output bit i is
// the low bit of f(alpha_i), alpha_i the field element with value i.
BitWord twise_bits(const Seed& seed, std::size_t t, std::size_t n);

// ---- permutations ------------------------------------------------------------

inline constexpr std::size_t kPermSeedBits = 256;

// Stand-in for an almost t-wise independent permutation family: Fisher-Yates
// driven by a counter-mode stream keyed by the 256-bit seed. `t` is accepted
// for interface compatibility and does not change the output.
Permutation knr_perm(const Seed& seed, std::size_t t, std::size_t n);

// out_i = in_{perm[i]}
BitWord permute(const Permutation& perm, const BitWord& in);
// Inverse of permute: out_{perm[i]} = in_i.
BitWord unpermute(const Permutation& perm, const BitWord& in);

// ---- samplers ----------------------------------------------------------------

enum class SamplerKind { Expander, Ideal };

// Side length of the Gabber-Galil grid used for N vertices.
std::size_t sampler_grid_side(std::size_t N);
std::size_t sampler_seed_len(std::size_t ell, std::size_t N);

// ell distinct indices in [0, N), in walk order. The expander walk takes its
// start vertex and 3-bit steps from the seed; if the seed runs out before ell
// distinct in-range vertices are seen, steps continue from a stream keyed by
// the seed. The ideal sampler is a keyed partial Fisher-Yates.
std::vector<std::uint32_t> sampler(const Seed& seed, std::size_t ell, std::size_t N,
                                   SamplerKind kind = SamplerKind::Expander);

// Operating points at which the expander sampler's tail bound
// Pr[|out ∩ B| < (mu - theta) ell] <= gamma has been validated (for ell >= ell0).
struct SamplerOperatingPoint {
    double theta;
    double gamma;
    std::size_t ell0;
};
const std::vector<SamplerOperatingPoint>& sampler_operating_table();

// ---- Nisan's generator -------------------------------------------------------

struct NisanParams {
    std::size_t block_bits = 1; // S'
    std::size_t output_len = 1; // m

    NisanParams() = default;
    NisanParams(std::size_t s, std::size_t m);

    // Recursion depth k = ceil(log2(ceil(m / S'))).
    std::size_t depth() const;
    // x plus one affine hash (a, b) per level.
    std::size_t seed_len() const { return (2 * depth() + 1) * block_bits; }
    double error_bound() const;
};

BitWord nisan(const NisanParams& params, const Seed& seed);

} // namespace stochcode
