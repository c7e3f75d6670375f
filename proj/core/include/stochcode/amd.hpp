#pragma once

#include <optional>
#include <span>
#include <vector>

#include "stochcode/bitword.hpp"
#include "stochcode/gf.hpp"

namespace stochcode {

// Algebraic manipulation detection code over GF(q), q = 2^w:
//   f(x, r) = r^(d+2) + sum_{i=1..d} x_i r^i
// d must be odd so that d+2 is nonzero in characteristic 2.
struct AmdParams {
    GFContext field;
    int d = 1;

    AmdParams() = default;
    AmdParams(GFContext f, int degree);

    int bits() const { return field.bits(); }
    // Length of x||r||tag in bits.
    std::size_t encoded_bits() const { return static_cast<std::size_t>(d + 2) * field.bits(); }
    // Worst-case probability that a fixed offset goes undetected.
    double soundness_bound() const { return static_cast<double>(d + 1) / field.size(); }
};

struct AmdTriple {
    std::vector<GFElem> x;
    GFElem r;
    GFElem tag;
    bool operator==(const AmdTriple&) const = default;
};

GFElem amd_tag(const AmdParams& p, std::span<const GFElem> x, GFElem r);
AmdTriple amd_encode(const AmdParams& p, std::span<const GFElem> x, GFElem r);
std::optional<std::vector<GFElem>> amd_verify(const AmdParams& p, const AmdTriple& t);

// x_1..x_d, r, tag as consecutive w-bit little-endian fields.
BitWord amd_pack(const AmdParams& p, const AmdTriple& t);
AmdTriple amd_unpack(const AmdParams& p, const BitWord& bits);

// Up to d*w message bits as x_1..x_d, zero-padded.
std::vector<GFElem> amd_split(const AmdParams& p, const BitWord& m);
BitWord amd_join(const AmdParams& p, std::span<const GFElem> x, std::size_t nbits);

struct AmdAuditResult {
    double worst_acceptance = 0.0; // max over (x, offset) of Pr_r[accept]
    double bound = 0.0;
    std::uint64_t cases = 0;
};

// Exhaustive over all x, all nonzero offsets and all r. Feasible for q^(2d+3) small.
AmdAuditResult amd_audit_exhaustive(const AmdParams& p);

} // namespace stochcode
