#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stochcode/amd.hpp"
#include "stochcode/bitword.hpp"
#include "stochcode/branching.hpp"
#include "stochcode/serial.hpp"

namespace stochcode {

class Rng;
class NearIndex;

// Binary linear [u, k] code given by k generator rows. Message bit i selects row i.
class SmallLinearCode {
public:
    SmallLinearCode() = default;
    SmallLinearCode(std::size_t length, std::vector<BitWord> rows);

    // Uniform random full-rank generator.
    static SmallLinearCode random(std::size_t k, std::size_t u, Rng& rng);

    std::size_t length() const { return u_; }
    std::size_t dimension() const { return rows_.size(); }
    std::size_t stride() const { return (u_ + 63) / 64; }
    const std::vector<BitWord>& rows() const { return rows_; }

    BitWord encode(const BitWord& m) const;
    // Message given as the low k bits of `m`; writes stride() words.
    void encode_into(std::uint64_t m, std::uint64_t* out) const;

    std::size_t rank() const;
    // Exhaustive over all 2^k messages.
    std::size_t min_distance() const;
    // All messages whose codeword is within `radius` of y, by scanning 2^k codewords.
    std::vector<std::uint64_t> list_decode(const BitWord& y, std::size_t radius) const;

    void write(ByteWriter& out) const;
    static SmallLinearCode read(ByteReader& in);

    bool operator==(const SmallLinearCode& o) const { return u_ == o.u_ && rows_ == o.rows_; }

private:
    std::size_t u_ = 0;
    std::vector<BitWord> rows_;
    std::vector<std::uint64_t> flat_;
};

struct ListAudit {
    std::size_t max_list = 0;
    std::uint64_t centers = 0;
    bool exhaustive = false;
};

// Exact worst-case list size over every center: list sizes only depend on the
// coset of the center, so error patterns in the ball are bucketed by syndrome.
// Requires u <= 24.
ListAudit audit_linear_exhaustive(const SmallLinearCode& code, std::size_t radius);
// Random centers plus planted codeword-plus-radius-error centers, each scanned
// over all 2^k codewords.
ListAudit audit_linear_sampled(const SmallLinearCode& code, std::size_t radius, std::size_t centers, Rng& rng);

// Smallest j such that the expected number of centers with list size >= j is
// below 2^-slack for a random code of 2^log2_codewords words of length u.
std::size_t first_moment_list_bound(double log2_codewords, std::size_t u, std::size_t radius, double slack = 10.0);

struct ScParams {
    std::size_t u = 128;
    std::size_t b = 12;       // message bits
    int field_bits = 6;       // AMD field GF(2^w); b_rnd = tag bits = w
    int amd_d = 3;
    std::size_t radius = 25;  // decoding radius in bits
    std::size_t list_bound = 0; // 0: first-moment estimate
    std::size_t audit_centers = 8;
    std::uint64_t seed = 0x5c0de;
    std::size_t attempts = 8;
};

struct ScDecoded {
    BitWord m;
    BitWord r;
    bool operator==(const ScDecoded&) const = default;
};

// Stochastic code E(m, r) = C(m, r, tag(m, r)) with C a SmallLinearCode and the
// tag from the AMD code. Inner message layout: m (b bits), r (w bits), tag (w bits).
class ScCode {
public:
    ScCode() = default;
    ScCode(SmallLinearCode inner, AmdParams amd, std::size_t b, std::size_t radius, std::size_t list_bound);

    const SmallLinearCode& inner() const { return inner_; }
    const AmdParams& amd() const { return amd_; }
    std::size_t length() const { return inner_.length(); }
    std::size_t b() const { return b_; }
    std::size_t b_rnd() const { return static_cast<std::size_t>(amd_.bits()); }
    std::size_t tag_bits() const { return static_cast<std::size_t>(amd_.bits()); }
    std::size_t radius() const { return radius_; }
    std::size_t list_bound() const { return list_bound_; }
    // L (d+1) / q
    double delta() const { return static_cast<double>(list_bound_) * amd_.soundness_bound(); }

    // Packed inner message for (m, r), both given as integers.
    std::uint64_t inner_message(std::uint64_t m, std::uint64_t r) const;
    // Valid (AMD-passing) codewords within the radius of y, as m | r << b.
    std::vector<std::uint64_t> candidates(const BitWord& y) const;
    std::optional<std::uint64_t> decode_index(const BitWord& y) const;

    void write(ByteWriter& out) const;
    static ScCode read(ByteReader& in);

private:
    SmallLinearCode inner_;
    AmdParams amd_;
    std::size_t b_ = 0;
    std::size_t radius_ = 0;
    std::size_t list_bound_ = 0;
    std::shared_ptr<const NearIndex> index_;
};

BitWord sc_encode(const ScCode& code, const BitWord& m, const BitWord& r);
std::optional<ScDecoded> sc_decode(const ScCode& code, const BitWord& y);

struct ScBuild {
    ScCode code;
    ListAudit audit;
    std::size_t min_distance = 0;
    std::size_t attempts = 0;
};

// Samples the inner code from params.seed and certifies the list bound
// (exhaustive for u <= 24, sampled otherwise); resamples on failure.
ScBuild build_sc(const ScParams& params);

struct LscParams {
    std::size_t u = 64;
    std::size_t k = 10;
    std::size_t s = 12;
    std::size_t radius = 10;
    std::size_t list_bound = 0; // 0: first-moment estimate
    std::size_t audit_centers = 512;
    std::uint64_t seed = 0x15c;
    std::size_t attempts = 8;
};

struct LscCandidate {
    std::uint64_t m = 0;
    std::uint64_t r = 0;
    auto operator<=>(const LscCandidate&) const = default;
};

// Decomposable code E(m, r) = C(m) xor table[r] with 2^s table rows.
class LscCode {
public:
    LscCode() = default;
    LscCode(SmallLinearCode base, std::vector<BitWord> table, std::size_t radius, std::size_t list_bound);

    const SmallLinearCode& base() const { return base_; }
    const std::vector<BitWord>& table() const { return table_; }
    std::size_t length() const { return base_.length(); }
    std::size_t k() const { return base_.dimension(); }
    std::size_t s() const { return s_; }
    std::size_t radius() const { return radius_; }
    std::size_t list_bound() const { return list_bound_; }

    BitWord encode(std::uint64_t m, std::uint64_t r) const;

    void write(ByteWriter& out) const;
    static LscCode read(ByteReader& in);

    friend std::vector<LscCandidate> lsc_list_decode(const LscCode& code, const BitWord& y);

private:
    SmallLinearCode base_;
    std::vector<BitWord> table_;
    std::size_t s_ = 0;
    std::size_t radius_ = 0;
    std::size_t list_bound_ = 0;
    std::shared_ptr<const NearIndex> index_;
};

BitWord lsc_encode(const LscCode& code, const BitWord& m, const BitWord& r);
// Exactly the pairs within the radius, sorted.
std::vector<LscCandidate> lsc_list_decode(const LscCode& code, const BitWord& y);
// Same set by scanning every (m, r).
std::vector<LscCandidate> lsc_list_decode_exhaustive(const LscCode& code, const BitWord& y);

// Counter over all 2^u centers; requires u <= 20.
ListAudit lsc_audit_exhaustive(const LscCode& code);
// Random centers and planted codeword-plus-error centers at weights radius and radius/2.
ListAudit lsc_audit_sampled(const LscCode& code, std::size_t centers, Rng& rng);

struct LscBuild {
    LscCode code;
    ListAudit audit;
    std::size_t attempts = 0;
};

LscCode lsc_random(const LscParams& params, Rng& rng);
LscBuild build_lsc(const LscParams& params);

struct PrgAuditResult {
    double max_advantage = 0.0;
    double sigma = 0.0; // standard error at the maximising (message, program)
    std::string worst_program;
    std::uint64_t worst_message = 0;
    bool exact = false; // every seed enumerated
    std::uint64_t evaluations = 0;
};

// Probe messages are 0, all-ones and two seeded random messages. With
// trials >= 2^s every seed is enumerated, otherwise seeds are sampled.
PrgAuditResult lsc_pseudorandomness_audit(const LscCode& code, const std::vector<OnlineProgram>& programs,
                                          std::uint64_t trials, std::uint64_t seed = 1);

} // namespace stochcode
