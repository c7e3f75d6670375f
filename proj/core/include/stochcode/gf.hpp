#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <vector>

namespace stochcode {

// Element of GF(2^w), stored as the coefficient vector of a polynomial in x
// (bit i = coefficient of x^i).
struct GFElem {
    std::uint32_t value = 0;

    constexpr GFElem() = default;
    constexpr explicit GFElem(std::uint32_t v) : value(v) {}
    constexpr auto operator<=>(const GFElem&) const = default;
    constexpr bool is_zero() const { return value == 0; }
};

// Product of two polynomials over GF(2) reduced modulo `modulus`.
std::uint32_t gf2_mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t modulus);
// Trial division by every polynomial of degree <= deg/2.
bool gf2_irreducible(std::uint32_t poly);
int gf2_degree(std::uint32_t poly);

// Canonical irreducible polynomial for GF(2^w), 1 <= w <= 16.
std::uint32_t canonical_modulus(int w);

// Arithmetic in GF(2^w) for 1 <= w <= 16. Copies share the lookup tables.
class GFContext {
public:
    GFContext() = default;
    explicit GFContext(int w);
    GFContext(int w, std::uint32_t modulus);

    int bits() const { return w_; }
    std::uint32_t size() const { return std::uint32_t{1} << w_; }
    std::uint32_t modulus() const { return modulus_; }
    bool valid() const { return tables_ != nullptr; }

    GFElem elem(std::uint64_t v) const;
    GFElem zero() const { return GFElem(0); }
    GFElem one() const { return GFElem(1); }
    GFElem generator() const { return GFElem(generator_); }

    GFElem add(GFElem a, GFElem b) const { return GFElem(a.value ^ b.value); }
    GFElem sub(GFElem a, GFElem b) const { return GFElem(a.value ^ b.value); }
    GFElem mul(GFElem a, GFElem b) const {
        if (a.value == 0 || b.value == 0) return GFElem(0);
        return GFElem(tables_->exp[tables_->log[a.value] + tables_->log[b.value]]);
    }
    GFElem inv(GFElem a) const;
    GFElem div(GFElem a, GFElem b) const;
    GFElem pow(GFElem a, std::uint64_t e) const;

    // Discrete log base generator(); a must be nonzero.
    std::uint32_t log(GFElem a) const { return tables_->log[a.value]; }
    GFElem exp(std::uint64_t e) const { return GFElem(tables_->exp[e % (size() - 1)]); }

    bool operator==(const GFContext& o) const { return w_ == o.w_ && modulus_ == o.modulus_; }

private:
    struct Tables {
        std::vector<std::uint32_t> log;
        std::vector<std::uint32_t> exp; // length 2(q-1) so log sums need no reduction
    };

    int w_ = 0;
    std::uint32_t modulus_ = 0;
    std::uint32_t generator_ = 0;
    std::shared_ptr<const Tables> tables_;
};

} // namespace stochcode
