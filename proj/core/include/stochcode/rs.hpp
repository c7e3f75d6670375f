#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "stochcode/gf.hpp"

namespace stochcode {

// Polynomials are coefficient vectors, constant term first.
using Poly = std::vector<GFElem>;

GFElem poly_eval(const GFContext& F, std::span<const GFElem> p, GFElem x);
void poly_trim(Poly& p);
int poly_degree(const Poly& p); // -1 for the zero polynomial
Poly poly_mul(const GFContext& F, const Poly& a, const Poly& b);
// Returns quotient; remainder written to *rem.
Poly poly_divmod(const GFContext& F, const Poly& a, const Poly& b, Poly* rem);
// Degree < n polynomial through n points with distinct x.
Poly poly_interpolate(const GFContext& F, std::span<const GFElem> xs, std::span<const GFElem> ys);

struct RsPair {
    GFElem x;
    GFElem y;
    bool operator==(const RsPair&) const = default;
};

// Evaluations of degree <= d_max polynomials at distinct points.
struct RsCode {
    GFContext field;
    std::vector<GFElem> points;
    int d_max = 0;

    RsCode() = default;
    RsCode(GFContext f, std::vector<GFElem> pts, int d);

    std::size_t n() const { return points.size(); }
    std::size_t k() const { return static_cast<std::size_t>(d_max) + 1; }
};

// coeffs may be shorter than d_max+1 (missing high coefficients are zero).
std::vector<GFElem> rs_encode(const RsCode& code, std::span<const GFElem> coeffs);

// The unique polynomial of degree <= d_max with agreements - disagreements
// > d_max on `pairs`, or nullopt. The x coordinates must be distinct.
std::optional<Poly> rs_unique_decode(const GFContext& F, std::span<const RsPair> pairs, int d_max);
std::optional<Poly> rs_unique_decode(const RsCode& code, std::span<const GFElem> received);
// Same contract, solved with the Berlekamp-Welch linear system (cubic time).
// rs_unique_decode uses the quadratic Gao formulation; this one is kept as a
// cross-check.
std::optional<Poly> rs_unique_decode_bw(const GFContext& F, std::span<const RsPair> pairs, int d_max);

// Smallest D such that the number of monomials X^a Y^j with a + d*j <= D exceeds n.
std::size_t sudan_weighted_degree(std::size_t n, int d_max);
// Smallest t that the list decoder accepts for n pairs.
std::size_t sudan_min_agreement(std::size_t n, int d_max);

// Every polynomial of degree <= d_max agreeing with at least t of the (distinct)
// pairs. Requires t >= sudan_min_agreement(pairs.size(), d_max). Output is
// sorted lexicographically by coefficients.
std::vector<Poly> rs_list_decode(const GFContext& F, std::span<const RsPair> pairs, int d_max, std::size_t t);

std::size_t rs_agreement(const GFContext& F, const Poly& p, std::span<const RsPair> pairs);

} // namespace stochcode
