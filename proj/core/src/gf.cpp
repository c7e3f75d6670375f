#include "stochcode/gf.hpp"

#include <array>
#include <bit>
#include <map>
#include <mutex>
#include <string>

#include "stochcode/errors.hpp"

namespace stochcode {

int gf2_degree(std::uint32_t poly) { return poly == 0 ? -1 : 31 - std::countl_zero(poly); }

std::uint32_t gf2_mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t modulus) {
    const int deg = gf2_degree(modulus);
    std::uint64_t prod = 0;
    for (int i = 0; i < 32; ++i)
        if ((b >> i) & 1u) prod ^= std::uint64_t{a} << i;
    for (int i = 63; i >= deg; --i)
        if ((prod >> i) & 1u) prod ^= std::uint64_t{modulus} << (i - deg);
    return static_cast<std::uint32_t>(prod);
}

namespace {

std::uint32_t gf2_mod(std::uint32_t a, std::uint32_t m) {
    const int dm = gf2_degree(m);
    for (int d = gf2_degree(a); d >= dm; d = gf2_degree(a)) a ^= m << (d - dm);
    return a;
}

// Primitive where known; w = 8 and w = 16 use the conventional AES and
// x^16+x^12+x^3+x+1 moduli, which are only irreducible.
constexpr std::array<std::uint32_t, 17> kCanonical = {
    0,       0x3,    0x7,    0xB,    0x13,   0x25,   0x43,   0x83,   0x11B,
    0x211,   0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B,
};

} // namespace

bool gf2_irreducible(std::uint32_t poly) {
    const int deg = gf2_degree(poly);
    if (deg < 1) return false;
    for (std::uint32_t d = 2; gf2_degree(d) <= deg / 2; ++d)
        if (gf2_mod(poly, d) == 0) return false;
    return true;
}

std::uint32_t canonical_modulus(int w) {
    require(w >= 1 && w <= 16, "canonical_modulus: w must be in [1, 16]");
    return kCanonical[static_cast<std::size_t>(w)];
}

GFContext::GFContext(int w) : GFContext(w, w >= 1 && w <= 16 ? canonical_modulus(w) : 0) {}

GFContext::GFContext(int w, std::uint32_t modulus) : w_(w), modulus_(modulus) {
    require(w >= 1 && w <= 16, "GFContext: w must be in [1, 16]");
    require(gf2_degree(modulus) == w, "GFContext: modulus degree must equal w");

    static std::mutex mu;
    static std::map<std::uint32_t, std::pair<std::uint32_t, std::shared_ptr<const Tables>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(modulus); it != cache.end()) {
        generator_ = it->second.first;
        tables_ = it->second.second;
        return;
    }

    require(gf2_irreducible(modulus), "GFContext: modulus is reducible");
    const std::uint32_t q = std::uint32_t{1} << w;
    auto t = std::make_shared<Tables>();
    t->log.assign(q, 0);
    t->exp.assign(2 * (q - 1), 0);
    if (q == 2) {
        t->exp = {1, 1};
        generator_ = 1;
    } else {
        std::vector<std::uint32_t> seen(q);
        for (std::uint32_t g = 2; g < q; ++g) {
            std::uint32_t x = 1, order = 0;
            do {
                x = gf2_mulmod(x, g, modulus);
                ++order;
            } while (x != 1);
            if (order != q - 1) continue;
            generator_ = g;
            break;
        }
        std::uint32_t x = 1;
        for (std::uint32_t i = 0; i < q - 1; ++i) {
            t->exp[i] = t->exp[i + q - 1] = x;
            t->log[x] = i;
            x = gf2_mulmod(x, generator_, modulus);
        }
    }
    tables_ = t;
    cache[modulus] = {generator_, tables_};
}

GFElem GFContext::elem(std::uint64_t v) const {
    require(v < size(), "GFContext::elem: value out of range");
    return GFElem(static_cast<std::uint32_t>(v));
}

GFElem GFContext::inv(GFElem a) const {
    if (a.value == 0) throw DivisionByZero("GF inverse of zero");
    const std::uint32_t l = tables_->log[a.value];
    return GFElem(tables_->exp[(size() - 1 - l) % (size() - 1)]);
}

GFElem GFContext::div(GFElem a, GFElem b) const {
    if (b.value == 0) throw DivisionByZero("GF division by zero");
    if (a.value == 0) return GFElem(0);
    const std::uint32_t q1 = size() - 1;
    return GFElem(tables_->exp[(tables_->log[a.value] + q1 - tables_->log[b.value]) % q1]);
}

GFElem GFContext::pow(GFElem a, std::uint64_t e) const {
    if (e == 0) return one();
    if (a.value == 0) return zero();
    const std::uint64_t q1 = size() - 1;
    return GFElem(tables_->exp[(tables_->log[a.value] * (e % q1)) % q1]);
}

} // namespace stochcode
