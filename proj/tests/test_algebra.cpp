#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "stochcode/bitword.hpp"
#include "stochcode/errors.hpp"
#include "stochcode/gf.hpp"
#include "stochcode/rng.hpp"

using namespace stochcode;

namespace {

// Shift-and-add multiplication, reducing one bit at a time.
std::uint32_t ref_mul(std::uint32_t a, std::uint32_t b, std::uint32_t mod, int w) {
    std::uint32_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a >> w) a ^= mod;
    }
    return r;
}

} // namespace

TEST(GaloisField, SmallProducts) {
    GFContext f8(3);
    EXPECT_EQ(f8.modulus(), 0xBu);
    EXPECT_EQ(f8.mul(GFElem(0b010), GFElem(0b010)), GFElem(0b100));
    EXPECT_EQ(f8.mul(GFElem(0b010), GFElem(0b110)), GFElem(0b111));
}

TEST(GaloisField, InverseOfXInGF16) {
    GFContext f16(4);
    GFElem expect;
    for (std::uint32_t c = 1; c < 16; ++c)
        if (ref_mul(2, c, 0x13, 4) == 1) expect = GFElem(c);
    EXPECT_EQ(expect, GFElem(0b1001));
    EXPECT_EQ(f16.inv(GFElem(2)), expect);
}

TEST(GaloisField, CanonicalModuliAreIrreducible) {
    for (int w = 1; w <= 16; ++w) {
        const std::uint32_t m = canonical_modulus(w);
        EXPECT_EQ(gf2_degree(m), w);
        // Independent check: no root and no factor found by brute-force
        // polynomial long division over every lower-degree polynomial.
        bool irreducible = true;
        for (std::uint32_t d = 2; d < (1u << (w / 2 + 1)) && irreducible; ++d) {
            if (gf2_degree(d) > w / 2) continue;
            std::uint32_t r = m;
            while (gf2_degree(r) >= gf2_degree(d)) r ^= d << (gf2_degree(r) - gf2_degree(d));
            if (r == 0) irreducible = false;
        }
        EXPECT_TRUE(irreducible) << "w=" << w;
    }
    EXPECT_EQ(canonical_modulus(8), 0x11Bu);
    EXPECT_EQ(canonical_modulus(16), 0x1100Bu);
    EXPECT_FALSE(gf2_irreducible(0b101)); // x^2+1 = (x+1)^2
}

TEST(GaloisField, ReducibleModulusRejected) { EXPECT_THROW(GFContext(2, 0b101), BadInput); }

TEST(GaloisField, MulMatchesShiftAndAdd) {
    for (int w : {2, 3, 4, 5, 6, 8}) {
        GFContext F(w);
        const std::uint32_t q = F.size();
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b)
                ASSERT_EQ(F.mul(GFElem(a), GFElem(b)).value, ref_mul(a, b, F.modulus(), w)) << w;
    }
    Rng rng(7);
    for (int w : {10, 12, 14, 15, 16}) {
        GFContext F(w);
        for (int i = 0; i < 20000; ++i) {
            const auto a = static_cast<std::uint32_t>(rng.below(F.size()));
            const auto b = static_cast<std::uint32_t>(rng.below(F.size()));
            ASSERT_EQ(F.mul(GFElem(a), GFElem(b)).value, ref_mul(a, b, F.modulus(), w));
        }
    }
}

TEST(GaloisField, FieldAxiomsExhaustive) {
    for (int w : {2, 3, 4, 8}) {
        GFContext F(w);
        const std::uint32_t q = F.size();
        for (std::uint32_t a = 0; a < q; ++a) {
            const GFElem A(a);
            EXPECT_EQ(F.add(A, A), F.zero());
            EXPECT_EQ(F.mul(A, F.one()), A);
            if (a != 0) EXPECT_EQ(F.mul(A, F.inv(A)), F.one());
            for (std::uint32_t b = 0; b < q; ++b) {
                const GFElem B(b);
                ASSERT_EQ(F.mul(A, B), F.mul(B, A));
                if (w <= 4)
                    for (std::uint32_t c = 0; c < q; ++c) {
                        const GFElem C(c);
                        ASSERT_EQ(F.mul(A, F.add(B, C)), F.add(F.mul(A, B), F.mul(A, C)));
                        ASSERT_EQ(F.mul(F.mul(A, B), C), F.mul(A, F.mul(B, C)));
                    }
            }
        }
    }
}

TEST(GaloisField, DivisionByZeroThrows) {
    GFContext F(4);
    EXPECT_THROW(F.inv(F.zero()), DivisionByZero);
    EXPECT_THROW(F.div(F.one(), F.zero()), DivisionByZero);
}

TEST(GaloisField, PowAndGenerator) {
    GFContext F(8);
    EXPECT_EQ(F.pow(F.generator(), 255), F.one());
    std::vector<bool> seen(256, false);
    GFElem x = F.one();
    for (int i = 0; i < 255; ++i) {
        EXPECT_FALSE(seen[x.value]);
        seen[x.value] = true;
        x = F.mul(x, F.generator());
    }
}

TEST(BitWordTest, Weight) {
    EXPECT_EQ(BitWord::from_string("10110000").weight(), 3u);
    EXPECT_EQ(BitWord(0).weight(), 0u);
}

TEST(BitWordTest, XorInvolutionAndTriangleInequality) {
    Rng rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = rng.below(300);
        const BitWord a = BitWord::random(n, rng), b = BitWord::random(n, rng), c = BitWord::random(n, rng);
        EXPECT_EQ((a ^ b) ^ b, a);
        EXPECT_LE(a.distance(c), a.distance(b) + b.distance(c));
        EXPECT_EQ(a.distance(b), (a ^ b).weight());
    }
}

TEST(BitWordTest, SerializationLayout) {
    const BitWord w = BitWord::from_string("1011000011");
    const auto bytes = w.serialize();
    ASSERT_EQ(bytes.size(), 8u + 2u);
    EXPECT_EQ(bytes[0], 10u);
    for (int i = 1; i < 8; ++i) EXPECT_EQ(bytes[static_cast<std::size_t>(i)], 0u);
    EXPECT_EQ(bytes[8], 0b00001101u);
    EXPECT_EQ(bytes[9], 0b00000011u);
    EXPECT_EQ(BitWord::deserialize(bytes), w);
}

TEST(BitWordTest, SerializationRoundTrip) {
    Rng rng(5);
    for (std::size_t n = 0; n < 200; ++n) {
        const BitWord w = BitWord::random(n, rng);
        EXPECT_EQ(BitWord::deserialize(w.serialize()), w);
    }
}

TEST(BitWordTest, MalformedInputRejected) {
    auto bytes = BitWord::from_string("101").serialize();
    bytes[8] |= 0x80;
    EXPECT_THROW(BitWord::deserialize(bytes), FormatError);
    EXPECT_THROW(BitWord::deserialize(std::vector<std::uint8_t>{1, 2}), FormatError);
    EXPECT_THROW(BitWord::from_string("10x"), BadInput);
}

TEST(BitWordTest, BitRangeAccess) {
    Rng rng(3);
    BitWord w = BitWord::random(200, rng);
    for (std::size_t off = 0; off + 37 <= 200; off += 13) {
        std::uint64_t expect = 0;
        for (std::size_t i = 0; i < 37; ++i) expect |= std::uint64_t{w.get(off + i)} << i;
        EXPECT_EQ(w.get_bits(off, 37), expect);
        EXPECT_EQ(w.slice(off, 37), BitWord::from_uint(expect, 37));
    }
    BitWord z(130);
    z.set_bits(60, 10, 0x3FF);
    EXPECT_EQ(z.weight(), 10u);
    EXPECT_TRUE(z.get(60) && z.get(69) && !z.get(70));
}

TEST(SeedDerivation, DeterministicAndLabelSensitive) {
    EXPECT_EQ(derive_seed(1, 2, "a"), derive_seed(1, 2, "a"));
    EXPECT_NE(derive_seed(1, 2, "a"), derive_seed(1, 2, "b"));
    EXPECT_NE(derive_seed(1, 2, "a"), derive_seed(1, 3, "a"));
    const BitWord key = BitWord::from_string("1100");
    EXPECT_EQ(expand_seed(key, 100, "x"), expand_seed(key, 100, "x"));
    EXPECT_NE(expand_seed(key, 100, "x"), expand_seed(key, 100, "y"));
}
