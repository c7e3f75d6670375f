#include <gtest/gtest.h>

#include <cmath>

#include "stochcode/entropy.hpp"
#include "stochcode/errors.hpp"
#include "stochcode/pseudo.hpp"
#include "stochcode/rec.hpp"
#include "stochcode/rng.hpp"

using namespace stochcode;

namespace {

const RecCode& desk_rec() {
    static const RecCode c = [] {
        RecOptions o;
        o.n_rec = 24576;
        return rec_build(0.1, 0.5, 14, 7, o);
    }();
    return c;
}

// a=5 over 32 blocks: outer dimension 30, one correctable block.
const RecCode& small_rec() {
    static const RecCode c = rec_build(0.02, 0.8, 5, 3);
    return c;
}

BitWord random_weight(std::size_t n, std::size_t w, Rng& rng) {
    BitWord e(n);
    std::size_t k = 0;
    while (k < w) {
        const auto j = static_cast<std::size_t>(rng.below(n));
        if (!e.get(j)) {
            e.set(j, true);
            ++k;
        }
    }
    return e;
}

} // namespace

TEST(RecBuild, DeskShape) {
    const auto& c = desk_rec();
    EXPECT_EQ(c.n_rec(), 24576u);
    EXPECT_EQ(c.n_data() * c.b_data(), c.n_rec());
    EXPECT_EQ(c.a(), 14u);
    EXPECT_EQ(c.outer().k(), static_cast<std::size_t>(std::ceil(0.95 * c.n_data() - 1e-9)));
    EXPECT_LE(c.inner_error(), c.kappa() / 10.0);
    EXPECT_GE(c.b_data(), static_cast<std::size_t>(std::ceil(14 / (1 - binary_entropy(0.1) - 0.05))));
}

TEST(RecBuild, NoiselessChannelAcceptsFirstCandidate) {
    const auto c = rec_build(0.0, 0.5, 6, 1);
    EXPECT_EQ(c.b_data(), static_cast<std::size_t>(std::ceil(6 / 0.95 - 1e-9)));
    EXPECT_EQ(c.inner_error(), 0.0);
}

TEST(RecBuild, RateAtLeastOuterTimesInner) {
    for (const RecCode* c : {&desk_rec(), &small_rec()}) {
        const double eps = c == &desk_rec() ? 0.5 : 0.8;
        EXPECT_GE(c->rate() + 1e-12, (1 - eps / 10) * static_cast<double>(c->a()) / c->b_data());
        EXPECT_DOUBLE_EQ(c->rate(), static_cast<double>(c->outer().k() * c->a()) / c->n_rec());
    }
}

TEST(RecBuild, InnerErrorReMeasured) {
    const auto c = rec_build(0.05, 0.5, 8, 11);
    const double target = c.kappa() / 10.0;
    EXPECT_LE(c.inner_error(), target);
    Rng fresh(99);
    const auto est = rec_measure_inner_error(c, 0.05, 100000, fresh);
    const double sigma = std::sqrt(target * (1 - target) / 100000.0);
    EXPECT_LE(est.rate(), target + 2 * sigma);
}

TEST(RecBuild, BadParametersThrow) {
    EXPECT_THROW(rec_build(0.5, 0.1, 8, 1), BadInput);
    EXPECT_THROW(rec_build(0.1, 0.6, 8, 1), BadInput);
    EXPECT_THROW(rec_build(0.1, 0.1, 15, 1), BadInput);
    RecOptions o;
    o.candidate_budget = 1;
    o.mc_trials = 2000;
    o.max_block = 12;
    EXPECT_THROW(rec_build(0.2, 0.1, 8, 1, o), SearchExhausted);
}

TEST(RecCodec, InnerDecodeIsMaximumLikelihood) {
    const auto& c = small_rec();
    Rng rng(1);
    for (int t = 0; t < 500; ++t) {
        const BitWord y = BitWord::random(c.b_data(), rng);
        std::size_t best = 1000;
        std::uint32_t arg = 0;
        for (std::uint32_t m = 0; m < 32; ++m) {
            const std::size_t d = c.inner().encode(BitWord::from_uint(m, 5)).distance(y);
            if (d < best) {
                best = d;
                arg = m;
            }
        }
        EXPECT_EQ(c.inner_decode(y.words().data()), arg);
    }
}

TEST(RecCodec, ZeroMessageAndLength) {
    const auto& c = desk_rec();
    const auto y = rec_encode(c, BitWord(c.message_bits()));
    EXPECT_EQ(y.size(), c.n_rec());
    EXPECT_EQ(y.weight(), 0u);
    EXPECT_THROW(rec_encode(c, BitWord(c.message_bits() + 1)), BadInput);
    EXPECT_THROW(rec_decode(c, BitWord(c.n_rec() - 1)), BadInput);
}

TEST(RecCodec, CleanRoundTripAndDeterminism) {
    const auto& c = desk_rec();
    Rng rng(2);
    for (int t = 0; t < 5; ++t) {
        const auto m = BitWord::random(c.message_bits(), rng);
        const auto y = rec_encode(c, m);
        EXPECT_EQ(rec_encode(c, m), y);
        const auto d = rec_decode(c, y);
        ASSERT_TRUE(d.has_value());
        EXPECT_EQ(*d, m);
    }
}

TEST(RecCodec, SingleSymbolChangeMovesManyBlocks) {
    const auto& c = desk_rec();
    Rng rng(3);
    auto m = BitWord::random(c.message_bits(), rng);
    auto m2 = m;
    m2.flip(5 * c.a() + 3);
    const auto y = rec_encode(c, m), y2 = rec_encode(c, m2);
    std::size_t changed = 0;
    for (std::size_t i = 0; i < c.n_data(); ++i)
        if (y.slice(i * c.b_data(), c.b_data()) != y2.slice(i * c.b_data(), c.b_data())) ++changed;
    EXPECT_GE(changed, c.n_data() - static_cast<std::size_t>(c.outer().d_max));
}

TEST(RecCodec, SmallCodeEveryBlockEveryWrongSymbol) {
    const auto& c = small_rec();
    ASSERT_EQ(c.n_data(), 32u);
    ASSERT_EQ(c.correctable_blocks(), 1u);
    Rng rng(4);
    const auto m = BitWord::random(c.message_bits(), rng);
    const auto y = rec_encode(c, m);
    for (std::size_t blk = 0; blk < c.n_data(); ++blk) {
        for (std::uint32_t sym = 0; sym < 32; ++sym) {
            BitWord z = y;
            const BitWord wrong = c.inner().encode(BitWord::from_uint(sym, 5));
            z.assign(blk * c.b_data(), wrong);
            const auto d = rec_decode(c, z);
            ASSERT_TRUE(d.has_value());
            EXPECT_EQ(*d, m);
        }
    }
}

TEST(RecCodec, DeskWorstCaseBlockCorruption) {
    const auto& c = desk_rec();
    Rng rng(5);
    const std::size_t e = c.correctable_blocks();
    for (int t = 0; t < 12; ++t) {
        const auto m = BitWord::random(c.message_bits(), rng);
        BitWord y = rec_encode(c, m);
        for (std::size_t j = 0; j < e; ++j) {
            std::size_t blk = t % 3 == 0 ? j : t % 3 == 1 ? c.n_data() - 1 - j : rng.below(c.n_data());
            y.assign(blk * c.b_data(), BitWord::random(c.b_data(), rng));
        }
        const auto d = rec_decode(c, y);
        ASSERT_TRUE(d.has_value());
        EXPECT_EQ(*d, m);
    }
}

TEST(RecCodec, PermutedErrorsDecode) {
    const auto& c = desk_rec();
    Rng rng(6);
    int ok = 0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        const auto m = BitWord::random(c.message_bits(), rng);
        const BitWord e = random_weight(c.n_rec(), c.n_rec() / 10, rng);
        const auto perm = knr_perm(BitWord::random(kPermSeedBits, rng), 64, c.n_rec());
        const auto d = rec_decode(c, rec_encode(c, m) ^ permute(perm, e));
        ok += d && *d == m;
    }
    EXPECT_GE(ok, 99);
}

TEST(RecCodec, SerializationRoundTrip) {
    const auto& c = small_rec();
    ByteWriter w;
    c.write(w);
    const auto bytes = w.take();
    ByteReader r(bytes);
    const auto back = RecCode::read(r);
    EXPECT_EQ(back.inner(), c.inner());
    EXPECT_EQ(back.n_data(), c.n_data());
    EXPECT_EQ(back.outer().k(), c.outer().k());
    EXPECT_EQ(back.inner_error(), c.inner_error());
}
