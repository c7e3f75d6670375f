#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "stochcode/channels.hpp"
#include "stochcode/ctrlcode.hpp"
#include "stochcode/errors.hpp"
#include "stochcode/rng.hpp"

using namespace stochcode;

namespace {

// Direct simulation of the pattern-triggered flipper from its description.
BitWord pattern_oracle(const BitWord& c, const BitWord& pat, std::size_t budget) {
    BitWord out = c;
    const std::size_t n = c.size(), k = pat.size();
    for (std::size_t i = k - 1; i < n; ++i) {
        bool match = true;
        for (std::size_t j = 0; j < k && match; ++j) match = c.get(i + 1 - k + j) == pat.get(j);
        if (!match) continue;
        const std::size_t epoch_end = (i / budget + 1) * budget;
        for (std::size_t q = i + 1; q < std::min(n, epoch_end + (i + 1 == epoch_end ? budget : 0)); ++q) out.flip(q);
        break;
    }
    return out;
}

} // namespace

TEST(Additive, ZeroErrorAndBurst) {
    Rng rng(1);
    const auto c = BitWord::random(1000, rng);
    auto o = apply_additive(BitWord(1000), c);
    EXPECT_EQ(o.received, c);
    EXPECT_EQ(o.flips, 0u);
    o = apply_additive(error_burst(1000, 100), c);
    EXPECT_EQ(o.flips, 100u);
    EXPECT_EQ(o.received.distance(c), 100u);
    EXPECT_THROW(apply_additive(BitWord(999), c), BadInput);
}

TEST(Additive, RandomWeightExact) {
    Rng rng(2);
    for (int t = 0; t < 50; ++t) EXPECT_EQ(error_random(4096, 409, rng).weight(), 409u);
}

TEST(Additive, BlockKillerLayout) {
    Rng rng(3);
    const auto e = error_block_killer(32768, 128, 26, 3276, rng);
    EXPECT_LE(e.weight(), 3276u);
    std::size_t killed = 0;
    for (std::size_t b = 0; b < 256; ++b) {
        const std::size_t w = e.slice(b * 128, 128).weight();
        EXPECT_TRUE(w == 0 || w == 26 || w == 3276 % 26);
        killed += w == 26;
    }
    EXPECT_EQ(killed, 3276u / 26);
}

TEST(OnlineBp, IdentityPassesThrough) {
    Rng rng(4);
    const auto c = BitWord::random(300, rng);
    OnlineBpChannel id("id", 4, 300);
    EXPECT_EQ(apply_bp(id, c).received, c);
    EXPECT_EQ(apply_bp(id, c).flips, 0u);
}

TEST(OnlineBp, LookaheadDelaysOutput) {
    // A one-state channel with lookahead t whose output at step i is the input at step i:
    // received bit j is then the input bit j + t (zero past the end).
    OnlineBpChannel ch("shift", 1, 10, 3);
    const std::size_t copy = ch.add_table({0, 1});
    ch.assign_range(0, 13, copy);
    const auto c = BitWord::from_string("1011001110");
    EXPECT_EQ(apply_bp(ch, c).received, BitWord::from_string("1001110000"));
}

TEST(OnlineBp, GreedyFlipsPrefix) {
    Rng rng(5);
    const auto c = BitWord::random(8192, rng);
    const auto o = apply_bp(bp_budget_greedy(8192, 819), c);
    EXPECT_EQ(o.flips, 819u);
    EXPECT_EQ(o.received ^ c, error_burst(8192, 819));
    EXPECT_EQ(apply_bp(bp_budget_greedy(100, 500), BitWord(100)).flips, 100u);
}

TEST(OnlineBp, PrefixFlipperStride) {
    const auto o = apply_bp(bp_prefix_flipper(100, 10, 3), BitWord(100));
    EXPECT_EQ(o.flips, 10u);
    for (std::size_t i = 0; i < 100; ++i) EXPECT_EQ(o.received.get(i), i % 3 == 0 && i < 30);
}

TEST(OnlineBp, PatternTriggerMatchesOracle) {
    Rng rng(6);
    const auto pat = default_trigger_pattern(8);
    const auto ch = bp_pattern_trigger(2048, 200, pat);
    EXPECT_LE(ch.states(), 19u);
    EXPECT_LE(ch.space_bits(), 5u);
    std::size_t triggered = 0;
    for (int t = 0; t < 300; ++t) {
        const auto c = BitWord::random(2048, rng);
        const auto o = apply_bp(ch, c);
        EXPECT_EQ(o.received, pattern_oracle(c, pat, 200));
        EXPECT_LE(o.flips, 200u);
        triggered += o.flips > 0;
    }
    EXPECT_GT(triggered, 250u);
}

TEST(OnlineBp, PatternTriggerPlanted16) {
    const auto pat = default_trigger_pattern(16);
    const auto ch = bp_pattern_trigger(4096, 409, pat);
    EXPECT_EQ(ch.states(), 18u);
    BitWord c(4096);
    c.assign(500, pat);
    const auto o = apply_bp(ch, c);
    EXPECT_EQ(o.received, pattern_oracle(c, pat, 409));
    // Match completes at 515; flips run to the end of epoch [409, 818).
    EXPECT_EQ(o.flips, 818u - 516u);
}

TEST(OnlineBp, ShippedAdversariesRespectBudget) {
    Rng rng(7);
    const auto advs = shipped_bp_adversaries(8192, 0.1);
    ASSERT_EQ(advs.size(), 5u);
    for (const auto& adv : advs) {
        EXPECT_EQ(adv.budget, 819u);
        for (int t = 0; t < 20; ++t) {
            const auto c = BitWord::random(8192, rng);
            const auto o = apply_bp(adv, c, rng);
            EXPECT_EQ(o.flips, o.received.distance(c));
            EXPECT_LE(o.flips, adv.budget) << adv.name;
            EXPECT_FALSE(o.budget_exceeded);
            EXPECT_LE(adv.sample(rng).space_bits(), 6u);
        }
    }
}

TEST(OnlineBp, RandomPositionsExactBudget) {
    Rng rng(8);
    const auto advs = shipped_bp_adversaries(4096, 0.1);
    const auto& rbp = advs.back();
    EXPECT_EQ(rbp.name, "random-bp");
    EXPECT_EQ(apply_bp(rbp, BitWord(4096), rng).flips, 409u);
}

TEST(Swapping, EqualStateNoFlips) {
    Rng rng(9);
    const auto c = BitWord::random(500, rng);
    EXPECT_EQ(apply_swapping({c, std::nullopt}, c, rng).flips, 0u);
    EXPECT_THROW(apply_swapping({BitWord(10), std::nullopt}, c, rng), BadInput);
}

TEST(Swapping, ComplementIsBinomial) {
    Rng rng(10);
    const std::size_t n = 1000;
    const auto c = BitWord::random(n, rng);
    BitWord s = c;
    for (std::size_t i = 0; i < n; ++i) s.flip(i);
    double sum = 0, sq = 0;
    const int trials = 2000;
    for (int t = 0; t < trials; ++t) {
        const double f = static_cast<double>(apply_swapping({s, std::nullopt}, c, rng).flips);
        sum += f;
        sq += f * f;
    }
    const double mean = sum / trials, var = sq / trials - mean * mean;
    EXPECT_NEAR(mean, n / 2.0, 4 * std::sqrt(n / 4.0 / trials));
    EXPECT_NEAR(var, n / 4.0, n / 4.0 * 0.15);
}

TEST(Swapping, ExactSymmetrySmallN) {
    for (std::size_t n = 1; n <= 8; ++n)
        for (std::uint64_t a = 0; a < (1u << n); ++a)
            for (std::uint64_t b = 0; b < (1u << n); ++b) {
                const auto s = BitWord::from_uint(a, n), c = BitWord::from_uint(b, n);
                ASSERT_EQ(swapping_distribution(s, c), swapping_distribution(c, s));
            }
}

TEST(Swapping, EmpiricalMatchesExactDistribution) {
    Rng rng(11);
    const auto s = BitWord::from_string("10110010"), c = BitWord::from_string("00111100");
    const auto exact = swapping_distribution(s, c);
    std::vector<double> counts(256, 0);
    const int trials = 40000;
    for (int t = 0; t < trials; ++t) counts[apply_swapping({s, std::nullopt}, c, rng).received.get_bits(0, 8)] += 1;
    double chi2 = 0;
    int cells = 0;
    for (std::size_t y = 0; y < 256; ++y) {
        if (exact[y] == 0) {
            EXPECT_EQ(counts[y], 0);
            continue;
        }
        const double e = exact[y] * trials;
        chi2 += (counts[y] - e) * (counts[y] - e) / e;
        ++cells;
    }
    EXPECT_EQ(cells, 16);
    // 15 degrees of freedom; 37.7 is the 0.999 quantile.
    EXPECT_LT(chi2, 37.7);
}

TEST(Swapping, BudgetIsHardCap) {
    Rng rng(12);
    const std::size_t n = 2000, cap = swap_budget(n, 0.05);
    EXPECT_EQ(cap, 600u);
    for (int t = 0; t < 200; ++t) {
        const auto c = BitWord::random(n, rng);
        BitWord s = c;
        for (std::size_t i = 0; i < n; ++i) s.flip(i);
        s ^= c ^ c;
        EXPECT_LE(apply_swapping({s, cap}, c, rng).flips, cap);
    }
}

TEST(Swapping, MainAttackSingletonAndPlotkin) {
    Rng rng(13);
    const auto only = BitWord::random(256, rng);
    auto single = [&](Rng&) { return only; };
    EXPECT_EQ(swap_main_attack(single, only, rng).flips, 0u);

    auto code = SmallLinearCode::random(12, 256, rng);
    auto sampler = [&](Rng& r) { return code.encode(BitWord::random(12, r)); };
    double sum = 0;
    const int trials = 2000;
    for (int t = 0; t < trials; ++t) sum += static_cast<double>(swap_main_attack(sampler, sampler(rng), rng).flips);
    EXPECT_LE(sum / trials, 256 / 4.0 + 3 * std::sqrt(256 / 16.0 / trials) + 1.0);
    for (int t = 0; t < 200; ++t)
        EXPECT_LE(swap_main_attack(sampler, sampler(rng), rng, swap_budget(256, 0.05)).flips, swap_budget(256, 0.05));
}

TEST(ChannelSpec, ParseAndPrint) {
    const auto s = ChannelSpec::parse("type=random p=0.1  # comment\n nu=0.05; stride=3");
    EXPECT_EQ(s.type, "random");
    EXPECT_DOUBLE_EQ(s.number("p", 0), 0.1);
    EXPECT_DOUBLE_EQ(s.number("nu", 0), 0.05);
    EXPECT_DOUBLE_EQ(s.number("missing", 7), 7);
    EXPECT_EQ(ChannelSpec::parse(s.to_string()).to_string(), s.to_string());
    EXPECT_THROW(ChannelSpec::parse("type=warp"), FormatError);
    EXPECT_THROW(ChannelSpec::parse("type=burst p"), FormatError);
    EXPECT_THROW(ChannelSpec::parse("type=burst p=x").number("p", 0), FormatError);
}

TEST(ChannelSpec, EveryTypeHasExactFlipAccounting) {
    Rng rng(14);
    auto code = SmallLinearCode::random(10, 1024, rng);
    ChannelContext ctx;
    ctx.block = 128;
    ctx.block_radius = 25;
    ctx.codebook_sampler = [&](Rng& r) { return code.encode(BitWord::random(10, r)); };
    for (const auto& type : channel_types()) {
        const auto spec = ChannelSpec::parse("type=" + type + " p=0.1");
        for (int t = 0; t < 5; ++t) {
            const auto c = ctx.codebook_sampler(rng);
            const auto o = run_channel(spec, c, rng, ctx);
            EXPECT_EQ(o.flips, o.received.distance(c)) << type;
            if (type != "bsc" && type != "swap") EXPECT_FALSE(o.budget_exceeded) << type;
        }
    }
}
