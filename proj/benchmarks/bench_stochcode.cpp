#include <benchmark/benchmark.h>

#include "stochcode/channels.hpp"
#include "stochcode/codec_additive.hpp"
#include "stochcode/codec_space.hpp"
#include "stochcode/ctrlcode.hpp"
#include "stochcode/harness.hpp"
#include "stochcode/pseudo.hpp"
#include "stochcode/rec.hpp"
#include "stochcode/rng.hpp"
#include "stochcode/rs.hpp"

using namespace stochcode;

namespace {

const CodeLayout& additive() { return cached_additive_layout(AdditiveParams{}); }
const SpaceLayout& space() { return cached_space_layout(SpaceParams{}); }

void BM_RsUniqueDecode(benchmark::State& state) {
    GFContext F(6);
    std::vector<GFElem> pts;
    for (std::uint32_t i = 0; i < 64; ++i) pts.emplace_back(i);
    const int d = static_cast<int>(state.range(0));
    RsCode code(F, pts, d);
    Rng rng(1);
    Poly f;
    for (int i = 0; i <= d; ++i) f.emplace_back(static_cast<std::uint32_t>(rng.below(64)));
    auto y = rs_encode(code, f);
    for (std::size_t i = 0; i < (64 - static_cast<std::size_t>(d) - 1) / 2; ++i)
        y[i] = F.add(y[i], GFElem(1 + static_cast<std::uint32_t>(rng.below(63))));
    for (auto _ : state) benchmark::DoNotOptimize(rs_unique_decode(code, y));
}
BENCHMARK(BM_RsUniqueDecode)->Arg(8)->Arg(19);

void BM_SudanListDecode(benchmark::State& state) {
    GFContext F(6);
    Rng rng(2);
    const int d = 4;
    Poly f;
    for (int i = 0; i <= d; ++i) f.emplace_back(static_cast<std::uint32_t>(rng.below(64)));
    std::vector<RsPair> pairs;
    for (std::uint32_t x = 0; x < 64; ++x) {
        GFElem y = poly_eval(F, f, GFElem(x));
        if (x % 2) y = GFElem(static_cast<std::uint32_t>(rng.below(64)));
        pairs.push_back({GFElem(x), y});
    }
    const auto t = sudan_min_agreement(pairs.size(), d);
    for (auto _ : state) benchmark::DoNotOptimize(rs_list_decode(F, pairs, d, t));
}
BENCHMARK(BM_SudanListDecode);

void BM_ScDecode(benchmark::State& state) {
    const auto& sc = additive().sc;
    Rng rng(3);
    BitWord y = sc_encode(sc, BitWord::random(sc.b(), rng), BitWord::random(sc.b_rnd(), rng));
    for (std::size_t i = 0; i < sc.radius(); ++i) y.flip(i * 5);
    for (auto _ : state) benchmark::DoNotOptimize(sc_decode(sc, y));
}
BENCHMARK(BM_ScDecode);

void BM_LscListDecode(benchmark::State& state) {
    const auto& lsc = space().lsc;
    Rng rng(4);
    BitWord y = lsc.encode(rng.below(std::uint64_t{1} << lsc.k()), rng.below(std::uint64_t{1} << lsc.s()));
    for (std::size_t i = 0; i < lsc.radius(); ++i) y.flip(i * 6);
    for (auto _ : state) benchmark::DoNotOptimize(lsc_list_decode(lsc, y));
}
BENCHMARK(BM_LscListDecode);

void BM_RecDecode(benchmark::State& state) {
    const auto& rec = additive().rec;
    Rng rng(5);
    const BitWord c = rec_encode(rec, BitWord::random(rec.message_bits(), rng));
    const BitWord y = c ^ error_bsc(c.size(), 0.1, rng);
    for (auto _ : state) benchmark::DoNotOptimize(rec_decode(rec, y));
}
BENCHMARK(BM_RecDecode)->Unit(benchmark::kMillisecond);

void BM_TwiseBits(benchmark::State& state) {
    const std::size_t n = 24576, t = static_cast<std::size_t>(state.range(0));
    Rng rng(6);
    const Seed s = BitWord::random(twise_seed_len(t, n), rng);
    for (auto _ : state) benchmark::DoNotOptimize(twise_bits(s, t, n));
}
BENCHMARK(BM_TwiseBits)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_KnrPerm(benchmark::State& state) {
    Rng rng(7);
    const Seed s = BitWord::random(kPermSeedBits, rng);
    for (auto _ : state) benchmark::DoNotOptimize(knr_perm(s, 64, 24576));
}
BENCHMARK(BM_KnrPerm)->Unit(benchmark::kMillisecond);

void BM_Sampler(benchmark::State& state) {
    Rng rng(8);
    const Seed s = BitWord::random(sampler_seed_len(64, 256), rng);
    for (auto _ : state) benchmark::DoNotOptimize(sampler(s, 64, 256));
}
BENCHMARK(BM_Sampler);

void BM_Nisan(benchmark::State& state) {
    const NisanParams p(12, 6144);
    Rng rng(9);
    const Seed s = BitWord::random(p.seed_len(), rng);
    for (auto _ : state) benchmark::DoNotOptimize(nisan(p, s));
}
BENCHMARK(BM_Nisan);

void BM_AdditiveEncode(benchmark::State& state) {
    const auto& L = additive();
    Rng rng(10);
    const BitWord m = BitWord::random(L.message_bits(), rng);
    for (auto _ : state) benchmark::DoNotOptimize(additive_encode(L, m, rng));
}
BENCHMARK(BM_AdditiveEncode)->Unit(benchmark::kMillisecond);

void BM_AdditiveDecode(benchmark::State& state) {
    const auto& L = additive();
    Rng rng(11);
    const BitWord c = additive_encode(L, BitWord::random(L.message_bits(), rng), rng).codeword;
    const BitWord y = c ^ error_random(L.N, L.N / 10, rng);
    for (auto _ : state) benchmark::DoNotOptimize(additive_decode(L, y));
}
BENCHMARK(BM_AdditiveDecode)->Unit(benchmark::kMillisecond);

void BM_SpaceListDecode(benchmark::State& state) {
    const auto& L = space();
    Rng rng(12);
    const BitWord c = space_encode(L, BitWord::random(L.message_bits(), rng), rng).codeword;
    const BitWord y = c ^ error_random(L.N, L.N / 10, rng);
    for (auto _ : state) benchmark::DoNotOptimize(space_list_decode(L, y));
}
BENCHMARK(BM_SpaceListDecode)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
