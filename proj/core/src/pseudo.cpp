#include "stochcode/pseudo.hpp"

#include <algorithm>
#include <cmath>
#include <bit>

#include "stochcode/errors.hpp"
#include "stochcode/gf.hpp"
#include "stochcode/rng.hpp"

namespace stochcode {

namespace {

// The sampler records a vertex every kWalkStride steps, i.e. it walks on a
// power of the Gabber-Galil graph; with stride 1 consecutive samples are too
// correlated for the operating table.
constexpr std::size_t kWalkStride = 4;

std::size_t ceil_log2(std::size_t n) {
    std::size_t w = 0;
    while ((std::size_t{1} << w) < n) ++w;
    return w;
}

} // namespace

int twise_field_bits(std::size_t n) { return static_cast<int>(std::max<std::size_t>(1, ceil_log2(n))); }

std::size_t twise_seed_len(std::size_t t, std::size_t n) { return t * static_cast<std::size_t>(twise_field_bits(n)); }

BitWord twise_bits(const Seed& seed, std::size_t t, std::size_t n) {
    require(t >= 1, "twise_bits: t must be positive");
    require(seed.size() % t == 0 && seed.size() > 0, "twise_bits: seed length must be t*w");
    const std::size_t w = seed.size() / t;
    require(w <= 16, "twise_bits: field width above 16 unsupported");
    require((std::size_t{1} << w) >= n, "twise_bits: 2^w < n");
    GFContext F(static_cast<int>(w));
    std::vector<GFElem> coeff(t);
    for (std::size_t j = 0; j < t; ++j) coeff[j] = GFElem(static_cast<std::uint32_t>(seed.get_bits(j * w, w)));

    // Low bit of f(a) = xor over j of lowbit(c_j a^j), one table lookup per term.
    const std::uint32_t order = F.size() - 1;
    std::vector<std::uint32_t> log_c;
    std::vector<std::uint32_t> degree;
    for (std::size_t j = 0; j < t; ++j) {
        if (coeff[j].is_zero()) continue;
        log_c.push_back(F.log(coeff[j]));
        degree.push_back(static_cast<std::uint32_t>(j));
    }
    std::vector<std::uint8_t> low(2 * static_cast<std::size_t>(order));
    for (std::size_t e = 0; e < low.size(); ++e) low[e] = F.exp(e).value & 1u;

    // Points visited in discrete-log order so each exponent advances by its degree.
    std::vector<std::uint32_t> step(degree.size()), cur(log_c);
    for (std::size_t q = 0; q < degree.size(); ++q) step[q] = degree[q] % order;
    BitWord out(n);
    if (n > 0 && (coeff[0].value & 1u)) out.set(0, true);
    for (std::uint32_t la = 0; la < order; ++la) {
        const std::uint32_t i = F.exp(la).value;
        if (i < n) {
            std::uint32_t acc = 0;
            for (std::size_t q = 0; q < cur.size(); ++q) acc ^= low[cur[q]];
            if (acc) out.set(i, true);
        }
        for (std::size_t q = 0; q < cur.size(); ++q) {
            cur[q] += step[q];
            if (cur[q] >= 2 * order) cur[q] -= order;
        }
    }
    return out;
}

Permutation knr_perm(const Seed& seed, std::size_t /*t*/, std::size_t n) {
    require(seed.size() == kPermSeedBits, "knr_perm: seed must be 256 bits");
    Permutation p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i);
    KeyedStream s(seed, "perm");
    for (std::size_t i = n; i-- > 1;) std::swap(p[i], p[s.below(i + 1)]);
    return p;
}

BitWord permute(const Permutation& perm, const BitWord& in) {
    require(perm.size() == in.size(), "permute: length mismatch");
    BitWord out(in.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (in.get(perm[i])) out.set(i, true);
    return out;
}

BitWord unpermute(const Permutation& perm, const BitWord& in) {
    require(perm.size() == in.size(), "unpermute: length mismatch");
    BitWord out(in.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (in.get(i)) out.set(perm[i], true);
    return out;
}

std::size_t sampler_grid_side(std::size_t N) {
    std::size_t m = static_cast<std::size_t>(std::sqrt(static_cast<double>(N)));
    while (m * m < N) ++m;
    return std::max<std::size_t>(m, 2);
}

std::size_t sampler_seed_len(std::size_t ell, std::size_t N) {
    const std::size_t m = sampler_grid_side(N);
    return 2 * ceil_log2(m) + 3 * kWalkStride * ((13 * ell + 9) / 10);
}

namespace {

std::vector<std::uint32_t> expander_walk(const Seed& seed, std::size_t ell, std::size_t N) {
    const std::uint64_t m = sampler_grid_side(N);
    const std::size_t cb = ceil_log2(m);
    KeyedStream tail(seed, "sampler-walk");
    std::size_t pos = 0;
    auto take = [&](std::size_t nbits) -> std::uint64_t {
        if (pos + nbits <= seed.size()) {
            const std::uint64_t v = seed.get_bits(pos, nbits);
            pos += nbits;
            return v;
        }
        pos = seed.size();
        return tail.next() & ((std::uint64_t{1} << nbits) - 1);
    };
    std::uint64_t x = take(cb) % m, y = take(cb) % m;

    std::vector<std::uint32_t> out;
    out.reserve(ell);
    std::vector<bool> seen(N, false);
    auto visit = [&]() {
        const std::uint64_t v = x * m + y;
        if (v < N && !seen[v]) {
            seen[v] = true;
            out.push_back(static_cast<std::uint32_t>(v));
        }
    };
    visit();
    for (std::size_t step = 1; out.size() < ell; ++step) {
        switch (take(3)) {
        case 0: x = (x + 2 * y) % m; break;
        case 1: x = (x + m - (2 * y) % m) % m; break;
        case 2: x = (x + 2 * y + 1) % m; break;
        case 3: x = (x + m - (2 * y + 1) % m) % m; break;
        case 4: y = (y + 2 * x) % m; break;
        case 5: y = (y + m - (2 * x) % m) % m; break;
        case 6: y = (y + 2 * x + 1) % m; break;
        default: y = (y + m - (2 * x + 1) % m) % m; break;
        }
        if (step % kWalkStride == 0) visit();
    }
    return out;
}

std::vector<std::uint32_t> ideal_sample(const Seed& seed, std::size_t ell, std::size_t N) {
    KeyedStream s(seed, "sampler-ideal");
    std::vector<std::uint32_t> idx(N);
    for (std::size_t i = 0; i < N; ++i) idx[i] = static_cast<std::uint32_t>(i);
    for (std::size_t i = 0; i < ell; ++i) std::swap(idx[i], idx[i + s.below(N - i)]);
    idx.resize(ell);
    return idx;
}

} // namespace

std::vector<std::uint32_t> sampler(const Seed& seed, std::size_t ell, std::size_t N, SamplerKind kind) {
    require(ell <= N, "sampler: ell > N");
    if (ell == N) {
        std::vector<std::uint32_t> all(N);
        for (std::size_t i = 0; i < N; ++i) all[i] = static_cast<std::uint32_t>(i);
        return all;
    }
    return kind == SamplerKind::Expander ? expander_walk(seed, ell, N) : ideal_sample(seed, ell, N);
}

const std::vector<SamplerOperatingPoint>& sampler_operating_table() {
    static const std::vector<SamplerOperatingPoint> table = {
        {0.10, 0.01, 256},
        {0.15, 0.01, 128},
        {0.25, 0.01, 64},
    };
    return table;
}

NisanParams::NisanParams(std::size_t s, std::size_t m) : block_bits(s), output_len(m) {
    require(s >= 1 && s <= 16, "NisanParams: block bits must be in [1, 16]");
    require(m >= 1, "NisanParams: output length must be positive");
}

std::size_t NisanParams::depth() const { return ceil_log2((output_len + block_bits - 1) / block_bits); }

double NisanParams::error_bound() const { return std::ldexp(1.0, -static_cast<int>(block_bits)); }

BitWord nisan(const NisanParams& params, const Seed& seed) {
    require(seed.size() == params.seed_len(), "nisan: seed length mismatch");
    const std::size_t s = params.block_bits, k = params.depth();
    GFContext F(static_cast<int>(s));
    std::vector<GFElem> a(k + 1), b(k + 1);
    for (std::size_t i = 1; i <= k; ++i) {
        a[i] = GFElem(static_cast<std::uint32_t>(seed.get_bits((2 * i - 1) * s, s)));
        b[i] = GFElem(static_cast<std::uint32_t>(seed.get_bits(2 * i * s, s)));
    }
    // Block j applies h_i for every set bit i-1 of j, highest level first, so
    // block j = h_{lsb(j)+1}(block j - 2^lsb(j)).
    const std::size_t nblocks = std::size_t{1} << k;
    std::vector<GFElem> blk(nblocks);
    blk[0] = GFElem(static_cast<std::uint32_t>(seed.get_bits(0, s)));
    for (std::size_t j = 1; j < nblocks; ++j) {
        const std::size_t low = static_cast<std::size_t>(std::countr_zero(j));
        const GFElem z = blk[j - (std::size_t{1} << low)];
        blk[j] = F.add(F.mul(a[low + 1], z), b[low + 1]);
    }
    BitWord out(params.output_len);
    for (std::size_t j = 0; j < nblocks && j * s < params.output_len; ++j)
        out.set_bits(j * s, std::min(s, params.output_len - j * s), blk[j].value);
    return out;
}

} // namespace stochcode
