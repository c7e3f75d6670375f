#include "stochcode/branching.hpp"

#include <algorithm>
#include <cmath>

#include "stochcode/errors.hpp"
#include "stochcode/gf.hpp"
#include "stochcode/rng.hpp"

namespace stochcode {

OnlineProgram::OnlineProgram(std::string name, std::size_t width, std::size_t length)
    : name_(std::move(name)), width_(width), length_(length), accept_(width, false) {
    require(width >= 1 && width <= 65535, "OnlineProgram: width out of range");
    layers_.assign(1, std::vector<std::uint16_t>(2 * width, 0));
}

void OnlineProgram::set_uniform_layer(std::vector<std::uint16_t> layer) {
    require(layer.size() == 2 * width_, "OnlineProgram: layer size must be 2*width");
    for (auto s : layer) require(s < width_, "OnlineProgram: transition outside state set");
    layers_.assign(1, std::move(layer));
}

void OnlineProgram::set_layers(std::vector<std::vector<std::uint16_t>> layers) {
    require(layers.size() == length_, "OnlineProgram: need one layer per position");
    for (const auto& l : layers) {
        require(l.size() == 2 * width_, "OnlineProgram: layer size must be 2*width");
        for (auto s : l) require(s < width_, "OnlineProgram: transition outside state set");
    }
    layers_ = std::move(layers);
}

void OnlineProgram::set_accepting(std::vector<bool> accept) {
    require(accept.size() == width_, "OnlineProgram: accepting set size must equal width");
    accept_ = std::move(accept);
}

std::uint16_t OnlineProgram::run(const BitWord& x, std::size_t from, std::size_t count, std::uint16_t state) const {
    for (std::size_t i = 0; i < count; ++i) state = step(from + i, state, x.get(from + i));
    return state;
}

bool OnlineProgram::accepts(const BitWord& x) const {
    require(x.size() == length_, "OnlineProgram::accepts: input length mismatch");
    return accept_[run(x, 0, length_, 0)];
}

double OnlineProgram::uniform_acceptance() const {
    std::vector<double> dist(width_, 0.0), next(width_);
    dist[0] = 1.0;
    for (std::size_t i = 0; i < length_; ++i) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t s = 0; s < width_; ++s) {
            if (dist[s] == 0.0) continue;
            next[step(i, static_cast<std::uint16_t>(s), false)] += 0.5 * dist[s];
            next[step(i, static_cast<std::uint16_t>(s), true)] += 0.5 * dist[s];
        }
        dist.swap(next);
    }
    double p = 0.0;
    for (std::size_t s = 0; s < width_; ++s)
        if (accept_[s]) p += dist[s];
    return p;
}

OnlineProgram program_constant(std::size_t n, bool accept) {
    OnlineProgram p(accept ? "const-accept" : "const-reject", 1, n);
    p.set_uniform_layer({0, 0});
    p.set_accepting({accept});
    return p;
}

OnlineProgram program_read_bit(std::size_t n, std::size_t index) {
    require(index < n, "program_read_bit: index out of range");
    OnlineProgram p("read-bit-" + std::to_string(index), 2, n);
    std::vector<std::vector<std::uint16_t>> layers(n, std::vector<std::uint16_t>{0, 0, 1, 1});
    layers[index] = {0, 1, 1, 1};
    p.set_layers(std::move(layers));
    p.set_accepting({false, true});
    return p;
}

OnlineProgram program_parity(std::size_t n) { return program_count_mod(n, 2, 1); }

OnlineProgram program_count_mod(std::size_t n, std::size_t mod, std::size_t residue) {
    require(mod >= 1 && residue < mod, "program_count_mod: bad modulus");
    OnlineProgram p("count-mod-" + std::to_string(mod) + "-" + std::to_string(residue), mod, n);
    std::vector<std::uint16_t> layer(2 * mod);
    for (std::size_t s = 0; s < mod; ++s) {
        layer[2 * s] = static_cast<std::uint16_t>(s);
        layer[2 * s + 1] = static_cast<std::uint16_t>((s + 1) % mod);
    }
    p.set_uniform_layer(std::move(layer));
    std::vector<bool> acc(mod, false);
    acc[residue] = true;
    p.set_accepting(std::move(acc));
    return p;
}

OnlineProgram program_threshold(std::size_t n, std::size_t k, std::size_t width) {
    require(k < width, "program_threshold: k must be below width");
    OnlineProgram p("threshold-" + std::to_string(k), width, n);
    std::vector<std::uint16_t> layer(2 * width);
    for (std::size_t s = 0; s < width; ++s) {
        layer[2 * s] = static_cast<std::uint16_t>(s);
        layer[2 * s + 1] = static_cast<std::uint16_t>(std::min(s + 1, width - 1));
    }
    p.set_uniform_layer(std::move(layer));
    std::vector<bool> acc(width, false);
    for (std::size_t s = k; s < width; ++s) acc[s] = true;
    p.set_accepting(std::move(acc));
    return p;
}

OnlineProgram program_pattern(std::size_t n, const BitWord& pattern) {
    const std::size_t L = pattern.size();
    require(L >= 1, "program_pattern: empty pattern");
    OnlineProgram p("pattern-" + pattern.to_string(), L + 1, n);
    // KMP failure function.
    std::vector<std::size_t> fail(L + 1, 0);
    for (std::size_t i = 1, k = 0; i < L; ++i) {
        while (k > 0 && pattern.get(i) != pattern.get(k)) k = fail[k];
        if (pattern.get(i) == pattern.get(k)) ++k;
        fail[i + 1] = k;
    }
    std::vector<std::uint16_t> layer(2 * (L + 1));
    for (std::size_t s = 0; s <= L; ++s)
        for (int b = 0; b < 2; ++b) {
            std::size_t next;
            if (s == L) {
                next = L; // absorbing once matched
            } else {
                std::size_t k = s;
                while (k > 0 && pattern.get(k) != static_cast<bool>(b)) k = fail[k];
                next = pattern.get(k) == static_cast<bool>(b) ? k + 1 : 0;
            }
            layer[2 * s + static_cast<std::size_t>(b)] = static_cast<std::uint16_t>(next);
        }
    p.set_uniform_layer(std::move(layer));
    std::vector<bool> acc(L + 1, false);
    acc[L] = true;
    p.set_accepting(std::move(acc));
    return p;
}

OnlineProgram program_random(std::size_t n, std::size_t width, Rng& rng) {
    OnlineProgram p("random-w" + std::to_string(width), width, n);
    std::vector<std::vector<std::uint16_t>> layers(n, std::vector<std::uint16_t>(2 * width));
    for (auto& l : layers)
        for (auto& s : l) s = static_cast<std::uint16_t>(rng.below(width));
    p.set_layers(std::move(layers));
    std::vector<bool> acc(width);
    for (std::size_t s = 0; s < width; ++s) acc[s] = rng.bit();
    p.set_accepting(std::move(acc));
    return p;
}

std::vector<OnlineProgram> probe_family(std::size_t n, std::size_t width, std::size_t random_count,
                                        std::uint64_t seed) {
    require(width >= 2, "probe_family: width must be at least 2");
    std::vector<OnlineProgram> out;
    out.push_back(program_parity(n));
    out.push_back(program_read_bit(n, std::min<std::size_t>(1, n - 1)));
    for (std::size_t mod = 3; mod <= width && mod <= 5; ++mod) out.push_back(program_count_mod(n, mod, 0));
    out.push_back(program_threshold(n, std::min<std::size_t>(width - 1, 3), width));
    if (width >= 3) {
        const std::size_t L = std::min<std::size_t>(width - 1, 12);
        BitWord zeros(L), alt(L);
        for (std::size_t i = 0; i < L; i += 2) alt.set(i, true);
        out.push_back(program_pattern(n, zeros));
        out.push_back(program_pattern(n, alt));
    }
    Rng rng(seed);
    for (std::size_t i = 0; i < random_count; ++i) out.push_back(program_random(n, width, rng));
    return out;
}

namespace {

// Output bits of the depth-d Nisan generator on base block z with hashes
// a[1..d], b[1..d], written into bits[0 .. S * 2^d).
void nisan_bits(const GFContext& F, std::size_t s, std::size_t d, GFElem z, const std::vector<GFElem>& a,
                const std::vector<GFElem>& b, std::vector<std::uint8_t>& bits, std::vector<GFElem>& blk) {
    const std::size_t nblocks = std::size_t{1} << d;
    blk.resize(nblocks);
    blk[0] = z;
    for (std::size_t j = 1; j < nblocks; ++j) {
        std::size_t low = 0;
        while (!((j >> low) & 1u)) ++low;
        blk[j] = F.add(F.mul(a[low + 1], blk[j - (std::size_t{1} << low)]), b[low + 1]);
    }
    bits.resize(nblocks * s);
    for (std::size_t j = 0; j < nblocks; ++j)
        for (std::size_t t = 0; t < s; ++t) bits[j * s + t] = static_cast<std::uint8_t>((blk[j].value >> t) & 1u);
}

std::uint16_t run_bits(const OnlineProgram& p, const std::vector<std::uint8_t>& bits, std::size_t offset,
                       std::size_t count, std::uint16_t state) {
    for (std::size_t i = 0; i < count; ++i) state = p.step(offset + i, state, bits[i] != 0);
    return state;
}

} // namespace

NisanAudit nisan_audit_exact(const NisanParams& params, const OnlineProgram& program) {
    require(program.length() == params.output_len, "nisan_audit_exact: program length != output length");
    const std::size_t s = params.block_bits, k = params.depth(), m = params.output_len;
    const std::uint32_t q = std::uint32_t{1} << s;
    GFContext F(static_cast<int>(s));
    NisanAudit res;
    res.uniform_acceptance = program.uniform_acceptance();

    std::vector<std::uint8_t> bits;
    std::vector<GFElem> blk;
    if (k == 0) {
        std::vector<GFElem> none(1);
        std::uint64_t acc = 0;
        for (std::uint32_t x = 0; x < q; ++x) {
            nisan_bits(F, s, 0, GFElem(x), none, none, bits, blk);
            if (program.accepting(run_bits(program, bits, 0, m, 0))) ++acc;
        }
        res.enumerated = q;
        res.prg_acceptance = static_cast<double>(acc) / q;
        res.advantage = std::abs(res.prg_acceptance - res.uniform_acceptance);
        return res;
    }

    if (k == 1) {
        const std::size_t half = s, first = std::min(m, half), second = m > half ? m - half : 0;
        std::vector<GFElem> none(1);
        std::vector<std::vector<std::uint8_t>> g(q);
        for (std::uint32_t z = 0; z < q; ++z) nisan_bits(F, s, 0, GFElem(z), none, none, g[z], blk);
        std::uint64_t acc = 0;
        for (std::uint32_t x = 0; x < q; ++x)
            for (std::uint32_t y = 0; y < q; ++y)
                acc += program.accepting(run_bits(program, g[y], half, second, run_bits(program, g[x], 0, first, 0)));
        res.enumerated = std::uint64_t{q} * q;
        res.prg_acceptance = static_cast<double>(acc) / static_cast<double>(res.enumerated);
        res.advantage = std::abs(res.prg_acceptance - res.uniform_acceptance);
        return res;
    }

    // Quarters are G_{k-2} on x, h_{k-1}(x), y = h_k(x), h_{k-1}(y). (x, y) is a
    // uniform pair; given x != y, (h_{k-1}(x), h_{k-1}(y)) is a uniform pair,
    // and given x = y both equal one uniform block. Only h_1..h_{k-2} are enumerated.
    const std::size_t lower = k - 2;
    const std::size_t Q = s << lower;
    const std::size_t tuple_bits = 2 * lower * s;
    require(tuple_bits <= 28, "nisan_audit_exact: instance too large to enumerate");
    const std::uint64_t tuples = std::uint64_t{1} << tuple_bits;
    const std::size_t width = program.width();
    auto span = [&](std::size_t quarter) {
        const std::size_t off = quarter * Q;
        return off >= m ? std::size_t{0} : std::min(Q, m - off);
    };

    std::vector<GFElem> a(lower + 1), b(lower + 1);
    std::vector<std::uint8_t> g;
    std::vector<std::uint16_t> A(q), B(q * width), C(q * width), D(q * width);
    std::vector<std::uint64_t> v(width), w2(width), gsum(width);
    std::uint64_t acc = 0;
    for (std::uint64_t tup = 0; tup < tuples; ++tup) {
        std::uint64_t c = tup;
        for (std::size_t i = 1; i <= lower; ++i) {
            a[i] = GFElem(static_cast<std::uint32_t>(c & (q - 1)));
            c >>= s;
            b[i] = GFElem(static_cast<std::uint32_t>(c & (q - 1)));
            c >>= s;
        }
        for (std::uint32_t z = 0; z < q; ++z) {
            nisan_bits(F, s, lower, GFElem(z), a, b, g, blk);
            A[z] = run_bits(program, g, 0, span(0), 0);
            for (std::uint16_t st = 0; st < width; ++st) {
                B[z * width + st] = run_bits(program, g, Q, span(1), st);
                C[z * width + st] = run_bits(program, g, 2 * Q, span(2), st);
                D[z * width + st] = run_bits(program, g, 3 * Q, span(3), st);
            }
        }
        std::fill(v.begin(), v.end(), 0);
        for (std::uint32_t z = 0; z < q; ++z) ++v[A[z]];
        for (const auto* M : {&B, &C, &D}) {
            std::fill(w2.begin(), w2.end(), 0);
            for (std::uint16_t st = 0; st < width; ++st)
                if (v[st])
                    for (std::uint32_t z = 0; z < q; ++z) w2[(*M)[z * width + st]] += v[st];
            v.swap(w2);
        }
        std::uint64_t all = 0;
        for (std::uint16_t st = 0; st < width; ++st)
            if (program.accepting(st)) all += v[st];
        for (std::uint16_t st = 0; st < width; ++st) {
            gsum[st] = 0;
            for (std::uint32_t z = 0; z < q; ++z) gsum[st] += program.accepting(D[z * width + st]);
        }
        std::uint64_t diag = 0, same = 0;
        for (std::uint32_t x = 0; x < q; ++x)
            for (std::uint32_t x1 = 0; x1 < q; ++x1) {
                const std::uint16_t st = C[x * width + B[x1 * width + A[x]]];
                diag += gsum[st];
                same += program.accepting(D[x1 * width + st]);
            }
        acc += all - diag + std::uint64_t{q} * same;
    }
    res.enumerated = tuples * q * q;
    const double denom = static_cast<double>(tuples) * std::pow(static_cast<double>(q), 4);
    res.prg_acceptance = static_cast<double>(acc) / denom;
    res.advantage = std::abs(res.prg_acceptance - res.uniform_acceptance);
    return res;
}

} // namespace stochcode
