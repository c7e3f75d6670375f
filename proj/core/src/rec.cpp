#include "stochcode/rec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "stochcode/entropy.hpp"
#include "stochcode/errors.hpp"
#include "stochcode/rng.hpp"

namespace stochcode {

namespace {

std::size_t outer_dimension(double eps, std::size_t n_data) {
    const double want = (1.0 - eps / 10.0) * static_cast<double>(n_data);
    auto k = static_cast<std::size_t>(std::ceil(want - 1e-9));
    return std::clamp<std::size_t>(k, 1, n_data);
}

RsCode make_outer(std::size_t a, std::size_t n_data, std::size_t k) {
    GFContext F(static_cast<int>(a));
    std::vector<GFElem> pts;
    pts.reserve(n_data);
    for (std::size_t i = 0; i < n_data; ++i) pts.emplace_back(static_cast<std::uint32_t>(i));
    return RsCode(F, std::move(pts), static_cast<int>(k) - 1);
}

void read_block(const BitWord& y, std::size_t offset, std::size_t len, std::uint64_t* out) {
    for (std::size_t j = 0; j * 64 < len; ++j) out[j] = y.get_bits(offset + j * 64, std::min<std::size_t>(64, len - j * 64));
}

void write_block(BitWord& y, std::size_t offset, std::size_t len, const std::uint64_t* in) {
    for (std::size_t j = 0; j * 64 < len; ++j) y.set_bits(offset + j * 64, std::min<std::size_t>(64, len - j * 64), in[j]);
}

} // namespace

RecCode::RecCode(RsCode outer, SmallLinearCode inner, double p, double inner_error, std::size_t mc_trials)
    : outer_(std::move(outer)), inner_(std::move(inner)), p_(p), inner_error_(inner_error), mc_trials_(mc_trials) {
    require(inner_.dimension() >= 1 && inner_.dimension() <= 14, "RecCode: inner dimension must be in [1, 14]");
    require(static_cast<int>(inner_.dimension()) == outer_.field.bits(), "RecCode: inner dimension != outer field bits");
    require(inner_.rank() == inner_.dimension(), "RecCode: inner generator not full rank");
    const std::size_t stride = inner_.stride();
    auto book = std::make_shared<std::vector<std::uint64_t>>((std::size_t{1} << a()) * stride);
    for (std::size_t m = 0; m < (std::size_t{1} << a()); ++m) inner_.encode_into(m, book->data() + m * stride);
    codebook_ = std::move(book);
}

std::uint32_t RecCode::inner_decode(const std::uint64_t* block) const {
    const std::size_t stride = inner_.stride();
    const std::uint64_t* w = codebook_->data();
    const std::size_t count = std::size_t{1} << a();
    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::uint32_t arg = 0;
    for (std::size_t m = 0; m < count; ++m, w += stride) {
        std::size_t d = 0;
        for (std::size_t j = 0; j < stride; ++j) d += static_cast<std::size_t>(std::popcount(w[j] ^ block[j]));
        if (d < best) {
            best = d;
            arg = static_cast<std::uint32_t>(m);
            if (d == 0) break;
        }
    }
    return arg;
}

void RecCode::write(ByteWriter& out) const {
    out.magic("REC1");
    out.u64(n_data());
    out.u64(outer_.k());
    out.f64(p_);
    out.f64(inner_error_);
    out.u64(mc_trials_);
    inner_.write(out);
}

RecCode RecCode::read(ByteReader& in) {
    in.expect_magic("REC1");
    const std::size_t n_data = in.u64();
    const std::size_t k = in.u64();
    const double p = in.f64();
    const double err = in.f64();
    const std::size_t trials = in.u64();
    SmallLinearCode inner = SmallLinearCode::read(in);
    try {
        require(k >= 1 && k <= n_data, "bad outer dimension");
        require(inner.dimension() >= 1 && inner.dimension() <= 14, "bad inner dimension");
        require(n_data <= (std::size_t{1} << inner.dimension()), "n_data exceeds field size");
        RsCode outer = make_outer(inner.dimension(), n_data, k);
        return RecCode(std::move(outer), std::move(inner), p, err, trials);
    } catch (const BadInput& e) {
        throw FormatError(std::string("RecCode: ") + e.what());
    }
}

InnerErrorEstimate rec_measure_inner_error(const RecCode& code, double p, std::size_t trials, Rng& rng,
                                           std::uint64_t stop_after) {
    const std::size_t b = code.b_data();
    const std::size_t stride = code.inner().stride();
    std::vector<std::uint64_t> y(stride);
    InnerErrorEstimate est;
    const auto count = std::uint64_t{1} << code.a();
    for (std::size_t t = 0; t < trials; ++t) {
        const auto sym = static_cast<std::uint32_t>(rng.below(count));
        const std::uint64_t* c = code.inner_codeword(sym);
        for (std::size_t j = 0; j < stride; ++j) y[j] = c[j];
        if (p > 0.0)
            for (std::size_t i = 0; i < b; ++i)
                if (rng.bernoulli(p)) y[i >> 6] ^= std::uint64_t{1} << (i & 63);
        if (code.inner_decode(y.data()) != sym) ++est.errors;
        ++est.trials;
        if (stop_after != 0 && est.errors >= stop_after) break;
    }
    return est;
}

namespace {

// Full-budget measurement with a sequential shortcut: a candidate whose error
// count after n trials is 5 sigma above the target rate is rejected early.
InnerErrorEstimate measure_against_target(const RecCode& code, double p, std::size_t trials, double target,
                                          Rng& rng) {
    const auto allowed = static_cast<std::uint64_t>(std::floor(target * static_cast<double>(trials)));
    InnerErrorEstimate total;
    const std::size_t chunk = 1000;
    while (total.trials < trials) {
        const auto part = rec_measure_inner_error(code, p, std::min(chunk, trials - total.trials), rng, 0);
        total.errors += part.errors;
        total.trials += part.trials;
        if (total.errors > allowed) break;
        const double mean = target * static_cast<double>(total.trials);
        if (static_cast<double>(total.errors) > mean + 5.0 * std::sqrt(mean) + 5.0) break;
    }
    return total;
}

} // namespace

RecCode rec_build(double p, double eps, std::size_t a, std::uint64_t seed, const RecOptions& options) {
    require(p >= 0.0 && p < 0.5, "rec_build: p must be in [0, 1/2)");
    const double gap = 1.0 - binary_entropy(p) - eps / 10.0;
    require(eps > 0.0 && eps < 1.0 - binary_entropy(p), "rec_build: eps must be in (0, 1 - H(p))");
    require(a >= 1 && a <= 14, "rec_build: a must be in [1, 14]");
    require(options.mc_trials >= 1 && options.candidate_budget >= 1, "rec_build: empty search budget");
    const auto b_min = static_cast<std::size_t>(std::ceil(static_cast<double>(a) / gap - 1e-9));
    const std::size_t field = std::size_t{1} << a;
    Rng rng(derive_seed(seed, 0, "rec-inner"));
    for (std::size_t b = std::max(b_min, a); b <= options.max_block; ++b) {
        std::size_t n_data = field;
        if (options.n_rec != 0) {
            if (options.n_rec % b != 0) continue;
            n_data = options.n_rec / b;
            if (n_data > field || n_data < 2) continue;
        }
        const std::size_t k = outer_dimension(eps, n_data);
        RsCode outer = make_outer(a, n_data, k);
        const double kappa = static_cast<double>((n_data - k) / 2) / static_cast<double>(n_data);
        const auto allowed = static_cast<std::uint64_t>(std::floor(kappa / 10.0 * static_cast<double>(options.mc_trials)));
        for (std::size_t cand = 0; cand < options.candidate_budget; ++cand) {
            SmallLinearCode inner = SmallLinearCode::random(a, b, rng);
            RecCode code(outer, std::move(inner), p, 0.0, options.mc_trials);
            const auto est = measure_against_target(code, p, options.mc_trials, kappa / 10.0, rng);
            if (est.trials < options.mc_trials || est.errors > allowed) continue;
            return RecCode(outer, code.inner(), p, est.rate(), options.mc_trials);
        }
    }
    throw SearchExhausted("rec_build: no inner code met the kappa/10 error target");
}

BitWord rec_encode(const RecCode& code, const BitWord& m) {
    require(m.size() == code.message_bits(), "rec_encode: message length mismatch");
    const std::size_t a = code.a(), b = code.b_data();
    std::vector<GFElem> coeffs(code.outer().k());
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = GFElem(static_cast<std::uint32_t>(m.get_bits(i * a, a)));
    const auto symbols = rs_encode(code.outer(), coeffs);
    BitWord out(code.n_rec());
    for (std::size_t i = 0; i < symbols.size(); ++i) write_block(out, i * b, b, code.inner_codeword(symbols[i].value));
    return out;
}

std::vector<GFElem> rec_inner_symbols(const RecCode& code, const BitWord& y) {
    require(y.size() == code.n_rec(), "rec_decode: received length mismatch");
    const std::size_t b = code.b_data();
    std::vector<std::uint64_t> block(code.inner().stride());
    std::vector<GFElem> out;
    out.reserve(code.n_data());
    for (std::size_t i = 0; i < code.n_data(); ++i) {
        read_block(y, i * b, b, block.data());
        out.emplace_back(code.inner_decode(block.data()));
    }
    return out;
}

std::optional<BitWord> rec_decode(const RecCode& code, const BitWord& y) {
    const auto symbols = rec_inner_symbols(code, y);
    const auto poly = rs_unique_decode(code.outer(), symbols);
    if (!poly) return std::nullopt;
    const std::size_t a = code.a();
    BitWord m(code.message_bits());
    for (std::size_t i = 0; i < poly->size() && i < code.outer().k(); ++i) m.set_bits(i * a, a, (*poly)[i].value);
    return m;
}

} // namespace stochcode
