#include "stochcode/codec_space.hpp"

#include <algorithm>
#include <cmath>

#include "stochcode/errors.hpp"
#include "stochcode/rng.hpp"

namespace stochcode {

namespace {

std::size_t field_bits(const SpaceLayout& L) { return static_cast<std::size_t>(L.rs_ctrl.field.bits()); }

RsCode make_ctrl_rs(int w, std::size_t ell, int d_max) {
    GFContext F(w);
    std::vector<GFElem> pts;
    for (std::size_t i = 0; i < ell; ++i) pts.emplace_back(static_cast<std::uint32_t>(i));
    return RsCode(F, std::move(pts), d_max);
}

std::optional<SpaceControl> control_from_poly(const SpaceLayout& L, const Poly& poly) {
    const std::size_t w = field_bits(L);
    BitWord bits(L.rs_ctrl.k() * w);
    for (std::size_t i = 0; i < poly.size() && i < L.rs_ctrl.k(); ++i) bits.set_bits(i * w, w, poly[i].value);
    for (std::size_t i = L.control_bits(); i < bits.size(); ++i)
        if (bits.get(i)) return std::nullopt;
    return space_control_from_bits(L, bits.slice(0, L.control_bits()));
}

} // namespace

std::size_t SpaceLayout::agreement_threshold(std::size_t pairs) const {
    return std::max(threshold, sudan_min_agreement(pairs, rs_ctrl.d_max));
}

void SpaceLayout::write(ByteWriter& out) const {
    out.magic("SPL1");
    out.u64(N);
    out.f64(p);
    out.f64(eps);
    out.u64(S);
    out.u64(b_ctrl);
    out.u64(ell);
    out.u64(seed_len);
    out.u64(perm_t);
    out.u64(threshold);
    out.u64(list_cap);
    out.u64(static_cast<std::uint64_t>(rs_ctrl.field.bits()));
    out.u64(static_cast<std::uint64_t>(rs_ctrl.d_max));
    out.u64(nisan.block_bits);
    lsc.write(out);
    rec.write(out);
}

SpaceLayout SpaceLayout::read(ByteReader& in) {
    in.expect_magic("SPL1");
    SpaceLayout L;
    L.N = in.u64();
    L.p = in.f64();
    L.eps = in.f64();
    L.S = in.u64();
    L.b_ctrl = in.u64();
    L.ell = in.u64();
    L.seed_len = in.u64();
    L.perm_t = in.u64();
    L.threshold = in.u64();
    L.list_cap = in.u64();
    const auto w = in.u64();
    const auto d = in.u64();
    const auto nb = in.u64();
    L.lsc = LscCode::read(in);
    L.rec = RecCode::read(in);
    try {
        require(L.b_ctrl >= 1 && L.N % L.b_ctrl == 0, "bad block size");
        require(w >= 1 && w <= 16 && L.ell <= (std::size_t{1} << w) && d < L.ell, "bad control code");
        L.n_blocks = L.N / L.b_ctrl;
        require(L.ell <= L.n_blocks, "ell exceeds block count");
        L.n_payload = L.n_blocks - L.ell;
        L.rs_ctrl = make_ctrl_rs(static_cast<int>(w), L.ell, static_cast<int>(d));
        L.nisan = NisanParams(nb, L.rec.n_rec());
        validate_layout(L);
    } catch (const BadInput& e) {
        throw FormatError(std::string("SpaceLayout: ") + e.what());
    }
    return L;
}

void validate_layout(const SpaceLayout& L) {
    require(L.b_ctrl >= 1 && L.N == L.n_blocks * L.b_ctrl, "space layout: N != n_blocks * b_ctrl");
    require(L.n_blocks == L.ell + L.n_payload, "space layout: n_blocks != ell + n'");
    require(L.rec.n_rec() == L.n_payload * L.b_ctrl, "space layout: REC length != n' * b_ctrl");
    require(L.p >= 0.0 && L.eps > 0.0 && L.p + L.eps < 0.5, "space layout: need 0 <= p, eps > 0, p + eps < 1/2");
    require(L.lsc.length() == L.b_ctrl, "space layout: b_ctrl != LSC length");
    require(L.lsc.k() == 2 * field_bits(L), "space layout: LSC message != (alpha, a)");
    require(L.lsc.radius() <= static_cast<std::size_t>(std::floor((L.p + L.eps) * L.b_ctrl + 1e-9)),
            "space layout: LSC radius exceeds (p + eps) b_ctrl");
    require(L.rs_ctrl.n() == L.ell && L.ell <= L.rs_ctrl.field.size(), "space layout: control RS length != ell");
    require(L.seed_len >= 1 && L.control_bits() <= L.rs_ctrl.k() * field_bits(L),
            "space layout: seeds do not fit the control polynomial");
    require(L.nisan.output_len == L.rec.n_rec(), "space layout: Nisan output != payload length");
    require(L.list_cap >= 1, "space layout: list cap must be positive");
    require(L.S >= 1, "space layout: S must be positive");
}

SpaceLayout space_layout(const SpaceParams& P) {
    require(P.b_ctrl >= 1 && P.N % P.b_ctrl == 0, "space_layout: b_ctrl must divide N");
    require(P.ell < P.N / P.b_ctrl, "space_layout: ell must be below the block count");
    require(P.ctrl_field_bits >= 1 && P.ctrl_field_bits <= 16, "space_layout: control field bits in [1, 16]");
    require(P.ell <= (std::size_t{1} << P.ctrl_field_bits), "space_layout: ell exceeds control field size");
    require(P.ctrl_d_max >= 0 && static_cast<std::size_t>(P.ctrl_d_max) < P.ell, "space_layout: d_max >= ell");
    SpaceLayout L;
    L.N = P.N;
    L.p = P.p;
    L.eps = P.eps;
    L.S = P.S;
    L.b_ctrl = P.b_ctrl;
    L.n_blocks = P.N / P.b_ctrl;
    L.ell = P.ell;
    L.n_payload = L.n_blocks - P.ell;
    L.seed_len = P.seed_len;
    L.perm_t = P.perm_t;
    L.threshold = P.threshold;
    L.list_cap = P.list_cap;
    L.rs_ctrl = make_ctrl_rs(P.ctrl_field_bits, P.ell, P.ctrl_d_max);
    LscParams lp = P.lsc;
    lp.u = P.b_ctrl;
    lp.k = 2 * static_cast<std::size_t>(P.ctrl_field_bits);
    L.lsc = build_lsc(lp).code;
    RecOptions ro = P.rec_options;
    ro.n_rec = L.n_payload * P.b_ctrl;
    L.rec = rec_build(P.p, P.rec_eps, P.rec_a, derive_seed(P.seed, 0, "rec"), ro);
    L.nisan = NisanParams(P.nisan_block_bits, L.rec.n_rec());
    validate_layout(L);
    return L;
}

SpaceControl draw_space_control(const SpaceLayout& L, Rng& rng) {
    return {BitWord::random(L.seed_len, rng), BitWord::random(L.seed_len, rng), BitWord::random(L.seed_len, rng)};
}

BitWord control_bits(const SpaceControl& omega) { return concat({omega.s_pi, omega.s_T, omega.s_gamma}); }

SpaceControl space_control_from_bits(const SpaceLayout& L, const BitWord& bits) {
    require(bits.size() == L.control_bits(), "space_control_from_bits: length mismatch");
    return {bits.slice(0, L.seed_len), bits.slice(L.seed_len, L.seed_len), bits.slice(2 * L.seed_len, L.seed_len)};
}

std::vector<GFElem> control_symbols(const SpaceLayout& L, const SpaceControl& omega) {
    const BitWord bits = control_bits(omega);
    require(bits.size() == L.control_bits(), "control_symbols: seed length mismatch");
    const std::size_t w = field_bits(L);
    std::vector<GFElem> coeffs(L.rs_ctrl.k());
    for (std::size_t i = 0; i < coeffs.size() && i * w < bits.size(); ++i)
        coeffs[i] = GFElem(static_cast<std::uint32_t>(bits.get_bits(i * w, std::min(w, bits.size() - i * w))));
    return rs_encode(L.rs_ctrl, coeffs);
}

SpaceExpansion expand_control(const SpaceLayout& L, const SpaceControl& omega) {
    SpaceExpansion ex;
    ex.perm = knr_perm(expand_seed(omega.s_pi, kPermSeedBits, "perm"), L.perm_t, L.rec.n_rec());
    ex.gamma = nisan(L.nisan, expand_seed(omega.s_gamma, L.nisan.seed_len(), "nisan"));
    ex.control_positions =
        sampler(expand_seed(omega.s_T, sampler_seed_len(L.ell, L.n_blocks), "sampler"), L.ell, L.n_blocks);
    std::sort(ex.control_positions.begin(), ex.control_positions.end());
    std::vector<bool> used(L.n_blocks, false);
    for (const auto i : ex.control_positions) used[i] = true;
    for (std::uint32_t i = 0; i < L.n_blocks; ++i)
        if (!used[i]) ex.payload_positions.push_back(i);
    return ex;
}

SpaceEncoding space_encode(const SpaceLayout& L, const BitWord& m, Rng& rng) {
    require(m.size() == L.message_bits(), "space_encode: message length mismatch");
    const SpaceControl omega = draw_space_control(L, rng);
    std::vector<std::uint64_t> r(L.ell);
    for (auto& v : r) v = rng.below(std::uint64_t{1} << L.lsc.s());
    return space_encode_with(L, m, omega, r);
}

SpaceEncoding space_encode_with(const SpaceLayout& L, const BitWord& m, const SpaceControl& omega,
                                const std::vector<std::uint64_t>& lsc_randomness) {
    require(m.size() == L.message_bits(), "space_encode: message length mismatch");
    require(lsc_randomness.size() == L.ell, "space_encode: need one LSC seed per control block");
    const std::size_t w = field_bits(L);
    const auto symbols = control_symbols(L, omega);
    const auto ex = expand_control(L, omega);
    BitWord out(L.N);
    for (std::size_t j = 0; j < L.ell; ++j) {
        const std::uint64_t pair = L.rs_ctrl.points[j].value | (std::uint64_t{symbols[j].value} << w);
        out.assign(ex.control_positions[j] * L.b_ctrl, L.lsc.encode(pair, lsc_randomness[j]));
    }
    const BitWord q = unpermute(ex.perm, rec_encode(L.rec, m)) ^ ex.gamma;
    for (std::size_t j = 0; j < L.n_payload; ++j) out.assign(ex.payload_positions[j] * L.b_ctrl, q.slice(j * L.b_ctrl, L.b_ctrl));
    return {std::move(out), omega, lsc_randomness};
}

BitWord space_payload(const SpaceLayout& L, const BitWord& x, const SpaceExpansion& ex) {
    require(x.size() == L.N, "space_payload: length != N");
    BitWord q(L.rec.n_rec());
    for (std::size_t j = 0; j < L.n_payload; ++j) q.assign(j * L.b_ctrl, x.slice(ex.payload_positions[j] * L.b_ctrl, L.b_ctrl));
    return permute(ex.perm, q ^ ex.gamma);
}

SpaceDecodeReport space_list_decode_report(const SpaceLayout& L, const BitWord& x) {
    require(x.size() == L.N, "space_list_decode: received length != N");
    const std::size_t w = field_bits(L);
    const std::uint64_t mask = (std::uint64_t{1} << w) - 1;
    SpaceDecodeReport rep;
    rep.blocks.resize(L.n_blocks);
    std::vector<std::uint64_t> seen;
    std::vector<RsPair> pairs;
    for (std::size_t i = 0; i < L.n_blocks; ++i) {
        rep.blocks[i] = lsc_list_decode(L.lsc, x.slice(i * L.b_ctrl, L.b_ctrl));
        for (const auto& c : rep.blocks[i]) {
            const std::uint64_t alpha = c.m & mask, a = (c.m >> w) & mask;
            if (alpha >= L.ell) continue;
            seen.push_back(alpha | (a << w));
        }
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (const auto v : seen)
        pairs.push_back({GFElem(static_cast<std::uint32_t>(v & mask)), GFElem(static_cast<std::uint32_t>(v >> w))});
    rep.pairs = pairs.size();
    rep.threshold = L.agreement_threshold(pairs.size());
    if (pairs.size() < rep.threshold) return rep;
    for (const auto& poly : rs_list_decode(L.rs_ctrl.field, pairs, L.rs_ctrl.d_max, rep.threshold)) {
        const auto omega = control_from_poly(L, poly);
        if (!omega) continue;
        rep.controls.push_back(*omega);
        auto msg = rec_decode(L.rec, space_payload(L, x, expand_control(L, *omega)));
        if (msg) rep.messages.push_back(std::move(*msg));
    }
    std::sort(rep.messages.begin(), rep.messages.end(),
              [](const BitWord& a, const BitWord& b) { return a.words() < b.words(); });
    rep.messages.erase(std::unique(rep.messages.begin(), rep.messages.end()), rep.messages.end());
    if (rep.messages.size() > L.list_cap) {
        rep.messages.resize(L.list_cap);
        rep.truncated = true;
    }
    return rep;
}

std::vector<BitWord> space_list_decode(const SpaceLayout& L, const BitWord& x) {
    return space_list_decode_report(L, x).messages;
}

SpaceCounters space_counters(const SpaceLayout& L, const SpaceEncoding& sent, const BitWord& m, const BitWord& x,
                             const SpaceDecodeReport& report) {
    require(x.size() == L.N && sent.codeword.size() == L.N, "space_counters: length mismatch");
    require(report.blocks.size() == L.n_blocks, "space_counters: report does not match layout");
    const BitWord e = x ^ sent.codeword;
    const auto ex = expand_control(L, sent.omega);
    const auto symbols = control_symbols(L, sent.omega);
    const std::size_t w = field_bits(L);
    SpaceCounters c;
    for (std::size_t j = 0; j < L.ell; ++j) {
        const std::size_t pos = ex.control_positions[j];
        if (e.slice(pos * L.b_ctrl, L.b_ctrl).weight() <= L.lsc.radius()) ++c.good_control;
        const std::uint64_t pair = L.rs_ctrl.points[j].value | (std::uint64_t{symbols[j].value} << w);
        const auto& list = report.blocks[pos];
        if (std::any_of(list.begin(), list.end(), [&](const LscCandidate& k) { return k.m == pair; })) ++c.correct_in_list;
    }
    for (const auto& list : report.blocks) c.max_block_list = std::max(c.max_block_list, list.size());
    c.control_candidates = report.controls.size();
    c.control_list_bound = sudan_weighted_degree(report.pairs, L.rs_ctrl.d_max) / static_cast<std::size_t>(std::max(L.rs_ctrl.d_max, 1));
    const double el = L.eps * static_cast<double>(L.ell);
    c.good_sampler = static_cast<double>(c.good_control) >= el / 2;
    c.lists_ok = static_cast<double>(c.correct_in_list) >= el / 2;
    c.control_in_list = std::find(report.controls.begin(), report.controls.end(), sent.omega) != report.controls.end();
    c.payload_ok = rec_decode(L.rec, space_payload(L, x, ex)) == m;
    c.in_list = std::find(report.messages.begin(), report.messages.end(), m) != report.messages.end();
    c.output_size = report.messages.size();
    return c;
}

} // namespace stochcode
