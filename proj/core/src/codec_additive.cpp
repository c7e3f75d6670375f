#include "stochcode/codec_additive.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "stochcode/entropy.hpp"
#include "stochcode/errors.hpp"
#include "stochcode/rng.hpp"

namespace stochcode {

namespace {

std::size_t field_bits(const CodeLayout& L) { return static_cast<std::size_t>(L.rs_ctrl.field.bits()); }

RsCode make_ctrl_rs(int w, std::size_t ell, int d_max) {
    GFContext F(w);
    std::vector<GFElem> pts;
    for (std::size_t i = 0; i < ell; ++i) pts.emplace_back(static_cast<std::uint32_t>(i));
    return RsCode(F, std::move(pts), d_max);
}

BitWord gather_blocks(const BitWord& x, const std::vector<std::uint32_t>& positions, std::size_t b) {
    BitWord out(positions.size() * b);
    for (std::size_t j = 0; j < positions.size(); ++j) out.assign(j * b, x.slice(positions[j] * b, b));
    return out;
}

struct ControlDecode {
    std::optional<ControlInfo> control;
    std::optional<BitWord> message;
    std::size_t pairs = 0;
};

// RS-decodes the control pairs (first occurrence of each point wins), then the payload.
ControlDecode decode_from_blocks(const CodeLayout& L, const BitWord& x, const std::vector<std::int64_t>& blocks,
                                 const std::optional<std::uint64_t>& only_r) {
    const std::size_t w = field_bits(L);
    const std::uint64_t mask = (std::uint64_t{1} << w) - 1;
    std::vector<bool> seen(L.ell, false);
    std::vector<RsPair> pairs;
    for (const auto v : blocks) {
        if (v < 0) continue;
        const auto id = static_cast<std::uint64_t>(v);
        if (only_r && (id >> L.sc.b()) != *only_r) continue;
        const std::uint64_t alpha = id & mask, a = (id >> w) & mask;
        if (alpha >= L.ell || seen[alpha]) continue;
        seen[alpha] = true;
        pairs.push_back({GFElem(static_cast<std::uint32_t>(alpha)), GFElem(static_cast<std::uint32_t>(a))});
    }
    ControlDecode out;
    out.pairs = pairs.size();
    const auto poly = rs_unique_decode(L.rs_ctrl.field, pairs, L.rs_ctrl.d_max);
    if (!poly) return out;
    BitWord bits(L.rs_ctrl.k() * w);
    for (std::size_t i = 0; i < poly->size() && i < L.rs_ctrl.k(); ++i) bits.set_bits(i * w, w, (*poly)[i].value);
    for (std::size_t i = L.control_bits(); i < bits.size(); ++i)
        if (bits.get(i)) return out;
    out.control = control_from_bits(L, bits.slice(0, L.control_bits()));
    const auto ex = expand_control(L, *out.control);
    const BitWord q = gather_blocks(x, ex.payload_positions, L.b_ctrl) ^ ex.delta;
    out.message = rec_decode(L.rec, permute(ex.perm, q));
    return out;
}

std::vector<std::int64_t> scan_blocks(const CodeLayout& L, const BitWord& x) {
    require(x.size() == L.N, "decode: received length != N");
    std::vector<std::int64_t> blocks(L.n_blocks, -1);
    for (std::size_t i = 0; i < L.n_blocks; ++i) {
        const auto id = L.sc.decode_index(x.slice(i * L.b_ctrl, L.b_ctrl));
        if (id) blocks[i] = static_cast<std::int64_t>(*id);
    }
    return blocks;
}

} // namespace

double CodeLayout::eps_effective() const { return 1.0 - binary_entropy(p) - rate(); }

void CodeLayout::write(ByteWriter& out) const {
    out.magic("ADL1");
    out.u64(N);
    out.f64(p);
    out.f64(eps);
    out.u64(b_ctrl);
    out.u64(ell);
    out.u64(seed_len);
    out.u64(perm_t);
    out.u64(offset_t);
    out.u64(static_cast<std::uint64_t>(rs_ctrl.field.bits()));
    out.u64(static_cast<std::uint64_t>(rs_ctrl.d_max));
    sc.write(out);
    rec.write(out);
}

CodeLayout CodeLayout::read(ByteReader& in) {
    in.expect_magic("ADL1");
    CodeLayout L;
    L.N = in.u64();
    L.p = in.f64();
    L.eps = in.f64();
    L.b_ctrl = in.u64();
    L.ell = in.u64();
    L.seed_len = in.u64();
    L.perm_t = in.u64();
    L.offset_t = in.u64();
    const auto w = in.u64();
    const auto d = in.u64();
    try {
        require(L.b_ctrl >= 1 && L.N % L.b_ctrl == 0, "bad block size");
        require(w >= 1 && w <= 16 && L.ell <= (std::size_t{1} << w) && d < L.ell, "bad control code");
        L.n_blocks = L.N / L.b_ctrl;
        require(L.ell <= L.n_blocks, "ell exceeds block count");
        L.n_payload = L.n_blocks - L.ell;
        L.rs_ctrl = make_ctrl_rs(static_cast<int>(w), L.ell, static_cast<int>(d));
    } catch (const BadInput& e) {
        throw FormatError(std::string("CodeLayout: ") + e.what());
    }
    L.sc = ScCode::read(in);
    L.rec = RecCode::read(in);
    try {
        validate_layout(L);
    } catch (const BadInput& e) {
        throw FormatError(std::string("CodeLayout: ") + e.what());
    }
    return L;
}

void validate_layout(const CodeLayout& L) {
    require(L.b_ctrl >= 1 && L.N == L.n_blocks * L.b_ctrl, "layout: N != n_blocks * b_ctrl");
    require(L.n_blocks == L.ell + L.n_payload, "layout: n_blocks != ell + n'");
    require(L.rec.n_rec() == L.n_payload * L.b_ctrl, "layout: REC length != n' * b_ctrl");
    require(L.p >= 0.0 && L.eps > 0.0 && L.p + L.eps < 0.5, "layout: need 0 <= p, eps > 0, p + eps < 1/2");
    require(L.rs_ctrl.n() == L.ell, "layout: control RS length != ell");
    require(L.ell <= L.rs_ctrl.field.size(), "layout: ell exceeds control field size");
    require(L.sc.length() == L.b_ctrl, "layout: SC length != b_ctrl");
    require(L.sc.b() == 2 * field_bits(L), "layout: SC message != (alpha, a)");
    require(L.sc.radius() <= static_cast<std::size_t>(std::floor((L.p + L.eps) * L.b_ctrl + 1e-9)),
            "layout: SC radius exceeds (p + eps) b_ctrl");
    require(L.seed_len >= 1 && L.control_bits() <= L.rs_ctrl.k() * field_bits(L),
            "layout: seeds do not fit the control polynomial");
    const double good = std::floor(static_cast<double>(L.ell) * L.eps / (L.p + L.eps) + 1e-9);
    require(static_cast<double>(L.rs_ctrl.d_max + 1) <= good, "layout: d_max + 1 > floor(ell eps / (p + eps))");
    require(L.offset_t >= 1 && L.perm_t >= 1, "layout: independence parameters must be positive");
    require(twise_field_bits(L.rec.n_rec()) <= 16, "layout: payload too long for the offset generator");
}

CodeLayout additive_layout(const AdditiveParams& P) {
    require(P.b_ctrl >= 1 && P.N % P.b_ctrl == 0, "additive_layout: b_ctrl must divide N");
    require(P.ell < P.N / P.b_ctrl, "additive_layout: ell must be below the block count");
    require(P.ctrl_field_bits >= 1 && P.ctrl_field_bits <= 16, "additive_layout: control field bits in [1, 16]");
    require(P.ell <= (std::size_t{1} << P.ctrl_field_bits), "additive_layout: ell exceeds control field size");
    require(P.ctrl_d_max >= 0 && static_cast<std::size_t>(P.ctrl_d_max) < P.ell, "additive_layout: d_max >= ell");
    CodeLayout L;
    L.N = P.N;
    L.p = P.p;
    L.eps = P.eps;
    L.b_ctrl = P.b_ctrl;
    L.n_blocks = P.N / P.b_ctrl;
    L.ell = P.ell;
    L.n_payload = L.n_blocks - P.ell;
    L.seed_len = P.seed_len;
    L.perm_t = P.perm_t;
    L.offset_t = P.offset_t;
    L.rs_ctrl = make_ctrl_rs(P.ctrl_field_bits, P.ell, P.ctrl_d_max);
    ScParams sp = P.sc;
    sp.u = P.b_ctrl;
    sp.b = 2 * static_cast<std::size_t>(P.ctrl_field_bits);
    L.sc = build_sc(sp).code;
    RecOptions ro = P.rec_options;
    ro.n_rec = L.n_payload * P.b_ctrl;
    L.rec = rec_build(P.p, P.rec_eps, P.rec_a, derive_seed(P.seed, 0, "rec"), ro);
    validate_layout(L);
    return L;
}

ControlInfo draw_control(const CodeLayout& L, Rng& rng) {
    return {BitWord::random(L.seed_len, rng), BitWord::random(L.seed_len, rng), BitWord::random(L.seed_len, rng)};
}

BitWord control_bits(const ControlInfo& omega) { return concat({omega.s_pi, omega.s_delta, omega.s_T}); }

ControlInfo control_from_bits(const CodeLayout& L, const BitWord& bits) {
    require(bits.size() == L.control_bits(), "control_from_bits: length mismatch");
    return {bits.slice(0, L.seed_len), bits.slice(L.seed_len, L.seed_len), bits.slice(2 * L.seed_len, L.seed_len)};
}

std::vector<GFElem> control_symbols(const CodeLayout& L, const ControlInfo& omega) {
    const BitWord bits = control_bits(omega);
    require(bits.size() == L.control_bits(), "control_symbols: seed length mismatch");
    const std::size_t w = field_bits(L);
    std::vector<GFElem> coeffs(L.rs_ctrl.k());
    for (std::size_t i = 0; i < coeffs.size() && i * w < bits.size(); ++i)
        coeffs[i] = GFElem(static_cast<std::uint32_t>(bits.get_bits(i * w, std::min(w, bits.size() - i * w))));
    return rs_encode(L.rs_ctrl, coeffs);
}

ControlExpansion expand_control(const CodeLayout& L, const ControlInfo& omega) {
    ControlExpansion ex;
    const std::size_t n_rec = L.rec.n_rec();
    ex.perm = knr_perm(expand_seed(omega.s_pi, kPermSeedBits, "perm"), L.perm_t, n_rec);
    ex.delta = twise_bits(expand_seed(omega.s_delta, twise_seed_len(L.offset_t, n_rec), "offset"), L.offset_t, n_rec);
    ex.control_positions =
        sampler(expand_seed(omega.s_T, sampler_seed_len(L.ell, L.n_blocks), "sampler"), L.ell, L.n_blocks);
    std::sort(ex.control_positions.begin(), ex.control_positions.end());
    std::vector<bool> used(L.n_blocks, false);
    for (const auto i : ex.control_positions) used[i] = true;
    for (std::uint32_t i = 0; i < L.n_blocks; ++i)
        if (!used[i]) ex.payload_positions.push_back(i);
    return ex;
}

AdditiveEncoding additive_encode(const CodeLayout& L, const BitWord& m, Rng& rng) {
    require(m.size() == L.message_bits(), "additive_encode: message length mismatch");
    const ControlInfo omega = draw_control(L, rng);
    std::vector<std::uint64_t> r(L.ell);
    for (auto& v : r) v = rng.below(std::uint64_t{1} << L.sc.b_rnd());
    return additive_encode_with(L, m, omega, r);
}

AdditiveEncoding additive_encode_with(const CodeLayout& L, const BitWord& m, const ControlInfo& omega,
                                      const std::vector<std::uint64_t>& sc_randomness) {
    require(m.size() == L.message_bits(), "additive_encode: message length mismatch");
    require(sc_randomness.size() == L.ell, "additive_encode: need one SC randomness value per control block");
    const std::size_t w = field_bits(L);
    const auto symbols = control_symbols(L, omega);
    const auto ex = expand_control(L, omega);
    BitWord out(L.N);
    for (std::size_t j = 0; j < L.ell; ++j) {
        const std::uint64_t pair = L.rs_ctrl.points[j].value | (std::uint64_t{symbols[j].value} << w);
        out.assign(ex.control_positions[j] * L.b_ctrl,
                   sc_encode(L.sc, BitWord::from_uint(pair, L.sc.b()), BitWord::from_uint(sc_randomness[j], L.sc.b_rnd())));
    }
    const BitWord q = unpermute(ex.perm, rec_encode(L.rec, m)) ^ ex.delta;
    for (std::size_t j = 0; j < L.n_payload; ++j) out.assign(ex.payload_positions[j] * L.b_ctrl, q.slice(j * L.b_ctrl, L.b_ctrl));
    return {std::move(out), omega, sc_randomness};
}

AdditiveDecodeReport additive_decode_report(const CodeLayout& L, const BitWord& x) {
    AdditiveDecodeReport rep;
    rep.blocks = scan_blocks(L, x);
    auto d = decode_from_blocks(L, x, rep.blocks, std::nullopt);
    rep.control = std::move(d.control);
    rep.message = std::move(d.message);
    rep.pairs = d.pairs;
    return rep;
}

std::optional<BitWord> additive_decode(const CodeLayout& L, const BitWord& x) { return additive_decode_report(L, x).message; }

DecodeCounters additive_counters(const CodeLayout& L, const AdditiveEncoding& sent, const BitWord& m, const BitWord& x,
                                const AdditiveDecodeReport& report) {
    require(x.size() == L.N && sent.codeword.size() == L.N, "additive_counters: length mismatch");
    require(report.blocks.size() == L.n_blocks, "additive_counters: report does not match layout");
    const BitWord e = x ^ sent.codeword;
    const auto ex = expand_control(L, sent.omega);
    const auto symbols = control_symbols(L, sent.omega);
    const std::size_t w = field_bits(L);
    const std::uint64_t pair_mask = (std::uint64_t{1} << L.sc.b()) - 1;
    const auto good_radius = static_cast<std::size_t>(std::floor((L.p + L.eps) * L.b_ctrl + 1e-9));
    DecodeCounters c;
    for (std::size_t j = 0; j < L.ell; ++j) {
        const std::size_t pos = ex.control_positions[j];
        if (e.slice(pos * L.b_ctrl, L.b_ctrl).weight() <= good_radius) ++c.good_control;
        const auto v = report.blocks[pos];
        if (v < 0) continue;
        const std::uint64_t pair = L.rs_ctrl.points[j].value | (std::uint64_t{symbols[j].value} << w);
        if ((static_cast<std::uint64_t>(v) & pair_mask) == pair)
            ++c.correct_control;
        else
            ++c.wrong_control;
    }
    for (const auto pos : ex.payload_positions)
        if (report.blocks[pos] >= 0) ++c.payload_accepted;
    const double el = L.eps * static_cast<double>(L.ell);
    c.rs_margin = static_cast<long>(c.correct_control) - 2 * static_cast<long>(c.wrong_control + c.payload_accepted) -
                  (L.rs_ctrl.d_max + 1);
    c.good_sampler = static_cast<double>(c.good_control) >= el / 2;
    c.control_ok = static_cast<double>(c.correct_control) >= el / 4 && static_cast<double>(c.wrong_control) < el / 24;
    c.payload_ok = static_cast<double>(c.payload_accepted) < el / 24;
    c.control_recovered = report.control && *report.control == sent.omega;
    c.decoded_ok = report.message && *report.message == m;
    return c;
}

std::size_t avg_message_bits(const CodeLayout& L) { return L.message_bits() + L.control_bits() + L.sc.b_rnd(); }

BitWord avg_encode(const CodeLayout& L, const BitWord& full) {
    require(full.size() == avg_message_bits(L), "avg_encode: message length mismatch");
    const std::size_t mb = L.message_bits();
    const ControlInfo omega = control_from_bits(L, full.slice(mb, L.control_bits()));
    const std::uint64_t r = full.get_bits(mb + L.control_bits(), L.sc.b_rnd());
    return additive_encode_with(L, full.slice(0, mb), omega, std::vector<std::uint64_t>(L.ell, r)).codeword;
}

AvgDecodeReport avg_decode_report(const CodeLayout& L, const BitWord& x) {
    const auto blocks = scan_blocks(L, x);
    std::map<std::uint64_t, std::size_t> votes;
    for (const auto v : blocks)
        if (v >= 0) ++votes[static_cast<std::uint64_t>(v) >> L.sc.b()];
    AvgDecodeReport rep;
    std::uint64_t winner = 0;
    for (const auto& [r, n] : votes) {
        if (n > rep.winner_votes) {
            rep.runner_up_votes = rep.winner_votes;
            rep.winner_votes = n;
            winner = r;
        } else if (n > rep.runner_up_votes) {
            rep.runner_up_votes = n;
        }
    }
    if (rep.winner_votes == 0 || rep.winner_votes == rep.runner_up_votes) return rep;
    rep.r = winner;
    const auto d = decode_from_blocks(L, x, blocks, winner);
    if (!d.message) return rep;
    BitWord full = *d.message;
    full.append(control_bits(*d.control));
    full.append(BitWord::from_uint(winner, L.sc.b_rnd()));
    rep.message = std::move(full);
    return rep;
}

std::optional<BitWord> avg_decode(const CodeLayout& L, const BitWord& x) { return avg_decode_report(L, x).message; }

} // namespace stochcode
