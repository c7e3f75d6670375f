#include "stochcode/amd.hpp"

#include <algorithm>

#include "stochcode/errors.hpp"

namespace stochcode {

AmdParams::AmdParams(GFContext f, int degree) : field(std::move(f)), d(degree) {
    require(field.valid(), "AmdParams: field not initialized");
    require(d >= 1 && d % 2 == 1, "AmdParams: d must be odd and positive");
}

GFElem amd_tag(const AmdParams& p, std::span<const GFElem> x, GFElem r) {
    require(static_cast<int>(x.size()) == p.d, "amd_tag: x must have d elements");
    const GFContext& F = p.field;
    // Horner on r^(d+2) + x_d r^d + ... + x_1 r, coefficients high to low.
    GFElem acc = F.one();
    acc = F.mul(acc, r); // r^1 coefficient slot for degree d+1 is zero
    for (int i = p.d; i >= 1; --i) acc = F.add(F.mul(acc, r), x[static_cast<std::size_t>(i - 1)]);
    return F.mul(acc, r);
}

AmdTriple amd_encode(const AmdParams& p, std::span<const GFElem> x, GFElem r) {
    return AmdTriple{std::vector<GFElem>(x.begin(), x.end()), r, amd_tag(p, x, r)};
}

std::optional<std::vector<GFElem>> amd_verify(const AmdParams& p, const AmdTriple& t) {
    if (static_cast<int>(t.x.size()) != p.d) return std::nullopt;
    if (amd_tag(p, t.x, t.r) != t.tag) return std::nullopt;
    return t.x;
}

BitWord amd_pack(const AmdParams& p, const AmdTriple& t) {
    require(static_cast<int>(t.x.size()) == p.d, "amd_pack: x must have d elements");
    const std::size_t w = static_cast<std::size_t>(p.bits());
    BitWord out(p.encoded_bits());
    for (int i = 0; i < p.d; ++i) out.set_bits(static_cast<std::size_t>(i) * w, w, t.x[static_cast<std::size_t>(i)].value);
    out.set_bits(static_cast<std::size_t>(p.d) * w, w, t.r.value);
    out.set_bits(static_cast<std::size_t>(p.d + 1) * w, w, t.tag.value);
    return out;
}

AmdTriple amd_unpack(const AmdParams& p, const BitWord& bits) {
    require(bits.size() == p.encoded_bits(), "amd_unpack: wrong length");
    const std::size_t w = static_cast<std::size_t>(p.bits());
    AmdTriple t;
    for (int i = 0; i < p.d; ++i)
        t.x.emplace_back(static_cast<std::uint32_t>(bits.get_bits(static_cast<std::size_t>(i) * w, w)));
    t.r = GFElem(static_cast<std::uint32_t>(bits.get_bits(static_cast<std::size_t>(p.d) * w, w)));
    t.tag = GFElem(static_cast<std::uint32_t>(bits.get_bits(static_cast<std::size_t>(p.d + 1) * w, w)));
    return t;
}

std::vector<GFElem> amd_split(const AmdParams& p, const BitWord& m) {
    const std::size_t w = static_cast<std::size_t>(p.bits());
    require(m.size() <= w * static_cast<std::size_t>(p.d), "amd_split: message longer than d*w bits");
    std::vector<GFElem> x(static_cast<std::size_t>(p.d));
    for (std::size_t i = 0; i < x.size(); ++i) {
        const std::size_t off = i * w;
        if (off >= m.size()) break;
        x[i] = GFElem(static_cast<std::uint32_t>(m.get_bits(off, std::min(w, m.size() - off))));
    }
    return x;
}

BitWord amd_join(const AmdParams& p, std::span<const GFElem> x, std::size_t nbits) {
    const std::size_t w = static_cast<std::size_t>(p.bits());
    require(nbits <= w * x.size(), "amd_join: too many bits requested");
    BitWord m(nbits);
    for (std::size_t i = 0; i < x.size() && i * w < nbits; ++i)
        m.set_bits(i * w, std::min(w, nbits - i * w), x[i].value);
    return m;
}

AmdAuditResult amd_audit_exhaustive(const AmdParams& p) {
    const std::uint32_t q = p.field.size();
    const std::size_t d = static_cast<std::size_t>(p.d);
    std::uint64_t xs = 1;
    for (std::size_t i = 0; i < 2 * d + 2; ++i) xs *= q;
    require(xs * q <= (std::uint64_t{1} << 34), "amd_audit_exhaustive: instance too large");

    // f(x + dx, r + dr) - f(x, r) depends on (x, dx, dr) only; tabulate it per r
    // and count how often it equals each dtag.
    AmdAuditResult res;
    res.bound = p.soundness_bound();
    std::vector<GFElem> x(d), xd(d);
    std::vector<std::uint32_t> hits(q);
    std::uint32_t worst = 0;
    const std::uint64_t ndx = xs / q / q; // q^(2d)
    for (std::uint64_t code = 0; code < ndx * q; ++code) {
        std::uint64_t c = code;
        for (std::size_t i = 0; i < d; ++i) { x[i] = GFElem(c % q); c /= q; }
        std::vector<GFElem> dx(d);
        for (std::size_t i = 0; i < d; ++i) { dx[i] = GFElem(c % q); c /= q; }
        const GFElem dr(static_cast<std::uint32_t>(c));
        const bool dx_zero = std::all_of(dx.begin(), dx.end(), [](GFElem e) { return e.is_zero(); });
        for (std::size_t i = 0; i < d; ++i) xd[i] = p.field.add(x[i], dx[i]);
        std::fill(hits.begin(), hits.end(), 0);
        for (std::uint32_t r = 0; r < q; ++r) {
            const GFElem diff = p.field.add(amd_tag(p, xd, p.field.add(GFElem(r), dr)), amd_tag(p, x, GFElem(r)));
            ++hits[diff.value];
        }
        for (std::uint32_t dt = 0; dt < q; ++dt) {
            if (dx_zero && dr.is_zero() && dt == 0) continue;
            worst = std::max(worst, hits[dt]);
            res.cases += q;
        }
    }
    res.worst_acceptance = static_cast<double>(worst) / q;
    return res;
}

} // namespace stochcode
