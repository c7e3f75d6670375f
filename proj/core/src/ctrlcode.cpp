#include "stochcode/ctrlcode.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "near_index.hpp"
#include "stochcode/entropy.hpp"
#include "stochcode/errors.hpp"
#include "stochcode/rng.hpp"

namespace stochcode {

namespace {

constexpr std::size_t kMaxIndexedBits = 26;

// Calls f(message, codeword words) for all 2^k messages in Gray-code order.
template <typename F>
void for_each_codeword(const SmallLinearCode& code, F&& f) {
    const std::size_t k = code.dimension();
    require(k <= 32, "codeword enumeration limited to k <= 32");
    const std::size_t stride = code.stride();
    std::vector<std::uint64_t> cur(stride, 0);
    f(std::uint64_t{0}, cur.data());
    const std::uint64_t total = std::uint64_t{1} << k;
    for (std::uint64_t i = 1; i < total; ++i) {
        const auto& row = code.rows()[static_cast<std::size_t>(std::countr_zero(i))].words();
        for (std::size_t j = 0; j < stride; ++j) cur[j] ^= row[j];
        f(i ^ (i >> 1), cur.data());
    }
}

std::size_t distance_words(const std::uint64_t* a, const std::uint64_t* b, std::size_t stride) {
    std::size_t d = 0;
    for (std::size_t j = 0; j < stride; ++j) d += static_cast<std::size_t>(std::popcount(a[j] ^ b[j]));
    return d;
}

// All u-bit masks (u <= 64) of weight <= r.
std::vector<std::uint64_t> ball_masks(std::size_t u, std::size_t r) {
    std::vector<std::uint64_t> out{0};
    std::vector<std::size_t> pos;
    for (std::size_t w = 1; w <= r && w <= u; ++w) {
        pos.resize(w);
        for (std::size_t i = 0; i < w; ++i) pos[i] = i;
        while (true) {
            std::uint64_t m = 0;
            for (std::size_t p : pos) m |= std::uint64_t{1} << p;
            out.push_back(m);
            std::size_t i = w;
            while (i > 0 && pos[i - 1] == u - w + i - 1) --i;
            if (i == 0) break;
            ++pos[i - 1];
            for (std::size_t j = i; j < w; ++j) pos[j] = pos[j - 1] + 1;
        }
    }
    return out;
}

BitWord random_error(std::size_t u, std::size_t weight, Rng& rng) {
    std::vector<std::size_t> idx(u);
    for (std::size_t i = 0; i < u; ++i) idx[i] = i;
    BitWord e(u);
    for (std::size_t i = 0; i < weight && i < u; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(u - i));
        std::swap(idx[i], idx[j]);
        e.set(idx[i], true);
    }
    return e;
}

} // namespace

// SmallLinearCode

SmallLinearCode::SmallLinearCode(std::size_t length, std::vector<BitWord> rows) : u_(length), rows_(std::move(rows)) {
    require(u_ >= 1, "SmallLinearCode: empty length");
    for (const auto& r : rows_) require(r.size() == u_, "SmallLinearCode: row length mismatch");
    flat_.reserve(rows_.size() * stride());
    for (const auto& r : rows_) flat_.insert(flat_.end(), r.words().begin(), r.words().end());
}

SmallLinearCode SmallLinearCode::random(std::size_t k, std::size_t u, Rng& rng) {
    require(k <= u, "SmallLinearCode::random: k > u");
    for (;;) {
        std::vector<BitWord> rows;
        rows.reserve(k);
        for (std::size_t i = 0; i < k; ++i) rows.push_back(BitWord::random(u, rng));
        SmallLinearCode c(u, std::move(rows));
        if (c.rank() == k) return c;
    }
}

BitWord SmallLinearCode::encode(const BitWord& m) const {
    require(m.size() == dimension(), "SmallLinearCode::encode: message length mismatch");
    BitWord out(u_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (m.get(i)) out ^= rows_[i];
    return out;
}

void SmallLinearCode::encode_into(std::uint64_t m, std::uint64_t* out) const {
    const std::size_t s = stride();
    std::fill(out, out + s, 0);
    while (m != 0) {
        const auto i = static_cast<std::size_t>(std::countr_zero(m));
        m &= m - 1;
        const std::uint64_t* row = flat_.data() + i * s;
        for (std::size_t j = 0; j < s; ++j) out[j] ^= row[j];
    }
}

std::size_t SmallLinearCode::rank() const {
    std::vector<BitWord> m = rows_;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < u_ && rank < m.size(); ++col) {
        std::size_t piv = rank;
        while (piv < m.size() && !m[piv].get(col)) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t r = 0; r < m.size(); ++r)
            if (r != rank && m[r].get(col)) m[r] ^= m[rank];
        ++rank;
    }
    return rank;
}

std::size_t SmallLinearCode::min_distance() const {
    std::size_t best = u_ + 1;
    bool first = true;
    const std::size_t s = stride();
    for_each_codeword(*this, [&](std::uint64_t msg, const std::uint64_t* w) {
        if (first) {
            first = false;
            return;
        }
        (void)msg;
        std::size_t wt = 0;
        for (std::size_t j = 0; j < s; ++j) wt += static_cast<std::size_t>(std::popcount(w[j]));
        best = std::min(best, wt);
    });
    return best;
}

std::vector<std::uint64_t> SmallLinearCode::list_decode(const BitWord& y, std::size_t radius) const {
    require(y.size() == u_, "list_decode: length mismatch");
    std::vector<std::uint64_t> out;
    const std::size_t s = stride();
    for_each_codeword(*this, [&](std::uint64_t msg, const std::uint64_t* w) {
        if (distance_words(w, y.words().data(), s) <= radius) out.push_back(msg);
    });
    std::sort(out.begin(), out.end());
    return out;
}

void SmallLinearCode::write(ByteWriter& out) const {
    out.magic("SLC1");
    out.u64(u_);
    out.u64(rows_.size());
    for (const auto& r : rows_) out.bits(r);
}

SmallLinearCode SmallLinearCode::read(ByteReader& in) {
    in.expect_magic("SLC1");
    const std::size_t u = in.u64();
    const std::size_t k = in.u64();
    if (k > u) throw FormatError("SmallLinearCode: k > u");
    std::vector<BitWord> rows;
    for (std::size_t i = 0; i < k; ++i) {
        rows.push_back(in.bits());
        if (rows.back().size() != u) throw FormatError("SmallLinearCode: row length mismatch");
    }
    return SmallLinearCode(u, std::move(rows));
}

// List audits

ListAudit audit_linear_exhaustive(const SmallLinearCode& code, std::size_t radius) {
    const std::size_t u = code.length();
    const std::size_t k = code.dimension();
    require(u <= 24, "audit_linear_exhaustive: u must be <= 24");
    std::vector<std::uint32_t> rows;
    for (const auto& r : code.rows()) rows.push_back(static_cast<std::uint32_t>(r.get_bits(0, u)));
    std::vector<std::size_t> pivot;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < u && rank < k; ++col) {
        std::size_t piv = rank;
        while (piv < k && !((rows[piv] >> col) & 1u)) ++piv;
        if (piv == k) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = 0; r < k; ++r)
            if (r != rank && ((rows[r] >> col) & 1u)) rows[r] ^= rows[rank];
        pivot.push_back(col);
        ++rank;
    }
    require(rank == k, "audit_linear_exhaustive: generator not full rank");
    std::vector<std::size_t> free_cols;
    for (std::size_t col = 0, p = 0; col < u; ++col) {
        if (p < pivot.size() && pivot[p] == col)
            ++p;
        else
            free_cols.push_back(col);
    }
    std::vector<std::uint32_t> counts(std::size_t{1} << free_cols.size(), 0);
    for (std::uint64_t e : ball_masks(u, radius)) {
        auto v = static_cast<std::uint32_t>(e);
        for (std::size_t i = 0; i < k; ++i)
            if ((v >> pivot[i]) & 1u) v ^= rows[i];
        std::uint32_t syn = 0;
        for (std::size_t j = 0; j < free_cols.size(); ++j) syn |= ((v >> free_cols[j]) & 1u) << j;
        ++counts[syn];
    }
    ListAudit a;
    a.max_list = *std::max_element(counts.begin(), counts.end());
    a.centers = std::uint64_t{1} << u;
    a.exhaustive = true;
    return a;
}

ListAudit audit_linear_sampled(const SmallLinearCode& code, std::size_t radius, std::size_t centers, Rng& rng) {
    const std::size_t u = code.length();
    const std::size_t k = code.dimension();
    const std::size_t s = code.stride();
    std::vector<BitWord> ys;
    for (std::size_t i = 0; i < centers; ++i) {
        if (i % 2 == 0) {
            ys.push_back(BitWord::random(u, rng));
        } else {
            BitWord y = code.encode(BitWord::random(k, rng));
            y ^= random_error(u, radius, rng);
            ys.push_back(std::move(y));
        }
    }
    std::vector<std::size_t> counts(ys.size(), 0);
    for_each_codeword(code, [&](std::uint64_t, const std::uint64_t* w) {
        for (std::size_t i = 0; i < ys.size(); ++i)
            if (distance_words(w, ys[i].words().data(), s) <= radius) ++counts[i];
    });
    ListAudit a;
    a.max_list = counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
    a.centers = centers;
    return a;
}

std::size_t first_moment_list_bound(double log2_codewords, std::size_t u, std::size_t radius, double slack) {
    const double ud = static_cast<double>(u);
    const double lam = log2_codewords + log2_ball_volume(u, radius) - ud;
    double log_fact = 0.0;
    for (std::size_t j = 1; j < 4096; ++j) {
        log_fact += std::log2(static_cast<double>(j));
        if (ud + static_cast<double>(j) * lam - log_fact < -slack) return j - 1;
    }
    throw SearchExhausted("first_moment_list_bound: no list bound below 4096");
}

// ScCode

ScCode::ScCode(SmallLinearCode inner, AmdParams amd, std::size_t b, std::size_t radius, std::size_t list_bound)
    : inner_(std::move(inner)), amd_(std::move(amd)), b_(b), radius_(radius), list_bound_(list_bound) {
    const std::size_t w = static_cast<std::size_t>(amd_.bits());
    require(b_ >= 1 && b_ <= w * static_cast<std::size_t>(amd_.d), "ScCode: b must be in [1, d*w]");
    require(inner_.dimension() == b_ + 2 * w, "ScCode: inner dimension must be b + b_rnd + tag bits");
    require(b_ + w <= kMaxIndexedBits, "ScCode: b + b_rnd must be <= 26");
    require(inner_.length() <= 128, "ScCode: block length must be <= 128");
    require(radius_ < inner_.length(), "ScCode: radius must be below the block length");
    require(inner_.rank() == inner_.dimension(), "ScCode: inner generator not full rank");
    const std::size_t stride = inner_.stride();
    const std::uint64_t n = std::uint64_t{1} << (b_ + w);
    std::vector<std::uint64_t> words(static_cast<std::size_t>(n) * stride);
    const std::uint64_t mmask = (std::uint64_t{1} << b_) - 1;
    for (std::uint64_t id = 0; id < n; ++id)
        inner_.encode_into(inner_message(id & mmask, id >> b_), words.data() + id * stride);
    index_ = std::make_shared<const NearIndex>(std::move(words), inner_.length(), radius_);
}

std::uint64_t ScCode::inner_message(std::uint64_t m, std::uint64_t r) const {
    const std::size_t w = static_cast<std::size_t>(amd_.bits());
    const std::uint64_t wmask = (std::uint64_t{1} << w) - 1;
    std::vector<GFElem> x(static_cast<std::size_t>(amd_.d));
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = GFElem(static_cast<std::uint32_t>(i * w < 64 ? (m >> (i * w)) & wmask : 0));
    const GFElem tag = amd_tag(amd_, x, GFElem(static_cast<std::uint32_t>(r & wmask)));
    return m | ((r & wmask) << b_) | (std::uint64_t{tag.value} << (b_ + w));
}

std::vector<std::uint64_t> ScCode::candidates(const BitWord& y) const {
    require(y.size() == length(), "ScCode: received word length mismatch");
    std::vector<std::uint32_t> ids;
    index_->query(y.words().data(), ids);
    return std::vector<std::uint64_t>(ids.begin(), ids.end());
}

std::optional<std::uint64_t> ScCode::decode_index(const BitWord& y) const {
    require(y.size() == length(), "ScCode: received word length mismatch");
    std::vector<std::uint32_t> ids;
    index_->query(y.words().data(), ids);
    if (ids.size() != 1) return std::nullopt;
    return ids.front();
}

void ScCode::write(ByteWriter& out) const {
    out.magic("SCC1");
    out.u64(b_);
    out.u64(static_cast<std::uint64_t>(amd_.bits()));
    out.u64(amd_.field.modulus());
    out.u64(static_cast<std::uint64_t>(amd_.d));
    out.u64(radius_);
    out.u64(list_bound_);
    inner_.write(out);
}

ScCode ScCode::read(ByteReader& in) {
    in.expect_magic("SCC1");
    const std::size_t b = in.u64();
    const auto w = static_cast<int>(in.u64());
    const auto modulus = static_cast<std::uint32_t>(in.u64());
    const auto d = static_cast<int>(in.u64());
    const std::size_t radius = in.u64();
    const std::size_t list_bound = in.u64();
    SmallLinearCode inner = SmallLinearCode::read(in);
    try {
        return ScCode(std::move(inner), AmdParams(GFContext(w, modulus), d), b, radius, list_bound);
    } catch (const BadInput& e) {
        throw FormatError(std::string("ScCode: ") + e.what());
    }
}

BitWord sc_encode(const ScCode& code, const BitWord& m, const BitWord& r) {
    require(m.size() == code.b(), "sc_encode: |m| != b");
    require(r.size() == code.b_rnd(), "sc_encode: |r| != b_rnd");
    BitWord out(code.length());
    code.inner().encode_into(code.inner_message(m.get_bits(0, m.size()), r.get_bits(0, r.size())),
                             out.words().data());
    return out;
}

std::optional<ScDecoded> sc_decode(const ScCode& code, const BitWord& y) {
    const auto id = code.decode_index(y);
    if (!id) return std::nullopt;
    return ScDecoded{BitWord::from_uint(*id & ((std::uint64_t{1} << code.b()) - 1), code.b()),
                     BitWord::from_uint(*id >> code.b(), code.b_rnd())};
}

ScBuild build_sc(const ScParams& params) {
    const AmdParams amd(GFContext(params.field_bits), params.amd_d);
    const std::size_t w = static_cast<std::size_t>(params.field_bits);
    const std::size_t k = params.b + 2 * w;
    Rng rng(derive_seed(params.seed, 0, "sc-inner"));
    std::size_t declared = params.list_bound;
    if (declared == 0 && params.u > 24)
        declared = first_moment_list_bound(static_cast<double>(k), params.u, params.radius);
    for (std::size_t attempt = 1; attempt <= params.attempts; ++attempt) {
        SmallLinearCode inner = SmallLinearCode::random(k, params.u, rng);
        ListAudit audit = params.u <= 24 ? audit_linear_exhaustive(inner, params.radius)
                                         : audit_linear_sampled(inner, params.radius, params.audit_centers, rng);
        const std::size_t bound = declared == 0 ? audit.max_list : declared;
        if (audit.max_list > bound) continue;
        ScBuild out;
        out.min_distance = inner.min_distance();
        out.code = ScCode(std::move(inner), amd, params.b, params.radius, bound);
        out.audit = audit;
        out.attempts = attempt;
        return out;
    }
    throw SearchExhausted("build_sc: no inner code met the declared list bound");
}

// LscCode

LscCode::LscCode(SmallLinearCode base, std::vector<BitWord> table, std::size_t radius, std::size_t list_bound)
    : base_(std::move(base)), table_(std::move(table)), radius_(radius), list_bound_(list_bound) {
    require(!table_.empty() && std::has_single_bit(table_.size()), "LscCode: table size must be a power of two");
    s_ = static_cast<std::size_t>(std::countr_zero(table_.size()));
    for (const auto& row : table_) require(row.size() == base_.length(), "LscCode: table row length mismatch");
    require(radius_ < base_.length(), "LscCode: radius must be below the block length");
    if (base_.dimension() + s_ <= kMaxIndexedBits && base_.length() <= 128) {
        const std::size_t stride = base_.stride();
        const std::size_t nm = std::size_t{1} << base_.dimension();
        std::vector<std::uint64_t> cw(nm * stride);
        for (std::size_t m = 0; m < nm; ++m) base_.encode_into(m, cw.data() + m * stride);
        std::vector<std::uint64_t> words((nm << s_) * stride);
        for (std::size_t r = 0; r < table_.size(); ++r) {
            const auto& t = table_[r].words();
            for (std::size_t m = 0; m < nm; ++m) {
                std::uint64_t* dst = words.data() + ((r * nm) + m) * stride;
                for (std::size_t j = 0; j < stride; ++j) dst[j] = cw[m * stride + j] ^ t[j];
            }
        }
        index_ = std::make_shared<const NearIndex>(std::move(words), base_.length(), radius_);
    }
}

BitWord LscCode::encode(std::uint64_t m, std::uint64_t r) const {
    require(r < table_.size(), "lsc_encode: seed out of range");
    BitWord out(length());
    base_.encode_into(m, out.words().data());
    out ^= table_[static_cast<std::size_t>(r)];
    return out;
}

void LscCode::write(ByteWriter& out) const {
    out.magic("LSC1");
    out.u64(s_);
    out.u64(radius_);
    out.u64(list_bound_);
    base_.write(out);
    for (const auto& row : table_) out.bits(row);
}

LscCode LscCode::read(ByteReader& in) {
    in.expect_magic("LSC1");
    const std::size_t s = in.u64();
    const std::size_t radius = in.u64();
    const std::size_t list_bound = in.u64();
    if (s > 24) throw FormatError("LscCode: seed length too large");
    SmallLinearCode base = SmallLinearCode::read(in);
    std::vector<BitWord> table;
    table.reserve(std::size_t{1} << s);
    for (std::size_t i = 0; i < (std::size_t{1} << s); ++i) table.push_back(in.bits());
    try {
        return LscCode(std::move(base), std::move(table), radius, list_bound);
    } catch (const BadInput& e) {
        throw FormatError(std::string("LscCode: ") + e.what());
    }
}

BitWord lsc_encode(const LscCode& code, const BitWord& m, const BitWord& r) {
    require(m.size() == code.k(), "lsc_encode: |m| != k");
    require(r.size() == code.s(), "lsc_encode: |r| != s");
    return code.encode(m.get_bits(0, m.size()), r.empty() ? 0 : r.get_bits(0, r.size()));
}

std::vector<LscCandidate> lsc_list_decode(const LscCode& code, const BitWord& y) {
    require(y.size() == code.length(), "lsc_list_decode: length mismatch");
    if (!code.index_) return lsc_list_decode_exhaustive(code, y);
    std::vector<std::uint32_t> ids;
    code.index_->query(y.words().data(), ids);
    const std::uint64_t mmask = (std::uint64_t{1} << code.k()) - 1;
    std::vector<LscCandidate> out;
    out.reserve(ids.size());
    for (std::uint32_t id : ids) out.push_back({id & mmask, std::uint64_t{id} >> code.k()});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<LscCandidate> lsc_list_decode_exhaustive(const LscCode& code, const BitWord& y) {
    require(y.size() == code.length(), "lsc_list_decode: length mismatch");
    std::vector<LscCandidate> out;
    const std::size_t s = code.base().stride();
    std::vector<std::uint64_t> shifted(s);
    for (std::size_t r = 0; r < code.table().size(); ++r) {
        for (std::size_t j = 0; j < s; ++j) shifted[j] = y.words()[j] ^ code.table()[r].words()[j];
        for_each_codeword(code.base(), [&](std::uint64_t m, const std::uint64_t* w) {
            if (distance_words(w, shifted.data(), s) <= code.radius()) out.push_back({m, r});
        });
    }
    std::sort(out.begin(), out.end());
    return out;
}

ListAudit lsc_audit_exhaustive(const LscCode& code) {
    const std::size_t u = code.length();
    require(u <= 20, "lsc_audit_exhaustive: u must be <= 20");
    std::vector<std::uint32_t> counts(std::size_t{1} << u, 0);
    const auto masks = ball_masks(u, code.radius());
    for (std::size_t r = 0; r < code.table().size(); ++r) {
        const std::uint64_t t = code.table()[r].get_bits(0, u);
        for_each_codeword(code.base(), [&](std::uint64_t, const std::uint64_t* w) {
            const std::uint64_t c = w[0] ^ t;
            for (std::uint64_t e : masks) ++counts[static_cast<std::size_t>(c ^ e)];
        });
    }
    ListAudit a;
    a.max_list = *std::max_element(counts.begin(), counts.end());
    a.centers = counts.size();
    a.exhaustive = true;
    return a;
}

ListAudit lsc_audit_sampled(const LscCode& code, std::size_t centers, Rng& rng) {
    const std::size_t u = code.length();
    ListAudit a;
    for (std::size_t i = 0; i < centers; ++i) {
        BitWord y;
        if (i % 2 == 0) {
            y = BitWord::random(u, rng);
        } else {
            const std::uint64_t m = rng.below(std::uint64_t{1} << code.k());
            const std::uint64_t r = rng.below(code.table().size());
            const std::size_t wt = i % 4 == 1 ? code.radius() : code.radius() / 2;
            y = code.encode(m, r) ^ random_error(u, wt, rng);
        }
        a.max_list = std::max(a.max_list, lsc_list_decode(code, y).size());
        ++a.centers;
    }
    return a;
}

LscCode lsc_random(const LscParams& params, Rng& rng) {
    SmallLinearCode base = SmallLinearCode::random(params.k, params.u, rng);
    std::vector<BitWord> table;
    table.reserve(std::size_t{1} << params.s);
    for (std::size_t i = 0; i < (std::size_t{1} << params.s); ++i) table.push_back(BitWord::random(params.u, rng));
    return LscCode(std::move(base), std::move(table), params.radius, params.list_bound);
}

LscBuild build_lsc(const LscParams& params) {
    Rng rng(derive_seed(params.seed, 0, "lsc"));
    std::size_t declared = params.list_bound;
    if (declared == 0 && params.u > 20)
        declared = first_moment_list_bound(static_cast<double>(params.k + params.s), params.u, params.radius);
    for (std::size_t attempt = 1; attempt <= params.attempts; ++attempt) {
        LscCode code = lsc_random(params, rng);
        ListAudit audit =
            params.u <= 20 ? lsc_audit_exhaustive(code) : lsc_audit_sampled(code, params.audit_centers, rng);
        const std::size_t bound = declared == 0 ? audit.max_list : declared;
        if (audit.max_list > bound) continue;
        LscBuild out;
        out.code = LscCode(code.base(), code.table(), params.radius, bound);
        out.audit = audit;
        out.attempts = attempt;
        return out;
    }
    throw SearchExhausted("build_lsc: no code met the declared list bound");
}

PrgAuditResult lsc_pseudorandomness_audit(const LscCode& code, const std::vector<OnlineProgram>& programs,
                                          std::uint64_t trials, std::uint64_t seed) {
    const std::size_t u = code.length();
    const std::uint64_t seeds = code.table().size();
    const std::uint64_t mmask = code.k() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << code.k()) - 1;
    Rng rng(derive_seed(seed, 0, "lsc-prg-audit"));
    std::vector<std::uint64_t> messages{0, mmask, rng.next() & mmask, rng.next() & mmask};

    PrgAuditResult res;
    res.exact = trials >= seeds;
    const std::uint64_t count = res.exact ? seeds : trials;
    std::vector<double> uniform;
    for (const auto& p : programs) {
        require(p.length() == u, "lsc_pseudorandomness_audit: program length != block length");
        uniform.push_back(p.uniform_acceptance());
    }
    std::vector<BitWord> words(static_cast<std::size_t>(count));
    for (std::uint64_t m : messages) {
        for (std::uint64_t i = 0; i < count; ++i)
            words[static_cast<std::size_t>(i)] = code.encode(m, res.exact ? i : rng.below(seeds));
        for (std::size_t pi = 0; pi < programs.size(); ++pi) {
            std::uint64_t acc = 0;
            for (const auto& w : words) acc += programs[pi].accepts(w) ? 1 : 0;
            const double ph = static_cast<double>(acc) / static_cast<double>(count);
            const double adv = std::abs(ph - uniform[pi]);
            res.evaluations += count;
            if (adv >= res.max_advantage) {
                res.max_advantage = adv;
                res.sigma = std::sqrt(ph * (1.0 - ph) / static_cast<double>(count));
                res.worst_program = programs[pi].name();
                res.worst_message = m;
            }
        }
    }
    return res;
}

} // namespace stochcode
