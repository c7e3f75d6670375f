#include "stochcode/rs.hpp"

#include <algorithm>
#include <set>

#include "stochcode/errors.hpp"

namespace stochcode {

GFElem poly_eval(const GFContext& F, std::span<const GFElem> p, GFElem x) {
    GFElem acc;
    for (std::size_t i = p.size(); i-- > 0;) acc = F.add(F.mul(acc, x), p[i]);
    return acc;
}

void poly_trim(Poly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int poly_degree(const Poly& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (!p[i].is_zero()) return static_cast<int>(i);
    return -1;
}

Poly poly_mul(const GFContext& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
    }
    poly_trim(out);
    return out;
}

Poly poly_divmod(const GFContext& F, const Poly& a, const Poly& b, Poly* rem) {
    const int db = poly_degree(b);
    if (db < 0) throw DivisionByZero("poly_divmod: zero divisor");
    Poly r = a;
    poly_trim(r);
    const int da = poly_degree(r);
    Poly q(da >= db ? static_cast<std::size_t>(da - db + 1) : 0);
    const GFElem lead_inv = F.inv(b[static_cast<std::size_t>(db)]);
    for (int i = da; i >= db; --i) {
        const GFElem c = r[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        const GFElem f = F.mul(c, lead_inv);
        q[static_cast<std::size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) {
            auto& slot = r[static_cast<std::size_t>(i - db + j)];
            slot = F.sub(slot, F.mul(f, b[static_cast<std::size_t>(j)]));
        }
    }
    poly_trim(r);
    poly_trim(q);
    if (rem) *rem = std::move(r);
    return q;
}

Poly poly_interpolate(const GFContext& F, std::span<const GFElem> xs, std::span<const GFElem> ys) {
    require(xs.size() == ys.size(), "poly_interpolate: length mismatch");
    const std::size_t n = xs.size();
    // Newton divided differences.
    std::vector<GFElem> c(ys.begin(), ys.end());
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            const GFElem den = F.sub(xs[i], xs[i - j]);
            if (den.is_zero()) throw BadInput("poly_interpolate: repeated x");
            c[i] = F.div(F.sub(c[i], c[i - 1]), den);
        }
    // Horner expansion of the Newton form into monomial coefficients.
    Poly p;
    for (std::size_t i = n; i-- > 0;) {
        // p = p * (X - x_i) + c_i
        Poly next(p.size() + 1);
        for (std::size_t k = 0; k < p.size(); ++k) {
            next[k + 1] = F.add(next[k + 1], p[k]);
            next[k] = F.sub(next[k], F.mul(p[k], xs[i]));
        }
        next[0] = F.add(next[0], c[i]);
        p = std::move(next);
    }
    poly_trim(p);
    return p;
}

RsCode::RsCode(GFContext f, std::vector<GFElem> pts, int d) : field(std::move(f)), points(std::move(pts)), d_max(d) {
    require(field.valid(), "RsCode: field not initialized");
    require(d_max >= 0 && static_cast<std::size_t>(d_max) < points.size(), "RsCode: need 0 <= d_max < n");
    std::set<std::uint32_t> seen;
    for (auto p : points) {
        require(p.value < field.size(), "RsCode: point outside field");
        require(seen.insert(p.value).second, "RsCode: duplicate evaluation point");
    }
}

std::vector<GFElem> rs_encode(const RsCode& code, std::span<const GFElem> coeffs) {
    require(coeffs.size() <= code.k(), "rs_encode: more than d_max+1 coefficients");
    std::vector<GFElem> out(code.n());
    for (std::size_t i = 0; i < code.n(); ++i) out[i] = poly_eval(code.field, coeffs, code.points[i]);
    return out;
}

std::size_t rs_agreement(const GFContext& F, const Poly& p, std::span<const RsPair> pairs) {
    std::size_t a = 0;
    for (const auto& pr : pairs)
        if (poly_eval(F, p, pr.x) == pr.y) ++a;
    return a;
}

namespace {

void check_distinct_x(std::span<const RsPair> pairs) {
    std::set<std::uint32_t> seen;
    for (const auto& p : pairs) require(seen.insert(p.x.value).second, "rs_unique_decode: duplicate x coordinate");
}

bool satisfies_margin(const GFContext& F, const Poly& p, std::span<const RsPair> pairs, int d_max) {
    if (poly_degree(p) > d_max) return false;
    const std::size_t agree = rs_agreement(F, p, pairs);
    return static_cast<long>(agree) - static_cast<long>(pairs.size() - agree) > d_max;
}

Poly padded(Poly p, int d_max) {
    p.resize(static_cast<std::size_t>(d_max) + 1);
    return p;
}

// Row-reduce `m` (rows of length cols) in place; returns pivot column per row.
std::vector<int> row_reduce(const GFContext& F, std::vector<std::vector<GFElem>>& m, std::size_t cols) {
    std::vector<int> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col].is_zero()) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        const GFElem inv = F.inv(m[row][col]);
        for (auto& e : m[row]) e = F.mul(e, inv);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            const GFElem f = m[r][col];
            for (std::size_t c = col; c < m[r].size(); ++c) m[r][c] = F.sub(m[r][c], F.mul(f, m[row][c]));
        }
        pivots.push_back(static_cast<int>(col));
        ++row;
    }
    return pivots;
}

} // namespace

std::optional<Poly> rs_unique_decode(const GFContext& F, std::span<const RsPair> pairs, int d_max) {
    require(d_max >= 0, "rs_unique_decode: negative degree");
    check_distinct_x(pairs);
    const std::size_t n = pairs.size();
    if (n <= static_cast<std::size_t>(d_max)) return std::nullopt;
    const std::size_t k = static_cast<std::size_t>(d_max) + 1;

    std::vector<GFElem> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = pairs[i].x;
        ys[i] = pairs[i].y;
    }
    Poly g0{F.one()};
    for (auto x : xs) g0 = poly_mul(F, g0, Poly{x, F.one()});
    Poly g1 = poly_interpolate(F, xs, ys);

    // Partial extended Euclid on (g0, g1), tracking only the g1 cofactor.
    Poly r_prev = g0, r_cur = g1, v_prev, v_cur{F.one()};
    while (2 * poly_degree(r_cur) >= static_cast<int>(n + k)) {
        Poly rem;
        Poly q = poly_divmod(F, r_prev, r_cur, &rem);
        Poly qv = poly_mul(F, q, v_cur);
        Poly v_next = v_prev;
        v_next.resize(std::max(v_next.size(), qv.size()));
        for (std::size_t i = 0; i < qv.size(); ++i) v_next[i] = F.sub(v_next[i], qv[i]);
        poly_trim(v_next);
        r_prev = std::move(r_cur);
        r_cur = std::move(rem);
        v_prev = std::move(v_cur);
        v_cur = std::move(v_next);
    }
    Poly rem;
    Poly p = poly_divmod(F, r_cur, v_cur, &rem);
    if (!rem.empty()) return std::nullopt;
    if (!satisfies_margin(F, p, pairs, d_max)) return std::nullopt;
    return padded(std::move(p), d_max);
}

std::optional<Poly> rs_unique_decode(const RsCode& code, std::span<const GFElem> received) {
    require(received.size() == code.n(), "rs_unique_decode: received length != n");
    std::vector<RsPair> pairs(code.n());
    for (std::size_t i = 0; i < code.n(); ++i) pairs[i] = {code.points[i], received[i]};
    return rs_unique_decode(code.field, pairs, code.d_max);
}

std::optional<Poly> rs_unique_decode_bw(const GFContext& F, std::span<const RsPair> pairs, int d_max) {
    require(d_max >= 0, "rs_unique_decode_bw: negative degree");
    check_distinct_x(pairs);
    const std::size_t n = pairs.size();
    if (n <= static_cast<std::size_t>(d_max)) return std::nullopt;
    const std::size_t d = static_cast<std::size_t>(d_max);
    const std::size_t e = (n - d - 1) / 2;
    // Unknowns: Q_0..Q_{d+e}, E_0..E_{e-1} (E monic of degree e).
    // Q(x_i) - y_i E(x_i) = 0  ->  sum Q_j x^j - y sum_{l<e} E_l x^l = y x^e.
    const std::size_t nq = d + e + 1, cols = nq + e;
    std::vector<std::vector<GFElem>> m(n, std::vector<GFElem>(cols + 1));
    for (std::size_t i = 0; i < n; ++i) {
        const auto [x, y] = pairs[i];
        GFElem xp = F.one();
        for (std::size_t j = 0; j < nq; ++j) {
            m[i][j] = xp;
            if (j < e) m[i][nq + j] = F.mul(y, xp);
            if (j == e) m[i][cols] = F.mul(y, xp);
            xp = F.mul(xp, x);
        }
    }
    const auto piv = row_reduce(F, m, cols);
    for (std::size_t r = piv.size(); r < n; ++r)
        if (!m[r][cols].is_zero()) return std::nullopt;
    std::vector<GFElem> sol(cols);
    for (std::size_t r = 0; r < piv.size(); ++r) sol[static_cast<std::size_t>(piv[r])] = m[r][cols];
    Poly Q(sol.begin(), sol.begin() + static_cast<long>(nq));
    Poly E(sol.begin() + static_cast<long>(nq), sol.end());
    E.push_back(F.one());
    Poly rem;
    Poly p = poly_divmod(F, Q, E, &rem);
    if (!rem.empty()) return std::nullopt;
    if (!satisfies_margin(F, p, pairs, d_max)) return std::nullopt;
    return padded(std::move(p), d_max);
}

namespace {

std::size_t monomial_count(std::size_t D, std::size_t d) {
    if (d == 0) return D + 1;
    std::size_t c = 0;
    for (std::size_t j = 0; j * d <= D; ++j) c += D - j * d + 1;
    return c;
}

// Bivariate polynomial: coefficient polynomials in X indexed by power of Y.
using BiPoly = std::vector<Poly>;

void bi_trim(BiPoly& q) {
    for (auto& p : q) poly_trim(p);
    while (!q.empty() && q.back().empty()) q.pop_back();
}

// Divide every coefficient by the largest power of X dividing all of them.
void strip_x_power(BiPoly& q) {
    bi_trim(q);
    std::size_t shift = SIZE_MAX;
    for (const auto& p : q) {
        std::size_t z = 0;
        while (z < p.size() && p[z].is_zero()) ++z;
        if (z < p.size()) shift = std::min(shift, z);
    }
    if (shift == SIZE_MAX || shift == 0) return;
    for (auto& p : q)
        if (!p.empty()) p.erase(p.begin(), p.begin() + static_cast<long>(std::min(shift, p.size())));
}

// Q(X, X*Y + gamma) divided by the largest power of X dividing it.
BiPoly shift_and_reduce(const GFContext& F, const BiPoly& q, GFElem gamma) {
    BiPoly r;
    for (std::size_t j = q.size(); j-- > 0;) {
        // r = r * (X*Y + gamma) + q_j
        BiPoly next(r.size() + 1);
        for (std::size_t k = 0; k < r.size(); ++k) {
            auto& a = next[k];
            a.resize(std::max(a.size(), r[k].size()));
            for (std::size_t i = 0; i < r[k].size(); ++i) a[i] = F.add(a[i], F.mul(gamma, r[k][i]));
            auto& b = next[k + 1];
            b.resize(std::max(b.size(), r[k].size() + 1));
            for (std::size_t i = 0; i < r[k].size(); ++i) b[i + 1] = F.add(b[i + 1], r[k][i]);
        }
        auto& c = next[0];
        c.resize(std::max(c.size(), q[j].size()));
        for (std::size_t i = 0; i < q[j].size(); ++i) c[i] = F.add(c[i], q[j][i]);
        r = std::move(next);
    }
    strip_x_power(r);
    return r;
}

// Roth-Ruckenstein: all Y-roots of Q of degree <= d (plus possibly spurious
// candidates, which the caller filters).
void rr_search(const GFContext& F, const BiPoly& q, std::size_t depth, std::size_t d, Poly& prefix,
               std::vector<Poly>& out) {
    if (q.empty()) return;
    std::vector<GFElem> c0(q.size());
    for (std::size_t j = 0; j < q.size(); ++j) c0[j] = q[j].empty() ? GFElem() : q[j][0];
    for (std::uint32_t g = 0; g < F.size(); ++g) {
        const GFElem gamma(g);
        if (!poly_eval(F, c0, gamma).is_zero()) continue;
        prefix.push_back(gamma);
        if (depth == d)
            out.push_back(prefix);
        else
            rr_search(F, shift_and_reduce(F, q, gamma), depth + 1, d, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

std::size_t sudan_weighted_degree(std::size_t n, int d_max) {
    require(d_max >= 0, "sudan_weighted_degree: negative degree");
    std::size_t D = 0;
    while (monomial_count(D, static_cast<std::size_t>(d_max)) <= n) ++D;
    return D;
}

std::size_t sudan_min_agreement(std::size_t n, int d_max) {
    if (d_max == 0) return 1;
    return sudan_weighted_degree(n, d_max) + 1;
}

std::vector<Poly> rs_list_decode(const GFContext& F, std::span<const RsPair> pairs, int d_max, std::size_t t) {
    require(d_max >= 0, "rs_list_decode: negative degree");
    {
        std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
        for (const auto& p : pairs)
            require(seen.insert({p.x.value, p.y.value}).second, "rs_list_decode: duplicate pair");
    }
    require(t >= sudan_min_agreement(pairs.size(), d_max), "rs_list_decode: agreement threshold too small");
    const std::size_t d = static_cast<std::size_t>(d_max);

    std::vector<Poly> result;
    if (d == 0) {
        std::vector<std::size_t> count(F.size(), 0);
        for (const auto& p : pairs) ++count[p.y.value];
        for (std::uint32_t y = 0; y < F.size(); ++y)
            if (count[y] >= t) result.push_back(Poly{GFElem(y)});
        return result;
    }

    const std::size_t n = pairs.size();
    const std::size_t D = sudan_weighted_degree(n, d_max);
    // Monomials X^a Y^j with a + d*j <= D.
    std::vector<std::pair<std::size_t, std::size_t>> mono;
    for (std::size_t j = 0; j * d <= D; ++j)
        for (std::size_t a = 0; a + j * d <= D; ++a) mono.push_back({a, j});
    const std::size_t cols = mono.size();
    std::vector<std::vector<GFElem>> m(n, std::vector<GFElem>(cols));
    for (std::size_t i = 0; i < n; ++i) {
        const auto [x, y] = pairs[i];
        for (std::size_t c = 0; c < cols; ++c)
            m[i][c] = F.mul(F.pow(x, mono[c].first), F.pow(y, mono[c].second));
    }
    const auto piv = row_reduce(F, m, cols);
    // Kernel vector: first free column set to 1.
    std::vector<bool> is_pivot(cols, false);
    for (int p : piv) is_pivot[static_cast<std::size_t>(p)] = true;
    std::size_t free_col = 0;
    while (is_pivot[free_col]) ++free_col;
    std::vector<GFElem> sol(cols);
    sol[free_col] = F.one();
    for (std::size_t r = 0; r < piv.size(); ++r) sol[static_cast<std::size_t>(piv[r])] = F.sub(GFElem(), m[r][free_col]);

    BiPoly Q(D / d + 1);
    for (std::size_t c = 0; c < cols; ++c) {
        auto& p = Q[mono[c].second];
        if (p.size() <= mono[c].first) p.resize(mono[c].first + 1);
        p[mono[c].first] = sol[c];
    }
    strip_x_power(Q);

    std::vector<Poly> cands;
    Poly prefix;
    rr_search(F, Q, 0, d, prefix, cands);
    std::set<std::vector<std::uint32_t>> seen;
    for (auto& c : cands) {
        c.resize(d + 1);
        std::vector<std::uint32_t> key;
        for (auto e : c) key.push_back(e.value);
        if (!seen.insert(key).second) continue;
        if (rs_agreement(F, c, pairs) >= t) result.push_back(c);
    }
    std::sort(result.begin(), result.end());
    return result;
}

} // namespace stochcode
