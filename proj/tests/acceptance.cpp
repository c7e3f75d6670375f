#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "stochcode/amd.hpp"
#include "stochcode/branching.hpp"
#include "stochcode/channels.hpp"
#include "stochcode/ctrlcode.hpp"
#include "stochcode/harness.hpp"
#include "stochcode/pseudo.hpp"
#include "stochcode/rec.hpp"
#include "stochcode/rng.hpp"
#include "stochcode/rs.hpp"

using namespace stochcode;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// ---- 1: AMD ----------------------------------------------------------------

Verdict amd_exactness() {
    const AmdParams p(GFContext(4), 1);
    const auto a = amd_audit_exhaustive(p);
    return {a.worst_acceptance <= 2.0 / 16 + 1e-12,
            fmt("worst=%.6f bound=%.6f cases=%llu", a.worst_acceptance, 2.0 / 16,
                static_cast<unsigned long long>(a.cases))};
}

// ---- 2: RS unique decoding ---------------------------------------------------

Poly random_poly(int d, std::uint32_t q, Rng& rng) {
    Poly f;
    for (int i = 0; i <= d; ++i) f.emplace_back(static_cast<std::uint32_t>(rng.below(q)));
    return f;
}

std::vector<GFElem> corrupt(const GFContext& F, std::vector<GFElem> y, std::size_t weight, Rng& rng) {
    std::vector<std::size_t> idx(y.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::size_t i = 0; i < weight; ++i) {
        std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
        y[idx[i]] = F.add(y[idx[i]], GFElem(1 + static_cast<std::uint32_t>(rng.below(F.size() - 1))));
    }
    return y;
}

Verdict rs_unique() {
    GFContext F(4);
    std::vector<GFElem> pts;
    for (std::uint32_t i = 1; i < 16; ++i) pts.emplace_back(i);
    const RsCode code(F, pts, 2);
    Rng rng(derive_seed(2, 0, "rs"));
    std::size_t ok = 0;
    const std::size_t trials = 10000;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto c = rs_encode(code, random_poly(2, 16, rng));
        const auto got = rs_unique_decode(code, corrupt(F, c, rng.below(7), rng));
        ok += got && rs_encode(code, *got) == c;
    }
    std::size_t rejected = 0, wrong = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto c = rs_encode(code, random_poly(2, 16, rng));
        const auto got = rs_unique_decode(code, corrupt(F, c, 7, rng));
        if (!got) ++rejected;
        else if (rs_encode(code, *got) != c) ++wrong;
    }
    return {ok == trials && wrong == 0,
            fmt("weight<=6 recovered %zu/%zu; weight 7: rejected %zu, wrong %zu", ok, trials, rejected, wrong)};
}

// ---- 3: Sudan list decoding ---------------------------------------------------

std::size_t agreement(const GFContext& F, const Poly& p, const std::vector<RsPair>& pairs) {
    std::size_t a = 0;
    for (const auto& [x, y] : pairs) a += poly_eval(F, p, x) == y;
    return a;
}

Verdict sudan() {
    GFContext F(4);
    const std::uint32_t q = 16;
    Rng rng(derive_seed(3, 0, "sudan"));
    std::size_t planted_found = 0, brute_match = 0, list_ok = 0, max_list = 0;
    const std::size_t trials = 1000;
    std::vector<std::vector<Poly>> all(3);
    for (int d = 1; d <= 2; ++d) {
        std::uint64_t total = 1;
        for (int i = 0; i <= d; ++i) total *= q;
        for (std::uint64_t c = 0; c < total; ++c) {
            Poly p;
            for (std::uint64_t x = c, i = 0; i <= static_cast<std::uint64_t>(d); ++i, x /= q)
                p.emplace_back(static_cast<std::uint32_t>(x % q));
            all[d].push_back(p);
        }
    }
    for (std::size_t t = 0; t < trials; ++t) {
        const int d = 1 + static_cast<int>(t % 2);
        const std::size_t n = 12 + rng.below(5);
        std::vector<std::uint32_t> xs(q);
        for (std::uint32_t i = 0; i < q; ++i) xs[i] = i;
        for (std::size_t i = 0; i < n; ++i) std::swap(xs[i], xs[i + rng.below(q - i)]);
        const auto need = static_cast<std::size_t>(std::floor(std::sqrt(2.0 * d * static_cast<double>(n)))) + 1;
        const std::size_t agree = std::max(need, sudan_min_agreement(n, d)) + rng.below(2);
        const Poly f = random_poly(d, q, rng);
        std::vector<RsPair> pairs;
        for (std::size_t i = 0; i < n; ++i) {
            const GFElem x(xs[i]);
            GFElem y = poly_eval(F, f, x);
            if (i >= agree) y = F.add(y, GFElem(1 + static_cast<std::uint32_t>(rng.below(q - 1))));
            pairs.push_back({x, y});
        }
        const auto out = rs_list_decode(F, pairs, d, agree);
        planted_found += std::find(out.begin(), out.end(), f) != out.end();
        std::vector<Poly> expect;
        for (const auto& p : all[d])
            if (agreement(F, p, pairs) >= agree) expect.push_back(p);
        std::sort(expect.begin(), expect.end());
        auto got = out;
        std::sort(got.begin(), got.end());
        brute_match += got == expect;
        list_ok += static_cast<double>(out.size()) <= std::sqrt(2.0 * static_cast<double>(n) / d);
        max_list = std::max(max_list, out.size());
    }
    return {planted_found == trials && brute_match == trials && list_ok == trials,
            fmt("planted %zu/%zu, brute-force match %zu/%zu, list bound %zu/%zu, max list %zu", planted_found,
                trials, brute_match, trials, list_ok, trials, max_list)};
}

// ---- 4: list-decodable + AMD composition ------------------------------------

Verdict composition() {
    ScParams p;
    p.u = 16;
    p.b = 3;
    p.field_bits = 3;
    p.amd_d = 1;
    p.radius = 1;
    p.list_bound = 1;
    p.seed = 1;
    p.attempts = 64;
    const auto build = build_sc(p);
    const auto& code = build.code;
    const auto& inner = code.inner();
    const std::uint32_t u = 16;
    const std::size_t ids = std::size_t{1} << (code.b() + code.b_rnd());

    std::vector<std::uint32_t> cw(std::size_t{1} << inner.dimension());
    for (std::size_t m = 0; m < cw.size(); ++m)
        cw[m] = static_cast<std::uint32_t>(inner.encode(BitWord::from_uint(m, inner.dimension())).get_bits(0, u));
    std::vector<std::vector<std::uint32_t>> lists(std::size_t{1} << u);
    for (std::uint32_t y = 0; y < lists.size(); ++y)
        for (std::uint32_t m = 0; m < cw.size(); ++m)
            if (static_cast<std::size_t>(std::popcount(cw[m] ^ y)) <= code.radius()) lists[y].push_back(m);

    std::vector<std::uint32_t> msgs, cws;
    for (std::uint64_t id = 0; id < ids; ++id) {
        msgs.push_back(static_cast<std::uint32_t>(code.inner_message(id & ((1u << code.b()) - 1), id >> code.b())));
        cws.push_back(cw[msgs.back()]);
    }
    bool offsets = true;
    for (std::uint32_t e = 0; e < (1u << u) && offsets; ++e)
        for (std::size_t id = 0; id < ids && offsets; ++id) {
            std::vector<std::uint32_t> shifted;
            for (auto x : lists[e]) shifted.push_back(x ^ msgs[id]);
            std::sort(shifted.begin(), shifted.end());
            offsets = lists[cws[id] ^ e] == shifted;
        }

    bool strong = true;
    double worst = 0;
    for (std::uint64_t id = 0; id < ids; ++id) {
        const auto m = BitWord::from_uint(id & ((1u << code.b()) - 1), code.b());
        const auto r = BitWord::from_uint(id >> code.b(), code.b_rnd());
        const auto c = sc_encode(code, m, r);
        for (std::uint32_t e = 0; e < (1u << u); ++e) {
            if (static_cast<std::size_t>(std::popcount(e)) > code.radius()) continue;
            const auto d = sc_decode(code, c ^ BitWord::from_uint(e, u));
            strong = strong && d && d->m == m && d->r == r;
        }
    }
    const std::size_t nm = std::size_t{1} << code.b(), nr = std::size_t{1} << code.b_rnd();
    for (std::uint32_t e = 0; e < (1u << u); ++e) {
        if (static_cast<std::size_t>(std::popcount(e)) <= code.radius()) continue;
        const auto err = BitWord::from_uint(e, u);
        for (std::uint64_t mi = 0; mi < nm; ++mi) {
            std::size_t wrong = 0;
            for (std::uint64_t ri = 0; ri < nr; ++ri) {
                const auto m = BitWord::from_uint(mi, code.b()), r = BitWord::from_uint(ri, code.b_rnd());
                const auto d = sc_decode(code, sc_encode(code, m, r) ^ err);
                if (d && (d->m != m || d->r != r)) ++wrong;
            }
            worst = std::max(worst, static_cast<double>(wrong) / static_cast<double>(nr));
        }
    }
    return {offsets && strong && worst <= code.delta(),
            fmt("u=%u offsets %s, strong decoding %s, worst over-radius wrong fraction %.4f <= delta %.4f", u,
                offsets ? "message-independent" : "VIOLATED", strong ? "exact" : "FAILED", worst, code.delta())};
}

// ---- 5, 6, 11: end-to-end experiments -----------------------------------------

ExperimentResult experiment(const std::string& codec, const std::string& channel, std::size_t trials,
                            std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.codec = codec;
    cfg.channel = ChannelSpec::parse(channel);
    cfg.trials = trials;
    cfg.master_seed = seed;
    return run_experiment(cfg);
}

const std::vector<std::string> kOblivious{"type=burst p=0.1 offset=random", "type=random p=0.1",
                                          "type=block-killer p=0.1"};

Verdict additive_end_to_end() {
    bool pass = true;
    std::string detail;
    for (std::size_t i = 0; i < kOblivious.size(); ++i) {
        const auto s = experiment("additive", kOblivious[i], 200, 500 + i).summary;
        const double n = static_cast<double>(s.trials);
        const bool ok = s.success_rate >= 0.99 && s.good_sampler / n >= 0.99 && s.control_ok / n >= 0.99 &&
                        s.payload_ok / n >= 0.99 && s.budget_exceeded == 0;
        pass = pass && ok;
        detail += fmt("%s%s: %zu/%zu ok, sampler %zu, control %zu, payload %zu, min rs margin %ld",
                      i ? "; " : "", ChannelSpec::parse(kOblivious[i]).type.c_str(), s.successes, s.trials,
                      s.good_sampler, s.control_ok, s.payload_ok, s.min_rs_margin);
    }
    return {pass, detail};
}

Verdict average_error() {
    bool pass = true;
    std::string detail;
    for (std::size_t i = 0; i < kOblivious.size(); ++i) {
        const auto s = experiment("avg", kOblivious[i], 200, 600 + i).summary;
        const bool ok = s.success_rate >= 0.98 &&
                        static_cast<double>(s.vote_margin_ok) >= 0.95 * static_cast<double>(s.successes);
        pass = pass && ok;
        detail += fmt("%s%s: %zu/%zu ok, margin>=eps*ell/4 in %zu", i ? "; " : "",
                      ChannelSpec::parse(kOblivious[i]).type.c_str(), s.successes, s.trials, s.vote_margin_ok);
    }
    return {pass, detail};
}

Verdict space_end_to_end() {
    const auto& L = cached_space_layout(SpaceParams{});
    bool pass = true;
    std::string detail;
    std::size_t i = 0;
    for (const auto& adv : shipped_bp_adversaries(L.N, 0.1)) {
        const auto s = experiment("space", "type=" + adv.name + " p=0.1", 100, 1100 + i).summary;
        const bool ok = s.success_rate >= 0.95 && s.max_list_size <= L.list_cap && s.budget_exceeded == 0;
        pass = pass && ok;
        detail += fmt("%s%s: %zu/%zu in list, max list %zu", i ? "; " : "", adv.name.c_str(), s.successes,
                      s.trials, s.max_list_size);
        ++i;
    }
    return {pass, detail + fmt(" (L_out=%zu)", L.list_cap)};
}

// ---- 7: REC -----------------------------------------------------------------

Verdict rec_guarantee() {
    const auto& rec = cached_additive_layout(AdditiveParams{}).rec;
    Rng rng(derive_seed(7, 0, "rec"));
    const std::size_t n = rec.n_rec(), trials = 1000;
    std::size_t ok = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto m = BitWord::random(rec.message_bits(), rng);
        const auto e = error_random(n, n / 10, rng);
        const auto perm = knr_perm(BitWord::random(kPermSeedBits, rng), 64, n);
        const auto d = rec_decode(rec, rec_encode(rec, m) ^ permute(perm, e));
        ok += d && *d == m;
    }
    const std::size_t blocks = rec.correctable_blocks(), worst_trials = 200;
    std::size_t worst_ok = 0;
    for (std::size_t t = 0; t < worst_trials; ++t) {
        const auto m = BitWord::random(rec.message_bits(), rng);
        BitWord y = rec_encode(rec, m);
        std::vector<std::size_t> idx(rec.n_data());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        for (std::size_t i = 0; i < blocks; ++i) {
            const std::size_t pick = t % 4 == 0 ? i : t % 4 == 1 ? rec.n_data() - 1 - i : 0;
            if (t % 4 >= 2) std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
            const std::size_t blk = t % 4 >= 2 ? idx[i] : pick;
            BitWord junk = BitWord::random(rec.b_data(), rng);
            if (t % 4 == 3) {
                const auto sym = static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << rec.a()));
                junk = BitWord(rec.b_data());
                for (std::size_t j = 0; j < rec.b_data(); ++j)
                    junk.set(j, (rec.inner_codeword(sym)[j / 64] >> (j % 64)) & 1u);
            }
            y.assign(blk * rec.b_data(), junk);
        }
        const auto d = rec_decode(rec, y);
        worst_ok += d && *d == m;
    }
    return {static_cast<double>(ok) >= 0.99 * trials && worst_ok == worst_trials,
            fmt("permuted weight-%zu errors: %zu/%zu; %zu corrupted blocks (kappa*n_data): %zu/%zu", n / 10, ok,
                trials, blocks, worst_ok, worst_trials)};
}

// ---- 8: swapping channel -------------------------------------------------------

Verdict swapping() {
    ExperimentConfig cfg;
    cfg.trials = 500;
    cfg.master_seed = 800;
    const auto r = swap_attack_experiment(cfg, 0.05);
    const double N = static_cast<double>(cached_additive_layout(AdditiveParams{}).N);
    const double se = r.free.sd_flips / std::sqrt(static_cast<double>(r.free.trials));
    const double err_free = 1 - r.free.success_rate, err_budget = 1 - r.budgeted.success_rate;
    const bool pass = err_free >= 0.4 && r.free.mean_flips <= N / 4 + 2 * se && r.budgeted.max_flips <= r.budget &&
                      r.budget <= static_cast<std::size_t>(std::floor(N * 0.3)) && err_budget >= 0.02;
    return {pass, fmt("W^main error %.3f, mean flips %.1f <= %.1f; budgeted error %.3f, max flips %zu <= %zu",
                      err_free, r.free.mean_flips, N / 4 + 2 * se, err_budget, r.budgeted.max_flips, r.budget)};
}

// ---- 9: Nisan generator ----------------------------------------------------------

Verdict nisan_audit() {
    const std::size_t s = 4, m = 64, width = 16;
    const NisanParams np(s, m);
    double worst = 0;
    std::string name;
    const auto family = probe_family(m, width, 16, 909);
    for (const auto& prog : family) {
        const auto a = nisan_audit_exact(np, prog);
        if (a.advantage > worst) {
            worst = a.advantage;
            name = prog.name();
        }
    }
    const double bound = std::exp2(-static_cast<double>(s)) + 0.05;
    return {worst <= bound, fmt("S'=%zu m=%zu, %zu programs of width <= %zu: max advantage %.4f (%s) <= %.4f", s, m,
                                family.size(), width, worst, name.c_str(), bound)};
}

// ---- 10: LSC ----------------------------------------------------------------------

Verdict lsc_properties() {
    const auto& desk = cached_space_layout(SpaceParams{}).lsc;
    Rng rng(derive_seed(10, 0, "lsc"));
    const auto sampled = lsc_audit_sampled(desk, 2000, rng);
    LscParams tp;
    tp.u = 16;
    tp.k = 4;
    tp.s = 6;
    tp.radius = 2;
    tp.seed = 3;
    const auto tiny = build_lsc(tp);
    const auto exhaustive = lsc_audit_exhaustive(tiny.code);
    const std::size_t s0 = 3;
    const auto family = probe_family(desk.length(), std::size_t{1} << s0, 50, 1010);
    const auto prg = lsc_pseudorandomness_audit(desk, family, std::uint64_t{1} << desk.s());
    const double bound = std::exp2(-static_cast<double>(s0)) + 3 * prg.sigma;
    const bool pass = sampled.max_list <= desk.list_bound() && exhaustive.exhaustive &&
                      exhaustive.max_list <= tiny.code.list_bound() && prg.max_advantage <= bound;
    return {pass, fmt("desk u=%zu sampled max list %zu <= %zu; u=16 exhaustive max list %zu <= %zu; "
                      "width-%zu advantage %.4f (%s) <= %.4f",
                      desk.length(), sampled.max_list, desk.list_bound(), exhaustive.max_list,
                      tiny.code.list_bound(), std::size_t{1} << s0, prg.max_advantage, prg.worst_program.c_str(),
                      bound)};
}

struct Criterion {
    int id;
    const char* name;
    double limit_s; // 0: no runtime limit
    std::function<Verdict()> run;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "AMD exactness", 1, amd_exactness},
        {2, "RS unique decoding", 10, rs_unique},
        {3, "Sudan list decoding", 60, sudan},
        {4, "list-decodable + AMD composition", 0, composition},
        {5, "additive code end to end", 600, additive_end_to_end},
        {6, "average-error variant", 0, average_error},
        {7, "REC permuted errors", 0, rec_guarantee},
        {8, "swapping channel", 0, swapping},
        {9, "Nisan generator audit", 300, nisan_audit},
        {10, "LSC properties", 0, lsc_properties},
        {11, "space-bounded end to end", 900, space_end_to_end},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    int failed = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && !only.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.limit_s == 0 || secs < c.limit_s;
        const bool pass = v.pass && in_time;
        failed += !pass;
        std::printf("%s [%d] %s: %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), secs,
                    in_time ? "" : fmt(", limit %.0f s", c.limit_s).c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
