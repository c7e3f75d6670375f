#include "stochcode/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "stochcode/entropy.hpp"
#include "stochcode/errors.hpp"
#include "stochcode/rng.hpp"

namespace stochcode {

namespace {

std::size_t size_key(const Config& c, const std::string& key, std::size_t fallback) {
    return static_cast<std::size_t>(c.integer(key, fallback));
}

std::string additive_key(const AdditiveParams& p) {
    std::ostringstream s;
    s << std::setprecision(17) << p.N << ' ' << p.p << ' ' << p.eps << ' ' << p.b_ctrl << ' ' << p.ell << ' '
      << p.ctrl_field_bits << ' ' << p.ctrl_d_max << ' ' << p.seed_len << ' ' << p.perm_t << ' ' << p.offset_t << ' '
      << p.sc.radius << ' ' << p.sc.field_bits << ' ' << p.sc.amd_d << ' ' << p.sc.list_bound << ' ' << p.sc.seed
      << ' ' << p.sc.attempts << ' ' << p.rec_eps << ' ' << p.rec_a << ' ' << p.rec_options.mc_trials << ' '
      << p.rec_options.candidate_budget << ' ' << p.rec_options.max_block << ' ' << p.seed;
    return s.str();
}

std::string space_key(const SpaceParams& p) {
    std::ostringstream s;
    s << std::setprecision(17) << p.N << ' ' << p.p << ' ' << p.eps << ' ' << p.S << ' ' << p.b_ctrl << ' ' << p.ell
      << ' ' << p.ctrl_field_bits << ' ' << p.ctrl_d_max << ' ' << p.seed_len << ' ' << p.perm_t << ' '
      << p.nisan_block_bits << ' ' << p.threshold << ' ' << p.list_cap << ' ' << p.lsc.s << ' ' << p.lsc.radius
      << ' ' << p.lsc.list_bound << ' ' << p.lsc.seed << ' ' << p.lsc.attempts << ' ' << p.rec_eps << ' ' << p.rec_a
      << ' ' << p.rec_options.mc_trials << ' ' << p.rec_options.candidate_budget << ' ' << p.rec_options.max_block
      << ' ' << p.seed;
    return s.str();
}

template <class Layout, class Params, class Build>
const Layout& cached(const std::string& key, const Params& params, Build build) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<Layout>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[key];
    if (!slot) slot = std::make_unique<Layout>(build(params));
    return *slot;
}

void apply_rec(const Config& c, double& rec_eps, std::size_t& rec_a, RecOptions& o) {
    rec_eps = c.number("rec.eps", rec_eps);
    rec_a = size_key(c, "rec.a", rec_a);
    o.mc_trials = size_key(c, "rec.mc_trials", o.mc_trials);
    o.candidate_budget = size_key(c, "rec.candidates", o.candidate_budget);
    o.max_block = size_key(c, "rec.max_block", o.max_block);
}

} // namespace

AdditiveParams additive_params(const Config& c) {
    AdditiveParams p;
    p.N = size_key(c, "N", p.N);
    p.p = c.number("p", p.p);
    p.eps = c.number("eps", p.eps);
    p.b_ctrl = size_key(c, "b_ctrl", p.b_ctrl);
    p.ell = size_key(c, "ell", p.ell);
    p.ctrl_field_bits = static_cast<int>(c.integer("ctrl_field_bits", static_cast<std::uint64_t>(p.ctrl_field_bits)));
    p.ctrl_d_max = static_cast<int>(c.integer("ctrl_d_max", static_cast<std::uint64_t>(p.ctrl_d_max)));
    p.seed_len = size_key(c, "seed_len", p.seed_len);
    p.perm_t = size_key(c, "perm_t", p.perm_t);
    p.offset_t = size_key(c, "offset_t", p.offset_t);
    p.sc.radius = size_key(c, "sc.radius", p.sc.radius);
    p.sc.field_bits = static_cast<int>(c.integer("sc.field_bits", static_cast<std::uint64_t>(p.sc.field_bits)));
    p.sc.amd_d = static_cast<int>(c.integer("sc.amd_d", static_cast<std::uint64_t>(p.sc.amd_d)));
    p.sc.list_bound = size_key(c, "sc.list_bound", p.sc.list_bound);
    p.sc.seed = c.integer("sc.seed", p.sc.seed);
    apply_rec(c, p.rec_eps, p.rec_a, p.rec_options);
    p.seed = c.integer("seed", p.seed);
    return p;
}

SpaceParams space_params(const Config& c) {
    SpaceParams p;
    p.N = size_key(c, "N", p.N);
    p.p = c.number("p", p.p);
    p.eps = c.number("eps", p.eps);
    p.S = size_key(c, "S", p.S);
    p.b_ctrl = size_key(c, "b_ctrl", p.b_ctrl);
    p.ell = size_key(c, "ell", p.ell);
    p.ctrl_field_bits = static_cast<int>(c.integer("ctrl_field_bits", static_cast<std::uint64_t>(p.ctrl_field_bits)));
    p.ctrl_d_max = static_cast<int>(c.integer("ctrl_d_max", static_cast<std::uint64_t>(p.ctrl_d_max)));
    p.seed_len = size_key(c, "seed_len", p.seed_len);
    p.perm_t = size_key(c, "perm_t", p.perm_t);
    p.nisan_block_bits = size_key(c, "nisan_block_bits", p.nisan_block_bits);
    p.threshold = size_key(c, "threshold", p.threshold);
    p.list_cap = size_key(c, "list_cap", p.list_cap);
    p.lsc.s = size_key(c, "lsc.s", p.lsc.s);
    p.lsc.radius = size_key(c, "lsc.radius", p.lsc.radius);
    p.lsc.list_bound = size_key(c, "lsc.list_bound", p.lsc.list_bound);
    p.lsc.seed = c.integer("lsc.seed", p.lsc.seed);
    apply_rec(c, p.rec_eps, p.rec_a, p.rec_options);
    p.seed = c.integer("seed", p.seed);
    return p;
}

const CodeLayout& cached_additive_layout(const AdditiveParams& p) {
    return cached<CodeLayout>(additive_key(p), p, additive_layout);
}

const SpaceLayout& cached_space_layout(const SpaceParams& p) {
    return cached<SpaceLayout>(space_key(p), p, space_layout);
}

AsymptoticPreset asymptotic_preset(double N, double p, double eps, double lambda) {
    require(N >= 2 && p >= 0 && p < 0.5 && eps > 0 && lambda > 0, "asymptotic_preset: bad parameters");
    AsymptoticPreset a;
    a.N = N;
    a.p = p;
    a.eps = eps;
    a.lambda = lambda;
    const double lg = std::log2(N);
    a.b_ctrl = lambda * lg;
    a.ell = 24 * eps * N / lg;
    a.seed_len = eps * eps * N;
    a.n_blocks = N / a.b_ctrl;
    a.target_rate = 1 - binary_entropy(p) - eps;
    return a;
}

Interval wilson_interval(std::size_t k, std::size_t n, double z) {
    if (n == 0) return {0.0, 1.0};
    const double nn = static_cast<double>(n), ph = static_cast<double>(k) / nn, z2 = z * z;
    const double centre = (ph + z2 / (2 * nn)) / (1 + z2 / nn);
    const double half = z / (1 + z2 / nn) * std::sqrt(ph * (1 - ph) / nn + z2 / (4 * nn * nn));
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

ExperimentSummary summarize(const std::vector<TrialRecord>& records, double vote_margin_target) {
    ExperimentSummary s;
    s.trials = records.size();
    double sum = 0, sq = 0;
    bool first = true;
    for (const auto& r : records) {
        s.successes += r.decoded_ok;
        sum += static_cast<double>(r.flips);
        sq += static_cast<double>(r.flips) * static_cast<double>(r.flips);
        s.max_flips = std::max(s.max_flips, r.flips);
        s.budget_exceeded += r.budget_exceeded;
        s.good_sampler += r.good_sampler;
        s.control_ok += r.control_ok;
        s.payload_ok += r.payload_ok;
        s.control_recovered += r.control_recovered;
        s.max_list_size = std::max(s.max_list_size, r.list_size);
        s.list_bound_violations += r.control_candidates > r.control_list_bound;
        s.min_rs_margin = first ? r.rs_margin : std::min(s.min_rs_margin, r.rs_margin);
        s.vote_margin_ok += r.decoded_ok && static_cast<double>(r.vote_margin) >= vote_margin_target;
        first = false;
    }
    if (s.trials > 0) {
        const double n = static_cast<double>(s.trials);
        s.success_rate = static_cast<double>(s.successes) / n;
        s.mean_flips = sum / n;
        s.sd_flips = s.trials > 1 ? std::sqrt(std::max(0.0, (sq - sum * sum / n) / (n - 1))) : 0.0;
    }
    s.ci = wilson_interval(s.successes, s.trials);
    return s;
}

namespace {

const char* kColumns =
    "trial,flips,budget_exceeded,decoded_ok,control_recovered,good_sampler,list_size,good_control,correct_control,"
    "wrong_control,payload_accepted,rs_margin,control_ok,payload_ok,vote_margin,control_candidates,"
    "control_list_bound";

} // namespace

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
    out << kCsvVersion << '\n' << kColumns << '\n';
    for (const auto& r : records)
        out << r.trial << ',' << r.flips << ',' << r.budget_exceeded << ',' << r.decoded_ok << ','
            << r.control_recovered << ',' << r.good_sampler << ',' << r.list_size << ',' << r.good_control << ','
            << r.correct_control << ',' << r.wrong_control << ',' << r.payload_accepted << ',' << r.rs_margin << ','
            << r.control_ok << ',' << r.payload_ok << ',' << r.vote_margin << ','
            << r.control_candidates << ',' << r.control_list_bound << '\n';
    if (records.empty()) return;
    const auto s = summarize(records);
    out << std::fixed << std::setprecision(6) << "# summary trials=" << s.trials << " successes=" << s.successes
        << " success_rate=" << s.success_rate << " ci95=[" << s.ci.low << ',' << s.ci.high
        << "] mean_flips=" << s.mean_flips << " max_flips=" << s.max_flips << '\n';
    out.unsetf(std::ios::floatfield);
}

std::vector<TrialRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvVersion) throw FormatError("csv: missing version line");
    if (!std::getline(in, line) || line != kColumns) throw FormatError("csv: unexpected columns");
    std::vector<TrialRecord> out;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::vector<long long> v;
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                v.push_back(std::stoll(cell));
            } catch (const std::exception&) {
                throw FormatError("csv: bad cell '" + cell + "'");
            }
        }
        if (v.size() != 17) throw FormatError("csv: expected 17 cells");
        TrialRecord r;
        auto u = [&](int i) { return static_cast<std::size_t>(v[static_cast<std::size_t>(i)]); };
        r.trial = u(0);
        r.flips = u(1);
        r.budget_exceeded = v[2] != 0;
        r.decoded_ok = v[3] != 0;
        r.control_recovered = v[4] != 0;
        r.good_sampler = v[5] != 0;
        r.list_size = u(6);
        r.good_control = u(7);
        r.correct_control = u(8);
        r.wrong_control = u(9);
        r.payload_accepted = u(10);
        r.rs_margin = static_cast<long>(v[11]);
        r.control_ok = v[12] != 0;
        r.payload_ok = v[13] != 0;
        r.vote_margin = u(14);
        r.control_candidates = u(15);
        r.control_list_bound = u(16);
        out.push_back(r);
    }
    return out;
}

TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t index) {
    Rng rng(derive_seed(cfg.master_seed, index, "trial"));
    TrialRecord rec;
    rec.trial = index;
    if (cfg.codec == "additive" || cfg.codec == "avg") {
        const auto& L = cached_additive_layout(additive_params(cfg.params));
        ChannelContext ctx;
        ctx.block = L.b_ctrl;
        ctx.block_radius = L.sc.radius();
        ctx.codebook_sampler = [&L](Rng& r) {
            return additive_encode(L, BitWord::random(L.message_bits(), r), r).codeword;
        };
        if (cfg.codec == "additive") {
            const auto m = BitWord::random(L.message_bits(), rng);
            const auto enc = additive_encode(L, m, rng);
            const auto o = run_channel(cfg.channel, enc.codeword, rng, ctx);
            const auto rep = additive_decode_report(L, o.received);
            const auto c = additive_counters(L, enc, m, o.received, rep);
            rec.flips = o.flips;
            rec.budget_exceeded = o.budget_exceeded;
            rec.decoded_ok = c.decoded_ok;
            rec.control_recovered = c.control_recovered;
            rec.good_sampler = c.good_sampler;
            rec.list_size = rep.message ? 1 : 0;
            rec.good_control = c.good_control;
            rec.correct_control = c.correct_control;
            rec.wrong_control = c.wrong_control;
            rec.payload_accepted = c.payload_accepted;
            rec.rs_margin = c.rs_margin;
            rec.control_ok = c.control_ok;
            rec.payload_ok = c.payload_ok;
        } else {
            const auto full = BitWord::random(avg_message_bits(L), rng);
            const auto o = run_channel(cfg.channel, avg_encode(L, full), rng, ctx);
            const auto rep = avg_decode_report(L, o.received);
            rec.flips = o.flips;
            rec.budget_exceeded = o.budget_exceeded;
            rec.decoded_ok = rep.message == full;
            rec.control_recovered = rep.message.has_value() &&
                                    rep.message->slice(L.message_bits(), L.control_bits()) ==
                                        full.slice(L.message_bits(), L.control_bits());
            rec.list_size = rep.message ? 1 : 0;
            rec.vote_margin = rep.margin();
        }
        return rec;
    }
    if (cfg.codec == "space") {
        const auto& L = cached_space_layout(space_params(cfg.params));
        ChannelContext ctx;
        ctx.block = L.b_ctrl;
        ctx.block_radius = L.lsc.radius();
        ctx.codebook_sampler = [&L](Rng& r) { return space_encode(L, BitWord::random(L.message_bits(), r), r).codeword; };
        const auto m = BitWord::random(L.message_bits(), rng);
        const auto enc = space_encode(L, m, rng);
        const auto o = run_channel(cfg.channel, enc.codeword, rng, ctx);
        const auto rep = space_list_decode_report(L, o.received);
        const auto c = space_counters(L, enc, m, o.received, rep);
        rec.flips = o.flips;
        rec.budget_exceeded = o.budget_exceeded;
        rec.decoded_ok = c.in_list;
        rec.control_recovered = c.control_in_list;
        rec.good_sampler = c.good_sampler;
        rec.list_size = c.output_size;
        rec.good_control = c.good_control;
        rec.correct_control = c.correct_in_list;
        rec.control_ok = c.lists_ok;
        rec.payload_ok = c.payload_ok;
        rec.control_candidates = c.control_candidates;
        rec.control_list_bound = c.control_list_bound;
        return rec;
    }
    throw BadInput("run_trial: unknown codec '" + cfg.codec + "'");
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    require(cfg.codec == "additive" || cfg.codec == "avg" || cfg.codec == "space",
            "run_experiment: codec must be additive, avg or space");
    ExperimentResult res;
    res.records.resize(cfg.trials);
    if (cfg.trials > 0) {
        // Build the layout before fanning out.
        if (cfg.codec == "space")
            cached_space_layout(space_params(cfg.params));
        else
            cached_additive_layout(additive_params(cfg.params));
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr error;
    std::size_t error_trial = 0;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cfg.trials) return;
            try {
                res.records[i] = run_trial(cfg, i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!error || i < error_trial) {
                    error = std::current_exception();
                    error_trial = i;
                }
                next = cfg.trials;
                return;
            }
        }
    };
    const std::size_t threads = std::max<std::size_t>(1, std::min(cfg.threads, cfg.trials));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) {
        try {
            std::rethrow_exception(error);
        } catch (const std::exception& e) {
            throw std::runtime_error("trial " + std::to_string(error_trial) + ": " + e.what());
        }
    }
    double vote_target = 0;
    if (cfg.codec == "avg") {
        const auto& L = cached_additive_layout(additive_params(cfg.params));
        vote_target = L.eps * static_cast<double>(L.ell) / 4;
    }
    res.summary = summarize(res.records, vote_target);
    if (!cfg.out.empty()) {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) throw BadInput("run_experiment: cannot write '" + cfg.out + "'");
        write_csv(f, res.records);
    }
    return res;
}

SwapAttackResult swap_attack_experiment(const ExperimentConfig& cfg, double nu) {
    require(cfg.codec == "additive", "swap_attack_experiment: the attack targets the additive unique decoder");
    SwapAttackResult r;
    r.nu = nu;
    ExperimentConfig c = cfg;
    c.out.clear();
    c.channel = ChannelSpec::parse("type=swap");
    r.free = run_experiment(c).summary;
    c.channel = ChannelSpec::parse("type=swap-budget");
    c.channel.params["nu"] = std::to_string(nu);
    c.master_seed = derive_seed(cfg.master_seed, 1, "swap-budget");
    r.budgeted = run_experiment(c).summary;
    r.budget = swap_budget(cached_additive_layout(additive_params(cfg.params)).N, nu);
    return r;
}

std::vector<CapacityRow> capacity_table(const std::vector<double>& ps, const std::vector<double>& epss,
                                        const AdditiveParams& base) {
    std::vector<CapacityRow> rows;
    const double share = 1.0 - static_cast<double>(base.ell) * static_cast<double>(base.b_ctrl) / static_cast<double>(base.N);
    for (const double p : ps) {
        require(p >= 0 && p <= 0.5, "capacity_table: p must be in [0, 1/2]");
        for (const double eps : epss) {
            require(eps > 0 && eps < 1, "capacity_table: eps must be in (0, 1)");
            CapacityRow r;
            r.p = p;
            r.eps = eps;
            r.shannon = 1 - binary_entropy(p);
            r.target = r.shannon - eps;
            const double gap = r.shannon - eps / 10;
            if (gap > 0) {
                const double a = static_cast<double>(base.rec_a);
                const double b = std::ceil(a / gap - 1e-9);
                r.design_rate = share * (1 - eps / 10) * a / b;
            }
            rows.push_back(r);
        }
    }
    return rows;
}

void write_capacity_csv(std::ostream& out, const std::vector<CapacityRow>& rows) {
    out << "p,eps,shannon,target,design_rate\n" << std::setprecision(6) << std::fixed;
    for (const auto& r : rows)
        out << r.p << ',' << r.eps << ',' << r.shannon << ',' << r.target << ',' << r.design_rate << '\n';
    out.unsetf(std::ios::floatfield);
}

} // namespace stochcode
