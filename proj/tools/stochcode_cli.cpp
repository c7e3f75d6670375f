#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "stochcode/amd.hpp"
#include "stochcode/branching.hpp"
#include "stochcode/channels.hpp"
#include "stochcode/codec_additive.hpp"
#include "stochcode/codec_space.hpp"
#include "stochcode/ctrlcode.hpp"
#include "stochcode/errors.hpp"
#include "stochcode/harness.hpp"
#include "stochcode/rng.hpp"
#include "stochcode/serial.hpp"

using namespace stochcode;

namespace {

constexpr int kOk = 0;
constexpr int kBelowThreshold = 1;
constexpr int kBadInput = 2;

struct Common {
    std::string params;
    std::string channel;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::string out;
    std::string in;
    double threshold = -1;
    std::size_t threads = 1;
    std::string codec = "additive";
};

Config load_params(const std::string& path) { return path.empty() ? Config{} : Config::load(path); }

ChannelSpec load_channel(const std::string& arg) {
    if (arg.empty()) return ChannelSpec{};
    if (std::filesystem::exists(arg)) {
        std::ifstream in(arg);
        std::stringstream ss;
        ss << in.rdbuf();
        return ChannelSpec::parse(ss.str());
    }
    return ChannelSpec::parse(arg);
}

// Prints the asymptotic formulas and returns true when the preset asks for them.
bool symbolic_preset(const Config& c) {
    if (c.text("preset", "desk") != "asymptotic") return false;
    const auto a = asymptotic_preset(c.number("N", 1 << 20), c.number("p", 0.1), c.number("eps", 0.1), c.number("lambda", 4));
    std::printf("preset asymptotic (formulas only, not runnable)\n");
    std::printf("N = %.0f  p = %g  eps = %g  lambda = %g\n", a.N, a.p, a.eps, a.lambda);
    std::printf("b_ctrl = lambda log2 N = %.2f\n", a.b_ctrl);
    std::printf("ell = 24 eps N / log2 N = %.2f\n", a.ell);
    std::printf("seed_len = eps^2 N = %.2f\n", a.seed_len);
    std::printf("n_blocks = N / b_ctrl = %.2f\n", a.n_blocks);
    std::printf("target rate 1 - H(p) - eps = %.6f\n", a.target_rate);
    return true;
}

void print_summary(const char* label, const ExperimentSummary& s) {
    std::printf("%s trials=%zu successes=%zu rate=%.4f ci95=[%.4f, %.4f] mean_flips=%.1f sd_flips=%.1f max_flips=%zu\n",
                label, s.trials, s.successes, s.success_rate, s.ci.low, s.ci.high, s.mean_flips, s.sd_flips,
                s.max_flips);
}

int check(double value, double threshold, bool at_least = true) {
    if (threshold < 0) return kOk;
    const bool ok = at_least ? value >= threshold : value <= threshold;
    if (!ok) std::printf("below threshold: %.4f vs %.4f\n", value, threshold);
    return ok ? kOk : kBelowThreshold;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw BadInput("not a number: " + item);
        }
    }
    return out;
}

BitWord read_bits(const std::string& path) { return BitWord::deserialize(read_file(path)); }
void write_bits(const std::string& path, const BitWord& w) { write_file(path, w.serialize()); }

int cmd_encode(const Common& o, bool random_message, const std::string& layout_out) {
    const Config params = load_params(o.params);
    if (symbolic_preset(params)) return kOk;
    Rng rng(derive_seed(o.seed, 0, "encode"));
    require(!o.in.empty() && !o.out.empty(), "encode needs --in and --out");
    if (o.codec == "space") {
        const auto& L = cached_space_layout(space_params(params));
        if (random_message) write_bits(o.in, BitWord::random(L.message_bits(), rng));
        write_bits(o.out, space_encode(L, read_bits(o.in), rng).codeword);
        if (!layout_out.empty()) {
            ByteWriter w;
            L.write(w);
            write_file(layout_out, w.take());
        }
    } else {
        const auto& L = cached_additive_layout(additive_params(params));
        if (random_message) write_bits(o.in, BitWord::random(L.message_bits(), rng));
        write_bits(o.out, additive_encode(L, read_bits(o.in), rng).codeword);
        if (!layout_out.empty()) {
            ByteWriter w;
            L.write(w);
            write_file(layout_out, w.take());
        }
    }
    std::printf("wrote %s\n", o.out.c_str());
    return kOk;
}

int cmd_decode(const Common& o, const std::string& layout_in) {
    require(!o.in.empty(), "decode needs --in");
    const BitWord x = read_bits(o.in);
    if (o.codec == "space") {
        SpaceLayout loaded;
        const SpaceLayout* L = nullptr;
        if (!layout_in.empty()) {
            const auto bytes = read_file(layout_in);
            ByteReader r(bytes);
            loaded = SpaceLayout::read(r);
            L = &loaded;
        } else {
            L = &cached_space_layout(space_params(load_params(o.params)));
        }
        const auto list = space_list_decode(*L, x);
        std::printf("list size %zu\n", list.size());
        for (std::size_t i = 0; i < list.size() && !o.out.empty(); ++i)
            write_bits(list.size() == 1 ? o.out : o.out + "." + std::to_string(i), list[i]);
        return list.empty() ? kBelowThreshold : kOk;
    }
    CodeLayout loaded;
    const CodeLayout* L = nullptr;
    if (!layout_in.empty()) {
        const auto bytes = read_file(layout_in);
        ByteReader r(bytes);
        loaded = CodeLayout::read(r);
        L = &loaded;
    } else {
        L = &cached_additive_layout(additive_params(load_params(o.params)));
    }
    const auto m = additive_decode(*L, x);
    if (!m) {
        std::printf("decode failed\n");
        return kBelowThreshold;
    }
    if (!o.out.empty()) write_bits(o.out, *m);
    std::printf("decoded %zu bits\n", m->size());
    return kOk;
}

int cmd_roundtrip(const Common& o) {
    const Config params = load_params(o.params);
    if (symbolic_preset(params)) return kOk;
    ExperimentConfig cfg;
    cfg.codec = o.codec;
    cfg.params = params;
    cfg.channel = load_channel(o.channel);
    cfg.trials = 1;
    cfg.master_seed = o.seed;
    const auto rec = run_trial(cfg, 0);
    if (o.codec == "space") {
        const auto& L = cached_space_layout(space_params(params));
        std::printf("N=%zu message=%zu rate=%.4f\n", L.N, L.message_bits(), L.rate());
    } else {
        const auto& L = cached_additive_layout(additive_params(params));
        std::printf("N=%zu message=%zu rate=%.4f eps_effective=%.4f\n", L.N, L.message_bits(), L.rate(),
                    L.eps_effective());
    }
    std::printf("channel %s flips=%zu decoded=%s list=%zu\n", cfg.channel.to_string().c_str(), rec.flips,
                rec.decoded_ok ? "yes" : "no", rec.list_size);
    return rec.decoded_ok ? kOk : kBelowThreshold;
}

int cmd_sim(const Common& o, const std::string& codec) {
    ExperimentConfig cfg;
    cfg.codec = codec;
    cfg.params = load_params(o.params);
    if (symbolic_preset(cfg.params)) return kOk;
    cfg.channel = load_channel(o.channel);
    cfg.trials = o.trials;
    cfg.master_seed = o.seed;
    cfg.out = o.out;
    cfg.threads = o.threads;
    const auto res = run_experiment(cfg);
    print_summary(codec.c_str(), res.summary);
    const auto& s = res.summary;
    std::printf("good_sampler=%zu control_ok=%zu payload_ok=%zu control_recovered=%zu max_list=%zu\n",
                s.good_sampler, s.control_ok, s.payload_ok, s.control_recovered, s.max_list_size);
    return check(s.success_rate, o.threshold);
}

int cmd_swap(const Common& o, double nu) {
    ExperimentConfig cfg;
    cfg.params = load_params(o.params);
    if (symbolic_preset(cfg.params)) return kOk;
    cfg.trials = o.trials;
    cfg.master_seed = o.seed;
    cfg.threads = o.threads;
    const auto r = swap_attack_experiment(cfg, nu);
    print_summary("swap", r.free);
    print_summary("swap-budget", r.budgeted);
    std::printf("error_rate free=%.4f budgeted=%.4f budget=%zu\n", 1 - r.free.success_rate, 1 - r.budgeted.success_rate,
                r.budget);
    return check(1 - r.free.success_rate, o.threshold);
}

int cmd_amd(int bits, int d) {
    const AmdParams p(GFContext(bits), d);
    const auto a = amd_audit_exhaustive(p);
    std::printf("GF(2^%d) d=%d cases=%llu worst=%.6f bound=%.6f\n", bits, d, static_cast<unsigned long long>(a.cases),
                a.worst_acceptance, a.bound);
    return a.worst_acceptance <= a.bound + 1e-12 ? kOk : kBelowThreshold;
}

int cmd_prg(std::size_t s, std::size_t m, std::size_t width, std::size_t randoms, std::uint64_t seed, double slack) {
    const NisanParams np(s, m);
    double worst = 0;
    std::string worst_name;
    for (const auto& prog : probe_family(m, width, randoms, seed)) {
        const auto a = nisan_audit_exact(np, prog);
        std::printf("%-24s prg=%.6f uniform=%.6f advantage=%.6f\n", prog.name().c_str(), a.prg_acceptance,
                    a.uniform_acceptance, a.advantage);
        if (a.advantage > worst) {
            worst = a.advantage;
            worst_name = prog.name();
        }
    }
    const double bound = np.error_bound() + slack;
    std::printf("max advantage %.6f (%s) bound %.6f\n", worst, worst_name.c_str(), bound);
    return worst <= bound ? kOk : kBelowThreshold;
}

int cmd_capacity(const std::string& ps, const std::string& epss, const std::string& out) {
    const auto rows = capacity_table(parse_list(ps), parse_list(epss));
    if (out.empty()) {
        write_capacity_csv(std::cout, rows);
    } else {
        std::ofstream f(out);
        if (!f) throw BadInput("cannot write " + out);
        write_capacity_csv(f, rows);
    }
    return kOk;
}

int cmd_certify(const Common& o) {
    const Config params = load_params(o.params);
    if (symbolic_preset(params)) return kOk;
    const auto& A = cached_additive_layout(additive_params(params));
    std::printf("additive layout: N=%zu blocks=%zu ell=%zu n'=%zu message=%zu rate=%.4f eps_effective=%.4f\n", A.N,
                A.n_blocks, A.ell, A.n_payload, A.message_bits(), A.rate(), A.eps_effective());
    std::printf("  SC: u=%zu b=%zu b_rnd=%zu radius=%zu L=%zu delta=%.4f d_min=%zu\n", A.sc.length(), A.sc.b(),
                A.sc.b_rnd(), A.sc.radius(), A.sc.list_bound(), A.sc.delta(), A.sc.inner().min_distance());
    std::printf("  REC: a=%zu b=%zu n_data=%zu k=%zu correctable=%zu inner_error=%.5f target=%.5f\n", A.rec.a(),
                A.rec.b_data(), A.rec.n_data(), A.rec.outer().k(), A.rec.correctable_blocks(), A.rec.inner_error(),
                A.rec.kappa() / 10);
    const auto& S = cached_space_layout(space_params(params));
    Rng rng(derive_seed(o.seed, 0, "certify"));
    const auto audit = lsc_audit_sampled(S.lsc, 256, rng);
    std::printf("space layout: N=%zu blocks=%zu ell=%zu message=%zu rate=%.4f R_RS=%.4f\n", S.N, S.n_blocks, S.ell,
                S.message_bits(), S.rate(), S.rs_rate());
    std::printf("  LSC: u=%zu k=%zu s=%zu radius=%zu L=%zu sampled max list=%zu over %llu centers\n", S.lsc.length(),
                S.lsc.k(), S.lsc.s(), S.lsc.radius(), S.lsc.list_bound(), audit.max_list,
                static_cast<unsigned long long>(audit.centers));
    std::printf("  REC: a=%zu b=%zu n_data=%zu k=%zu inner_error=%.5f\n", S.rec.a(), S.rec.b_data(), S.rec.n_data(),
                S.rec.outer().k(), S.rec.inner_error());
    return audit.max_list <= S.lsc.list_bound() ? kOk : kBelowThreshold;
}

void add_common(CLI::App* cmd, Common& o, bool sim) {
    cmd->add_option("--params", o.params, "key=value parameter file");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--codec", o.codec, "additive or space")->check(CLI::IsMember({"additive", "space"}));
    if (sim) {
        cmd->add_option("--channel", o.channel, "channel file or inline spec, e.g. 'type=random p=0.1'");
        cmd->add_option("--trials", o.trials, "number of trials");
        cmd->add_option("--out", o.out, "CSV output path");
        cmd->add_option("--threshold", o.threshold, "minimum rate for exit code 0");
        cmd->add_option("--threads", o.threads, "worker threads");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic codes for bounded channels"};
    app.require_subcommand(1);
    Common o;
    bool random_message = false;
    std::string layout_file;
    double nu = 0.05;
    int amd_bits = 4, amd_d = 1;
    std::size_t prg_s = 2, prg_m = 64, prg_width = 16, prg_random = 16;
    double prg_slack = 0.05;
    std::string cap_p = "0,0.01,0.05,0.1,0.11,0.2,0.3,0.5", cap_eps = "0.05,0.1,0.2";

    auto* enc = app.add_subcommand("encode", "encode a message file");
    add_common(enc, o, false);
    enc->add_option("--in", o.in, "message file (serialized bits)")->required();
    enc->add_option("--out", o.out, "codeword file")->required();
    enc->add_flag("--random", random_message, "write a random message to --in first");
    enc->add_option("--layout-out", layout_file, "also write the layout file");

    auto* dec = app.add_subcommand("decode", "decode a received word");
    add_common(dec, o, false);
    dec->add_option("--in", o.in, "received word file")->required();
    dec->add_option("--out", o.out, "decoded message file");
    dec->add_option("--layout", layout_file, "layout file written by encode");

    auto* rt = app.add_subcommand("roundtrip", "encode a random message, apply a channel, decode");
    add_common(rt, o, false);
    rt->add_option("--channel", o.channel, "channel file or inline spec");

    auto* asim = app.add_subcommand("additive-sim", "Monte-Carlo trials of the additive codec");
    add_common(asim, o, true);
    bool avg = false;
    asim->add_flag("--avg", avg, "use the average-error variant");
    auto* ssim = app.add_subcommand("space-sim", "Monte-Carlo trials of the space-bounded list codec");
    add_common(ssim, o, true);

    auto* swap = app.add_subcommand("swap-attack", "swapping adversary against the unique decoder");
    add_common(swap, o, true);
    swap->add_option("--nu", nu, "budget slack: at most N(1/4 + nu) flips");

    auto* amd = app.add_subcommand("amd-audit", "exhaustive AMD soundness audit");
    amd->add_option("--field-bits", amd_bits, "w for GF(2^w)")->check(CLI::Range(1, 8));
    amd->add_option("--d", amd_d, "AMD degree (odd)");

    auto* prg = app.add_subcommand("prg-audit", "exact Nisan generator audit against probe programs");
    prg->add_option("--block-bits", prg_s, "S'");
    prg->add_option("--length", prg_m, "output bits");
    prg->add_option("--width", prg_width, "program width");
    prg->add_option("--random-programs", prg_random, "random programs in the probe family");
    prg->add_option("--seed", o.seed, "probe family seed");
    prg->add_option("--slack", prg_slack, "allowed excess over 2^-S'");

    auto* cap = app.add_subcommand("capacity-table", "design rate against 1 - H(p)");
    cap->add_option("--p", cap_p, "comma-separated p grid");
    cap->add_option("--eps", cap_eps, "comma-separated eps grid");
    cap->add_option("--out", o.out, "CSV output path");

    auto* cert = app.add_subcommand("certify-codes", "build the desk layouts and print their audits");
    add_common(cert, o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadInput;
    }

    try {
        if (*enc) return cmd_encode(o, random_message, layout_file);
        if (*dec) return cmd_decode(o, layout_file);
        if (*rt) return cmd_roundtrip(o);
        if (*asim) return cmd_sim(o, avg ? "avg" : "additive");
        if (*ssim) return cmd_sim(o, "space");
        if (*swap) return cmd_swap(o, nu);
        if (*amd) return cmd_amd(amd_bits, amd_d);
        if (*prg) return cmd_prg(prg_s, prg_m, prg_width, prg_random, o.seed, prg_slack);
        if (*cap) return cmd_capacity(cap_p, cap_eps, o.out);
        if (*cert) return cmd_certify(o);
    } catch (const BadInput& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kBadInput;
    } catch (const FormatError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kBadInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kBadInput;
    }
    return kBadInput;
}
