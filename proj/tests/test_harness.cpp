#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "stochcode/entropy.hpp"
#include "stochcode/errors.hpp"
#include "stochcode/harness.hpp"

using namespace stochcode;

namespace {

std::filesystem::path temp_dir() {
    auto d = std::filesystem::temp_directory_path() / "stochcode_harness_test";
    std::filesystem::create_directories(d);
    return d;
}

void write(const std::filesystem::path& p, const std::string& text) {
    std::ofstream(p) << text;
}

ExperimentConfig small_additive(std::size_t trials, const std::string& channel) {
    ExperimentConfig cfg;
    cfg.codec = "additive";
    cfg.channel = ChannelSpec::parse(channel);
    cfg.trials = trials;
    cfg.master_seed = 42;
    return cfg;
}

} // namespace

TEST(Config, ParseOverridesAndComments) {
    const auto c = Config::parse("N = 4096  # block count follows\n\np=0.1\np = 0.2\nseed = 0x1f\n");
    EXPECT_EQ(c.integer("N", 0), 4096u);
    EXPECT_DOUBLE_EQ(c.number("p", 0), 0.2);
    EXPECT_EQ(c.integer("seed", 0), 31u);
    EXPECT_EQ(c.text("missing", "x"), "x");
    EXPECT_THROW(Config::parse("just words"), FormatError);
    EXPECT_THROW(Config::parse(" = 3"), FormatError);
    EXPECT_THROW(Config::parse("p = abc").number("p", 0), FormatError);
    EXPECT_THROW(Config::parse("N = -3").integer("N", 0), FormatError);
}

TEST(Config, IncludesResolveRelativeToFile) {
    const auto dir = temp_dir();
    std::filesystem::create_directories(dir / "sub");
    write(dir / "sub" / "base.conf", "p = 0.05\nell = 48\n");
    write(dir / "top.conf", "include = sub/base.conf\nell = 40\n");
    const auto c = Config::load((dir / "top.conf").string());
    EXPECT_DOUBLE_EQ(c.number("p", 0), 0.05);
    EXPECT_EQ(c.integer("ell", 0), 40u);
    write(dir / "loop.conf", "include = loop.conf\n");
    EXPECT_THROW(Config::load((dir / "loop.conf").string()), FormatError);
    EXPECT_THROW(Config::load((dir / "absent.conf").string()), BadInput);
}

TEST(Config, ParamsFromConfig) {
    const auto c = Config::parse("p = 0.05\nell = 48\nsc.radius = 20\nrec.eps = 0.4\nlist_cap = 4\n");
    const auto a = additive_params(c);
    EXPECT_DOUBLE_EQ(a.p, 0.05);
    EXPECT_EQ(a.ell, 48u);
    EXPECT_EQ(a.sc.radius, 20u);
    EXPECT_DOUBLE_EQ(a.rec_eps, 0.4);
    EXPECT_EQ(a.N, AdditiveParams{}.N);
    EXPECT_EQ(space_params(c).list_cap, 4u);
}

TEST(Stats, WilsonReferenceValues) {
    const auto a = wilson_interval(8, 10);
    EXPECT_NEAR(a.low, 0.4902, 1e-4);
    EXPECT_NEAR(a.high, 0.9433, 1e-4);
    const auto b = wilson_interval(0, 20);
    EXPECT_DOUBLE_EQ(b.low, 0.0);
    EXPECT_NEAR(b.high, 0.1611, 1e-4);
    const auto e = wilson_interval(0, 0);
    EXPECT_EQ(e.low, 0.0);
    EXPECT_EQ(e.high, 1.0);
}

TEST(Capacity, ShannonColumn) {
    const auto rows = capacity_table({0.0, 0.11, 0.5}, {0.1});
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_DOUBLE_EQ(rows[0].shannon, 1.0);
    EXPECT_NEAR(rows[1].shannon, 0.5, 1e-3);
    EXPECT_DOUBLE_EQ(rows[2].shannon, 0.0);
    EXPECT_DOUBLE_EQ(rows[2].design_rate, 0.0);
    for (const auto& r : rows) {
        EXPECT_NEAR(r.target, r.shannon - 0.1, 1e-12);
        EXPECT_LE(r.design_rate, r.shannon);
    }
    std::ostringstream out;
    write_capacity_csv(out, rows);
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "p,eps,shannon,target,design_rate");
}

TEST(Capacity, AsymptoticPresetFormulas) {
    const auto a = asymptotic_preset(1 << 20, 0.1, 0.1, 4);
    EXPECT_DOUBLE_EQ(a.b_ctrl, 80);
    EXPECT_NEAR(a.ell, 24 * 0.1 * (1 << 20) / 20.0, 1e-6);
    EXPECT_NEAR(a.seed_len, 0.01 * (1 << 20), 1e-6);
    EXPECT_NEAR(a.target_rate, 1 - binary_entropy(0.1) - 0.1, 1e-12);
}

TEST(Csv, ZeroTrialsIsHeaderOnly) {
    auto cfg = small_additive(0, "type=none");
    const auto path = temp_dir() / "empty.csv";
    cfg.out = path.string();
    const auto res = run_experiment(cfg);
    EXPECT_TRUE(res.records.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
    EXPECT_EQ(text.substr(0, text.find('\n')), kCsvVersion);
}

TEST(Csv, RoundTrip) {
    std::vector<TrialRecord> recs(3);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        recs[i].trial = i;
        recs[i].flips = 10 * i;
        recs[i].decoded_ok = i != 1;
        recs[i].rs_margin = -3 + static_cast<long>(i);
        recs[i].control_list_bound = 4;
    }
    std::stringstream ss;
    write_csv(ss, recs);
    EXPECT_EQ(read_csv(ss), recs);
    std::stringstream bad("# other v9\n");
    EXPECT_THROW(read_csv(bad), FormatError);
}

TEST(Experiment, DeterministicAndOrderIndependent) {
    const auto dir = temp_dir();
    auto cfg = small_additive(4, "type=random p=0.1");
    cfg.out = (dir / "a.csv").string();
    const auto a = run_experiment(cfg);
    cfg.out = (dir / "b.csv").string();
    cfg.threads = 2;
    const auto b = run_experiment(cfg);
    EXPECT_EQ(a.records, b.records);
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
    EXPECT_EQ(run_trial(cfg, 2), a.records[2]);
    EXPECT_EQ(a.summary.successes, 4u);
    for (const auto& r : a.records) {
        EXPECT_EQ(r.flips, 3276u);
        if (r.decoded_ok) EXPECT_TRUE(r.control_recovered);
    }
}

TEST(Experiment, SpaceAndAverageCodecs) {
    ExperimentConfig cfg;
    cfg.codec = "space";
    cfg.channel = ChannelSpec::parse("type=greedy p=0.1");
    cfg.trials = 3;
    const auto s = run_experiment(cfg);
    EXPECT_EQ(s.summary.successes, 3u);
    EXPECT_LE(s.summary.max_list_size, 8u);
    EXPECT_EQ(s.summary.list_bound_violations, 0u);
    cfg.codec = "avg";
    cfg.channel = ChannelSpec::parse("type=burst p=0.1 offset=random");
    const auto v = run_experiment(cfg);
    EXPECT_EQ(v.summary.successes, 3u);
    EXPECT_EQ(v.summary.vote_margin_ok, 3u);
}

TEST(Experiment, ErrorsNameTheTrial) {
    auto cfg = small_additive(2, "type=block-killer block=0");
    try {
        run_experiment(cfg);
        FAIL() << "expected an exception";
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("trial 0"), std::string::npos);
    }
    cfg.codec = "bogus";
    EXPECT_THROW(run_experiment(cfg), BadInput);
}

TEST(Experiment, SwapAttackRespectsBudget) {
    auto cfg = small_additive(6, "type=none");
    const auto r = swap_attack_experiment(cfg, 0.05);
    EXPECT_EQ(r.budget, static_cast<std::size_t>(std::floor(32768 * 0.3)));
    EXPECT_LE(r.budgeted.max_flips, r.budget);
    EXPECT_EQ(r.free.trials, 6u);
    EXPECT_LE(r.free.successes, 6u);
}
