#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stochcode/channels.hpp"
#include "stochcode/codec_additive.hpp"
#include "stochcode/codec_space.hpp"
#include "stochcode/config.hpp"

namespace stochcode {

// Parameter keys (all optional; defaults are the desk layouts):
//   N p eps b_ctrl ell ctrl_field_bits ctrl_d_max seed_len perm_t offset_t
//   sc.u sc.radius sc.field_bits sc.amd_d sc.seed rec.eps rec.a rec.mc_trials seed
//   space: S nisan_block_bits threshold list_cap lsc.k lsc.s lsc.radius lsc.seed
AdditiveParams additive_params(const Config& c);
SpaceParams space_params(const Config& c);

// Layouts are built once per distinct parameter set and shared.
const CodeLayout& cached_additive_layout(const AdditiveParams& p);
const SpaceLayout& cached_space_layout(const SpaceParams& p);

// The construction's formulas at asymptotic settings, for documentation only.
struct AsymptoticPreset {
    double N = 0;
    double p = 0;
    double eps = 0;
    double lambda = 0;
    double b_ctrl = 0;  // lambda log2 N
    double ell = 0;     // 24 eps N / log2 N
    double seed_len = 0; // eps^2 N
    double n_blocks = 0;
    double target_rate = 0; // 1 - H(p) - eps
};
AsymptoticPreset asymptotic_preset(double N, double p, double eps, double lambda);

struct ExperimentConfig {
    std::string codec = "additive"; // additive | avg | space
    Config params;
    ChannelSpec channel;
    std::size_t trials = 0;
    std::uint64_t master_seed = 1;
    std::string out;          // CSV path; empty for none
    std::size_t threads = 1;
};

struct TrialRecord {
    std::size_t trial = 0;
    std::size_t flips = 0;
    bool budget_exceeded = false;
    bool decoded_ok = false;       // message recovered (space: in the output list)
    bool control_recovered = false;
    bool good_sampler = false;
    std::size_t list_size = 0;
    std::size_t good_control = 0;
    std::size_t correct_control = 0;
    std::size_t wrong_control = 0;
    std::size_t payload_accepted = 0;
    long rs_margin = 0;
    bool control_ok = false;
    bool payload_ok = false;
    std::size_t vote_margin = 0;
    std::size_t control_candidates = 0;
    std::size_t control_list_bound = 0;

    bool operator==(const TrialRecord&) const = default;
};

struct Interval {
    double low = 0;
    double high = 0;
};
// Wilson score interval for k successes in n trials at normal quantile z.
Interval wilson_interval(std::size_t k, std::size_t n, double z = 1.959963984540054);

struct ExperimentSummary {
    std::size_t trials = 0;
    std::size_t successes = 0;
    double success_rate = 0;
    Interval ci;
    double mean_flips = 0;
    double sd_flips = 0;
    std::size_t max_flips = 0;
    std::size_t budget_exceeded = 0;
    std::size_t good_sampler = 0;
    std::size_t control_ok = 0;
    std::size_t payload_ok = 0;
    std::size_t control_recovered = 0;
    std::size_t max_list_size = 0;
    std::size_t list_bound_violations = 0;
    long min_rs_margin = 0;
    std::size_t vote_margin_ok = 0; // successes with vote margin >= eps ell / 4
};

ExperimentSummary summarize(const std::vector<TrialRecord>& records, double vote_margin_target = 0);

inline constexpr const char* kCsvVersion = "# stochcode-trials v1";
void write_csv(std::ostream& out, const std::vector<TrialRecord>& records);
std::vector<TrialRecord> read_csv(std::istream& in);

struct ExperimentResult {
    std::vector<TrialRecord> records;
    ExperimentSummary summary;
};

// Trial i draws everything from the stream derive_seed(master_seed, i, "trial").
TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t index);
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct SwapAttackResult {
    ExperimentSummary free;
    ExperimentSummary budgeted;
    std::size_t budget = 0;
    double nu = 0;
};

// W^main and the budgeted variant against the unique decoder of the additive codec.
SwapAttackResult swap_attack_experiment(const ExperimentConfig& cfg, double nu);

struct CapacityRow {
    double p = 0;
    double eps = 0;
    double shannon = 0;      // 1 - H(p)
    double target = 0;       // 1 - H(p) - eps
    double design_rate = 0;  // payload share x outer rate x inner rate at the smallest REC block
};
std::vector<CapacityRow> capacity_table(const std::vector<double>& ps, const std::vector<double>& epss,
                                        const AdditiveParams& base = {});
void write_capacity_csv(std::ostream& out, const std::vector<CapacityRow>& rows);

} // namespace stochcode
