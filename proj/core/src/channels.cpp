#include "stochcode/channels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "stochcode/errors.hpp"
#include "stochcode/rng.hpp"

namespace stochcode {

namespace {

std::vector<std::size_t> sample_distinct(std::size_t n, std::size_t k, Rng& rng) {
    require(k <= n, "sample_distinct: k > n");
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + static_cast<std::size_t>(rng.below(n - i))]);
    idx.resize(k);
    return idx;
}

std::vector<std::uint32_t> identity_table(std::size_t states) {
    std::vector<std::uint32_t> t(2 * states);
    for (std::uint32_t q = 0; q < states; ++q) {
        t[2 * q] = q << 1;
        t[2 * q + 1] = (q << 1) | 1u;
    }
    return t;
}

std::size_t budget_for(std::size_t n, double p) {
    return static_cast<std::size_t>(std::floor(p * static_cast<double>(n) + 1e-9));
}

} // namespace

ChannelOutcome apply_additive(const BitWord& e, const BitWord& c) {
    require(e.size() == c.size(), "apply_additive: length mismatch");
    return ChannelOutcome{c ^ e, e.weight(), false};
}

BitWord error_burst(std::size_t n, std::size_t weight, std::size_t offset) {
    require(weight <= n, "error_burst: weight > n");
    BitWord e(n);
    for (std::size_t i = 0; i < weight; ++i) e.set((offset + i) % n, true);
    return e;
}

BitWord error_random(std::size_t n, std::size_t weight, Rng& rng) {
    BitWord e(n);
    for (std::size_t i : sample_distinct(n, weight, rng)) e.set(i, true);
    return e;
}

BitWord error_bsc(std::size_t n, double p, Rng& rng) {
    BitWord e(n);
    for (std::size_t i = 0; i < n; ++i)
        if (rng.bernoulli(p)) e.set(i, true);
    return e;
}

BitWord error_block_killer(std::size_t n, std::size_t block, std::size_t per_block, std::size_t weight, Rng& rng) {
    require(block >= 1 && per_block >= 1 && per_block <= block, "error_block_killer: bad block parameters");
    const std::size_t blocks = n / block;
    const std::size_t full = std::min(blocks, weight / per_block);
    const std::size_t rest = full < blocks ? weight - full * per_block : 0;
    const auto chosen = sample_distinct(blocks, full + (rest > 0 ? 1 : 0), rng);
    BitWord e(n);
    for (std::size_t j = 0; j < chosen.size(); ++j) {
        const std::size_t count = j < full ? per_block : rest;
        for (std::size_t off : sample_distinct(block, count, rng)) e.set(chosen[j] * block + off, true);
    }
    return e;
}

// Online channels

OnlineBpChannel::OnlineBpChannel(std::string name, std::size_t states, std::size_t length, std::size_t lookahead)
    : name_(std::move(name)), states_(states), length_(length), lookahead_(lookahead) {
    require(states >= 1 && states <= (std::size_t{1} << 20), "OnlineBpChannel: bad state count");
    tables_.push_back(identity_table(states));
    layer_.assign(length + lookahead, 0);
}

std::size_t OnlineBpChannel::space_bits() const {
    return states_ <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(states_ - 1));
}

std::size_t OnlineBpChannel::add_table(std::vector<std::uint32_t> table) {
    require(table.size() == 2 * states_, "OnlineBpChannel: table size must be 2 * states");
    for (std::uint32_t v : table) require((v >> 1) < states_, "OnlineBpChannel: transition to unknown state");
    tables_.push_back(std::move(table));
    return tables_.size() - 1;
}

void OnlineBpChannel::assign(std::size_t position, std::size_t id) {
    require(position < layer_.size() && id < tables_.size(), "OnlineBpChannel: bad assignment");
    layer_[position] = static_cast<std::uint32_t>(id);
}

void OnlineBpChannel::assign_range(std::size_t from, std::size_t to, std::size_t id) {
    for (std::size_t i = from; i < to && i < layer_.size(); ++i) assign(i, id);
}

ChannelOutcome apply_bp(const OnlineBpChannel& ch, const BitWord& c) {
    require(c.size() == ch.length(), "apply_bp: codeword length != channel length");
    const std::size_t n = c.size(), t = ch.lookahead();
    ChannelOutcome out{BitWord(n), 0, false};
    std::uint32_t state = 0;
    for (std::size_t i = 0; i < n + t; ++i) {
        const bool bit = i < n ? c.get(i) : false;
        const std::uint32_t r = ch.step(i, state, bit);
        state = r >> 1;
        if (i >= t && (r & 1u)) out.received.set(i - t, true);
    }
    out.flips = out.received.distance(c);
    return out;
}

ChannelOutcome apply_bp(const BpAdversary& adv, const BitWord& c, Rng& rng) {
    ChannelOutcome out = apply_bp(adv.sample(rng), c);
    out.budget_exceeded = out.flips > adv.budget;
    return out;
}

OnlineBpChannel bp_prefix_flipper(std::size_t n, std::size_t budget, std::size_t stride) {
    require(stride >= 1, "bp_prefix_flipper: stride must be positive");
    OnlineBpChannel ch("prefix", 1, n);
    const std::size_t flip = ch.add_table({1, 0});
    for (std::size_t k = 0; k < budget && k * stride < n; ++k) ch.assign(k * stride, flip);
    return ch;
}

OnlineBpChannel bp_budget_greedy(std::size_t n, std::size_t budget) {
    OnlineBpChannel ch("greedy", 1, n);
    ch.assign_range(0, std::min(budget, n), ch.add_table({1, 0}));
    return ch;
}

OnlineBpChannel bp_pattern_trigger(std::size_t n, std::size_t budget, const BitWord& pattern) {
    const std::size_t k = pattern.size();
    require(k >= 1, "bp_pattern_trigger: empty pattern");
    const auto flipping = static_cast<std::uint32_t>(k), done = static_cast<std::uint32_t>(k + 1);
    OnlineBpChannel ch("pattern" + std::to_string(k), k + 2, n);
    if (budget == 0) return ch;

    std::vector<std::size_t> fail(k + 1, 0);
    for (std::size_t i = 1, j = 0; i < k; ++i) {
        while (j > 0 && pattern.get(i) != pattern.get(j)) j = fail[j];
        if (pattern.get(i) == pattern.get(j)) ++j;
        fail[i + 1] = j;
    }
    auto match_step = [&](std::size_t j, bool bit) {
        while (j > 0 && (j == k || pattern.get(j) != bit)) j = fail[j];
        if (pattern.get(j) == bit) ++j;
        return j;
    };
    std::vector<std::uint32_t> inside(2 * (k + 2)), boundary;
    for (std::size_t j = 0; j < k; ++j)
        for (int bit = 0; bit < 2; ++bit) {
            const std::size_t nj = match_step(j, bit == 1);
            const std::uint32_t next = nj == k ? flipping : static_cast<std::uint32_t>(nj);
            inside[2 * j + static_cast<std::size_t>(bit)] = (next << 1) | static_cast<std::uint32_t>(bit);
        }
    inside[2 * flipping] = (flipping << 1) | 1u;
    inside[2 * flipping + 1] = flipping << 1;
    inside[2 * done] = done << 1;
    inside[2 * done + 1] = (done << 1) | 1u;
    boundary = inside;
    boundary[2 * flipping] = (done << 1) | 1u;
    boundary[2 * flipping + 1] = done << 1;
    const std::size_t in_id = ch.add_table(std::move(inside));
    const std::size_t end_id = ch.add_table(std::move(boundary));
    for (std::size_t i = 0; i < n; ++i) ch.assign(i, (i + 1) % budget == 0 ? end_id : in_id);
    return ch;
}

OnlineBpChannel bp_position_set(std::size_t n, const std::vector<std::size_t>& positions, std::string name) {
    OnlineBpChannel ch(std::move(name), 1, n);
    const std::size_t flip = ch.add_table({1, 0});
    for (std::size_t i : positions) ch.assign(i, flip);
    return ch;
}

BitWord default_trigger_pattern(std::size_t bits) {
    require(bits >= 1 && bits <= 64, "default_trigger_pattern: 1..64 bits");
    return BitWord::from_uint(0x9e3779b97f4a7c15ull, bits);
}

std::vector<BpAdversary> shipped_bp_adversaries(std::size_t n, double p) {
    const std::size_t budget = budget_for(n, p);
    std::vector<BpAdversary> out;
    out.push_back({"prefix", budget, [n, budget](Rng&) { return bp_prefix_flipper(n, budget, 2); }});
    out.push_back({"greedy", budget, [n, budget](Rng&) { return bp_budget_greedy(n, budget); }});
    out.push_back({"pattern16", budget,
                   [n, budget](Rng&) { return bp_pattern_trigger(n, budget, default_trigger_pattern(16)); }});
    out.push_back({"pattern8", budget,
                   [n, budget](Rng&) { return bp_pattern_trigger(n, budget, default_trigger_pattern(8)); }});
    out.push_back({"random-bp", budget,
                   [n, budget](Rng& rng) { return bp_position_set(n, sample_distinct(n, budget, rng), "random-bp"); }});
    return out;
}

// Swapping

ChannelOutcome apply_swapping(const SwappingChannel& ch, const BitWord& c, Rng& rng) {
    require(ch.state.size() == c.size(), "apply_swapping: state length mismatch");
    ChannelOutcome out{c, 0, false};
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c.get(i) == ch.state.get(i)) continue;
        if (ch.budget && out.flips >= *ch.budget) break;
        if (rng.bit()) {
            out.received.flip(i);
            ++out.flips;
        }
    }
    return out;
}

std::vector<double> swapping_distribution(const BitWord& state, const BitWord& c) {
    require(state.size() == c.size() && c.size() <= 16, "swapping_distribution: n <= 16 and equal lengths");
    const std::size_t n = c.size();
    const auto cv = c.get_bits(0, n), sv = state.get_bits(0, n);
    const std::uint64_t diff = cv ^ sv;
    const double mass = std::exp2(-static_cast<double>(std::popcount(diff)));
    std::vector<double> dist(std::size_t{1} << n, 0.0);
    for (std::uint64_t y = 0; y < dist.size(); ++y)
        if (((y ^ cv) & ~diff) == 0) dist[y] = mass;
    return dist;
}

std::size_t swap_budget(std::size_t n, double nu) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(n) * (0.25 + nu) + 1e-9));
}

ChannelOutcome swap_main_attack(const std::function<BitWord(Rng&)>& codebook_sampler, const BitWord& c, Rng& rng,
                                std::optional<std::size_t> budget) {
    SwappingChannel ch{codebook_sampler(rng), budget};
    return apply_swapping(ch, c, rng);
}

// Config

ChannelSpec ChannelSpec::parse(std::string_view text) {
    ChannelSpec spec;
    std::string cleaned;
    bool comment = false;
    for (char ch : text) {
        if (ch == '#') comment = true;
        if (ch == '\n') comment = false;
        if (comment) continue;
        cleaned.push_back(ch == ';' || ch == ',' ? ' ' : ch);
    }
    std::istringstream in(cleaned);
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0) throw FormatError("channel spec: expected key=value, got '" + tok + "'");
        const std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
        if (key == "type")
            spec.type = value;
        else
            spec.params[key] = value;
    }
    const auto& types = channel_types();
    if (std::find(types.begin(), types.end(), spec.type) == types.end())
        throw FormatError("channel spec: unknown type '" + spec.type + "'");
    return spec;
}

std::string ChannelSpec::to_string() const {
    std::string s = "type=" + type;
    for (const auto& [k, v] : params) s += " " + k + "=" + v;
    return s;
}

double ChannelSpec::number(const std::string& key, double fallback) const {
    const auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
        std::size_t used = 0;
        const double v = std::stod(it->second, &used);
        if (used != it->second.size()) throw FormatError("");
        return v;
    } catch (const std::exception&) {
        throw FormatError("channel spec: '" + key + "' is not a number");
    }
}

std::string ChannelSpec::text(const std::string& key, const std::string& fallback) const {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

const std::vector<std::string>& channel_types() {
    static const std::vector<std::string> types{"none",    "burst",    "random",    "bsc",   "block-killer",
                                                "prefix",  "greedy",   "pattern16", "pattern8", "random-bp",
                                                "swap",    "swap-budget"};
    return types;
}

ChannelOutcome run_channel(const ChannelSpec& spec, const BitWord& c, Rng& rng, const ChannelContext& ctx) {
    const std::size_t n = c.size();
    const double p = spec.number("p", 0.1);
    const std::size_t w = budget_for(n, p);
    auto additive = [&](const BitWord& e) {
        ChannelOutcome o = apply_additive(e, c);
        o.budget_exceeded = o.flips > w;
        return o;
    };
    const std::string& t = spec.type;
    if (t == "none") return ChannelOutcome{c, 0, false};
    if (t == "burst") {
        const std::size_t offset = spec.text("offset", "0") == "random"
                                       ? static_cast<std::size_t>(rng.below(n - std::min(w, n) + 1))
                                       : static_cast<std::size_t>(spec.number("offset", 0));
        return additive(error_burst(n, w, offset));
    }
    if (t == "random") return additive(error_random(n, w, rng));
    if (t == "bsc") return additive(error_bsc(n, p, rng));
    if (t == "block-killer") {
        const auto block = static_cast<std::size_t>(spec.number("block", static_cast<double>(ctx.block)));
        const auto per = static_cast<std::size_t>(spec.number("per_block", static_cast<double>(ctx.block_radius + 1)));
        require(block > 0, "block-killer needs a block size");
        return additive(error_block_killer(n, block, per, w, rng));
    }
    if (t == "prefix") {
        const auto stride = static_cast<std::size_t>(spec.number("stride", 2));
        ChannelOutcome o = apply_bp(bp_prefix_flipper(n, w, stride), c);
        o.budget_exceeded = o.flips > w;
        return o;
    }
    if (t == "greedy" || t == "pattern16" || t == "pattern8" || t == "random-bp") {
        for (const auto& adv : shipped_bp_adversaries(n, p))
            if (adv.name == t) return apply_bp(adv, c, rng);
    }
    if (t == "swap" || t == "swap-budget") {
        require(static_cast<bool>(ctx.codebook_sampler), "swapping channel needs a codebook sampler");
        std::optional<std::size_t> budget;
        if (t == "swap-budget") budget = swap_budget(n, spec.number("nu", 0.05));
        ChannelOutcome o = swap_main_attack(ctx.codebook_sampler, c, rng, budget);
        o.budget_exceeded = budget && o.flips > *budget;
        return o;
    }
    throw BadInput("run_channel: unknown channel type '" + t + "'");
}

} // namespace stochcode
