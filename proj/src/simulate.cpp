#include "ccap/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ccap/errors.hpp"
#include "ccap/rng.hpp"

namespace ccap {

namespace {

void check_config(const ChannelFamily& fam, const SimConfig& cfg) {
    if (cfg.k < 1 || cfg.k > kMaxMessageBits)
        throw ResourceLimit("message bits must lie in [1, " + std::to_string(kMaxMessageBits) + "]");
    if (!(cfg.delta > 0.0 && cfg.delta <= 1.0))
        throw ParameterOutOfRange("delta must lie in (0, 1]");
    if (cfg.schedule.size() != fam.size() || cfg.profile.cumulative.size() != fam.size())
        throw LengthMismatch("schedule/profile and family sizes differ");
    if (cfg.true_channel >= fam.size())
        throw ParameterOutOfRange("true channel index out of range");
    for (double t : cfg.profile.cumulative)
        if (!std::isfinite(t)) throw ResourceLimit("profile has infinite decode times");
}

// Stretched phase boundaries (1+delta) T_j in normalized units.
std::vector<double> stretched_boundaries(const SimConfig& cfg) {
    std::vector<double> b;
    for (double t : cfg.profile.cumulative) b.push_back((1.0 + cfg.delta) * t);
    return b;
}

int phase_of_coordinate(const std::vector<double>& bounds, int t, int k) {
    const double x = double(t) / double(k);
    for (std::size_t j = 0; j < bounds.size(); ++j)
        if (x < bounds[j]) return int(j);
    return -1;  // padding
}

}  // namespace

Codebook generate_codebook_seeded(const ChannelFamily& fam, const SimConfig& cfg,
                                  std::uint64_t seed) {
    check_config(fam, cfg);
    const auto bounds = stretched_boundaries(cfg);
    const double span = bounds.back() * double(cfg.k);
    const std::size_t messages = std::size_t(1) << cfg.k;
    if (!std::isfinite(span) || double(messages) * span > kSymbolBudget)
        throw ResourceLimit("codebook of " + std::to_string(messages) + " messages over " +
                            std::to_string(span) + " symbols exceeds the budget");
    const int horizon = int(std::ceil(span - 1e-12));

    Codebook cb;
    cb.k = cfg.k;
    cb.horizon = horizon;
    cb.phase_of_t.resize(horizon);
    for (int t = 1; t <= horizon; ++t)
        cb.phase_of_t[t - 1] = phase_of_coordinate(bounds, t, cfg.k);

    cb.symbols.resize(messages * std::size_t(horizon));
    Rng rng(seed);
    for (std::size_t m = 0; m < messages; ++m) {
        for (int t = 1; t <= horizon; ++t) {
            const int phase = cb.phase_of_t[t - 1];
            const std::uint8_t x =
                phase < 0 ? 0 : std::uint8_t(rng.categorical(cfg.schedule[phase]));
            cb.symbols[m * std::size_t(horizon) + std::size_t(t - 1)] = x;
        }
    }
    return cb;
}

Codebook generate_codebook(const ChannelFamily& fam, const SimConfig& cfg) {
    return generate_codebook_seeded(fam, cfg, cfg.seed);
}

InfoDensityTracker::InfoDensityTracker(const ChannelFamily& fam, const Schedule& schedule,
                                       const Codebook& codebook)
    : codebook_(codebook),
      num_states_(fam.size()),
      num_messages_(codebook.num_messages()),
      sums_(num_messages_ * num_states_, 0.0),
      rejected_(num_states_, false) {
    // Precompute density tables per phase (index |S| holds the padding phase,
    // a point mass on symbol 0).
    const std::size_t phases = schedule.size() + 1;
    density_.resize(phases);
    marginal_zero_.resize(phases);
    for (std::size_t j = 0; j < phases; ++j) {
        InputDist pi;
        if (j < schedule.size()) {
            pi = schedule[j];
        } else {
            pi.assign(fam.num_inputs(), 0.0);
            pi[0] = 1.0;
        }
        density_[j].resize(num_states_);
        marginal_zero_[j].resize(num_states_);
        for (std::size_t s = 0; s < num_states_; ++s) {
            const Channel& ch = fam.channels[s];
            const auto q = output_marginal(ch, pi);
            auto& tab = density_[j][s];
            tab.assign(ch.num_inputs * ch.num_outputs, kNegSentinel);
            for (std::size_t x = 0; x < ch.num_inputs; ++x)
                for (std::size_t y = 0; y < ch.num_outputs; ++y)
                    tab[x * ch.num_outputs + y] = info_density_with_marginal(ch, q, x, y);
            auto& zero = marginal_zero_[j][s];
            zero.assign(ch.num_outputs, 0);
            for (std::size_t y = 0; y < ch.num_outputs; ++y) zero[y] = (q[y] <= 0.0) ? 1 : 0;
        }
    }
}

void InfoDensityTracker::advance(int t, std::uint8_t y) {
    const int raw_phase = codebook_.phase_of_t[t - 1];
    const std::size_t phase = raw_phase < 0 ? density_.size() - 1 : std::size_t(raw_phase);

    for (std::size_t s = 0; s < num_states_; ++s) {
        if (rejected_[s]) continue;
        const std::size_t ny = marginal_zero_[phase][s].size();
        if (y >= ny || marginal_zero_[phase][s][y]) {
            // Observation impossible under this hypothesis: eliminate it.
            rejected_[s] = true;
            for (std::size_t m = 0; m < num_messages_; ++m) sums_[m * num_states_ + s] = kNegSentinel;
            continue;
        }
        const auto& tab = density_[phase][s];
        for (std::size_t m = 0; m < num_messages_; ++m) {
            const std::uint8_t x = codebook_.symbol(m, t);
            sums_[m * num_states_ + s] += tab[std::size_t(x) * ny + y];
        }
    }
}

long InfoDensityTracker::first_crossing(double threshold_bits) const {
    for (std::size_t m = 0; m < num_messages_; ++m) {
        for (std::size_t s = 0; s < num_states_; ++s) {
            if (rejected_[s]) continue;
            if (sums_[m * num_states_ + s] >= threshold_bits) return long(m);
        }
    }
    return -1;
}

TrialResult run_trial(const ChannelFamily& fam, const SimConfig& cfg, const Codebook& codebook,
                      std::uint64_t trial_seed) {
    check_config(fam, cfg);
    const Channel& truth = fam.channels[cfg.true_channel];
    const double threshold = double(cfg.k) * (1.0 + cfg.delta / 2.0);

    Rng rng(trial_seed);
    const std::size_t messages = codebook.num_messages();
    const std::size_t sent = rng.uniform_int(messages);

    InfoDensityTracker tracker(fam, cfg.schedule, codebook);

    TrialResult out;
    out.true_message = sent;
    for (int t = 1; t <= codebook.horizon; ++t) {
        const std::uint8_t x = codebook.symbol(sent, t);
        const std::uint8_t y = std::uint8_t(rng.categorical(truth.matrix[x]));
        tracker.advance(t, y);
        const long m = tracker.first_crossing(threshold);
        if (m >= 0) {
            out.stop_time = t;
            out.decoded = std::size_t(m);
            return out;
        }
    }
    out.stop_time = codebook.horizon;
    out.decoded = 0;  // arbitrary decode when the horizon passes silently
    return out;
}

SimReport estimate(const ChannelFamily& fam, const SimConfig& cfg) {
    check_config(fam, cfg);
    if (cfg.trials < 1) throw ParameterOutOfRange("trials must be positive");

    SimReport rep;
    rep.k = cfg.k;
    rep.delta = cfg.delta;
    rep.seed = cfg.seed;
    rep.trials_per_channel = cfg.trials;

    double tau_sum = 0.0;
    int errors = 0;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        const Codebook cb =
            generate_codebook_seeded(fam, cfg, derive_seed(cfg.seed, std::uint64_t(trial), 0));
        const TrialResult tr =
            run_trial(fam, cfg, cb, derive_seed(cfg.seed, std::uint64_t(trial), 1));
        tau_sum += tr.stop_time;
        if (!tr.correct()) ++errors;
        rep.rows.push_back({trial, cfg.true_channel, tr.stop_time, tr.correct()});
    }

    ChannelStats st;
    st.channel = cfg.true_channel;
    st.trials = cfg.trials;
    st.tau_hat = tau_sum / double(cfg.trials);
    st.error_rate = double(errors) / double(cfg.trials);
    st.empirical_cr = double(cfg.k) * fam.t_star[cfg.true_channel] / st.tau_hat;
    rep.stats.push_back(st);
    return rep;
}

SimReport estimate_all_channels(const ChannelFamily& fam, SimConfig cfg) {
    SimReport merged;
    merged.k = cfg.k;
    merged.delta = cfg.delta;
    merged.seed = cfg.seed;
    merged.trials_per_channel = cfg.trials;
    for (std::size_t s = 0; s < fam.size(); ++s) {
        cfg.true_channel = s;
        cfg.seed = derive_seed(merged.seed, 0xC0DE, s);
        SimReport one = estimate(fam, cfg);
        merged.rows.insert(merged.rows.end(), one.rows.begin(), one.rows.end());
        merged.stats.push_back(one.stats.front());
    }
    return merged;
}

}  // namespace ccap
