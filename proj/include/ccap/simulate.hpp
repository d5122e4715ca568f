#pragma once
#include <cstdint>
#include <vector>

#include "ccap/profile.hpp"

namespace ccap {

// Decoder work is O(2^k |S|) per step, so message length and total symbol
// count are capped.
inline constexpr int kMaxMessageBits = 16;
inline constexpr double kSymbolBudget = 1e8;

struct SimConfig {
    int k = 8;                 // message bits; 2^k codewords
    double delta = 0.25;       // stretch/threshold margin, in (0, 1]
    int trials = 100;
    std::uint64_t seed = 1;
    Schedule schedule;         // per-phase input distributions
    DecodingProfile profile;   // supplies T_1..T_|S| for the phase boundaries
    std::size_t true_channel = 0;
};

// Random codebook with phase-switched per-coordinate distributions:
// coordinate t (1-based) is drawn from schedule phase j when
// t/k lies in [(1+delta) T_{j-1}, (1+delta) T_j); boundary coordinates belong
// to the later phase, and coordinates at or past (1+delta) T_|S| are fixed to
// symbol 0 up to the horizon ceil((1+delta) T_|S| k).
struct Codebook {
    int k = 0;
    int horizon = 0;
    std::vector<int> phase_of_t;       // per coordinate: phase index, or -1 for padding
    std::vector<std::uint8_t> symbols; // 2^k rows of `horizon` symbols

    std::uint8_t symbol(std::size_t message, int t /*1-based*/) const {
        return symbols[message * std::size_t(horizon) + std::size_t(t - 1)];
    }
    std::size_t num_messages() const { return symbols.empty() ? 0 : symbols.size() / horizon; }
};

Codebook generate_codebook(const ChannelFamily& fam, const SimConfig& cfg);
Codebook generate_codebook_seeded(const ChannelFamily& fam, const SimConfig& cfg,
                                  std::uint64_t seed);

// Running per-(message, hypothesis) information-density sums
// i_s(x^t; y^t) = sum_i log2(W_s(y_i|x_i) / q_{i,s}(y_i)).
//
// A hypothesis is rejected outright (sticky, all its sums forced to the
// negative sentinel) once an observed symbol has zero marginal probability
// under it, including symbols outside its output alphabet. A message whose
// own transition probability vanishes just picks up the sentinel in its sum.
class InfoDensityTracker {
  public:
    InfoDensityTracker(const ChannelFamily& fam, const Schedule& schedule,
                       const Codebook& codebook);

    // Feeds the observation at coordinate t (must advance t = 1, 2, ...).
    void advance(int t, std::uint8_t y);

    double sum(std::size_t message, std::size_t hypothesis) const {
        return sums_[message * num_states_ + hypothesis];
    }
    bool rejected(std::size_t hypothesis) const { return rejected_[hypothesis]; }

    // Lowest message index whose sum under some live hypothesis reaches the
    // threshold, or -1.
    long first_crossing(double threshold_bits) const;

  private:
    const Codebook& codebook_;
    std::size_t num_states_;
    std::size_t num_messages_;
    std::vector<double> sums_;                     // message-major
    std::vector<bool> rejected_;
    // per phase (plus padding slot), per state: density[x][y] and q(y)==0 flags
    std::vector<std::vector<std::vector<double>>> density_;
    std::vector<std::vector<std::vector<char>>> marginal_zero_;
};

struct TrialResult {
    int stop_time = 0;
    std::size_t decoded = 0;
    std::size_t true_message = 0;
    bool correct() const { return decoded == true_message; }
};

// One rateless transmission over the true channel: draws a uniform message,
// streams its codeword, stops at the first coordinate where any
// (message, hypothesis) density reaches k(1 + delta/2) bits — lowest message
// index on ties — and decodes message 0 if the horizon passes silently.
TrialResult run_trial(const ChannelFamily& fam, const SimConfig& cfg, const Codebook& codebook,
                      std::uint64_t trial_seed);

struct TrialRow {
    int trial = 0;
    std::size_t channel = 0;
    int stop_time = 0;
    bool correct = false;
};

struct ChannelStats {
    std::size_t channel = 0;
    int trials = 0;
    double tau_hat = 0.0;        // mean stopping time, channel uses
    double error_rate = 0.0;
    double empirical_cr = 0.0;   // k T*_s / tau_hat
};

struct SimReport {
    int k = 0;
    double delta = 0.0;
    std::uint64_t seed = 0;
    int trials_per_channel = 0;
    std::vector<TrialRow> rows;
    std::vector<ChannelStats> stats;
};

// Monte Carlo estimate for cfg.true_channel with a fresh codebook per trial
// (random-coding ensemble average). Deterministic under cfg.seed.
SimReport estimate(const ChannelFamily& fam, const SimConfig& cfg);

// Convenience: run estimate once per channel state and merge.
SimReport estimate_all_channels(const ChannelFamily& fam, SimConfig cfg);

}  // namespace ccap
