#pragma once
#include <cstddef>
#include <vector>

#include "ccap/family.hpp"

namespace ccap {

// Mutual informations below this floor cannot finish decoding a channel:
// the corresponding increment is +inf, the profile's cr is 0 and its regret
// is max_s C_s.
inline constexpr double kMiFloor = 1e-12;

// Ordered list of per-phase input distributions, one per channel state.
using Schedule = std::vector<InputDist>;

// Decode order: a 0-based permutation of the family's states.
using Ordering = std::vector<std::size_t>;

// Normalized decode times and competitive metrics of one schedule under one
// decode order. increments/cumulative may contain +inf when a phase cannot
// finish its channel.
struct DecodingProfile {
    Ordering ordering;                    // state decoded at position i
    std::vector<double> increments;       // delta_i, normalized time units
    std::vector<double> cumulative;       // T_i = sum_{j<=i} delta_j
    std::vector<double> per_state_cr;     // T*_{s_i} / T_i
    std::vector<double> per_state_regret; // 1/T*_{s_i} - 1/T_i
    double cr = 0.0;                      // min_i per_state_cr, clamped to [0,1]
    double regret = 0.0;                  // max_i per_state_regret (max_s C_s if degenerate)

    // Smallest residual seen before the positive-part clamp; greedy selection
    // keeps this above -1e-12.
    double min_pre_clamp_numerator = 0.0;
};

// Increments per delta_i = {1 - sum_{j<i} delta_j I_{s_i}(X_j)}_+ / I_{s_i}(X_i),
// evaluated in the given order. Throws LengthMismatch on bad sizes or a
// non-permutation ordering.
DecodingProfile evaluate_with_ordering(const ChannelFamily& fam, const Schedule& schedule,
                                       const Ordering& ordering);

// Greedy decode order: at each step the not-yet-decoded state with the
// smallest residual decode time is taken next; exact ties go to the lowest
// state index. Equals evaluate_with_ordering on the order it selects.
DecodingProfile greedy_profile(const ChannelFamily& fam, const Schedule& schedule);

// Two-channel closed forms evaluated at a first-phase distribution p, with the
// second phase implicitly the capacity-achieving distribution of the channel
// decoded second.
struct TwoChannelValue {
    double value = 0.0;
    std::size_t first_state = 0;  // the channel that decodes first at p
};

TwoChannelValue two_channel_cr(const ChannelFamily& fam, const InputDist& p);
TwoChannelValue two_channel_regret(const ChannelFamily& fam, const InputDist& p);

// Phase plan concatenating fixed-blocklength codes so state l decodes after
// exactly k/R_l channel uses. Rates are sorted descending internally; `order`
// maps phase position to the original state index. If some phase length is
// not an integer it is rounded up and `rounded` is set; decode_times always
// hold the exact k/R values.
struct ConcatSchedule {
    std::vector<std::size_t> order;
    std::vector<double> phase_lengths;
    std::vector<double> decode_times;
    bool rounded = false;
};

ConcatSchedule concat_schedule(const std::vector<double>& rates, double k);

// Objective helpers shared by the optimizers. Weighted variants take one
// strictly positive weight per state.
double profile_cr_value(const DecodingProfile& prof);
double profile_regret_value(const DecodingProfile& prof);
double weighted_cr_value(const ChannelFamily& fam, const DecodingProfile& prof,
                         const std::vector<double>& w);
double weighted_regret_value(const ChannelFamily& fam, const DecodingProfile& prof,
                             const std::vector<double>& r);

}  // namespace ccap
