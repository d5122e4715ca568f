#include "ccap/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ccap/errors.hpp"

namespace ccap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_schedule(const ChannelFamily& fam, const Schedule& schedule) {
    if (schedule.size() != fam.size())
        throw LengthMismatch("schedule has " + std::to_string(schedule.size()) +
                             " phases, family has " + std::to_string(fam.size()));
    for (const auto& p : schedule)
        if (p.size() != fam.num_inputs())
            throw LengthMismatch("schedule distribution dimension mismatch");
}

// I_s(X_j;Y) for every state s and phase j.
std::vector<std::vector<double>> phase_rates(const ChannelFamily& fam, const Schedule& schedule) {
    std::vector<std::vector<double>> mi(fam.size(), std::vector<double>(schedule.size()));
    for (std::size_t s = 0; s < fam.size(); ++s)
        for (std::size_t j = 0; j < schedule.size(); ++j)
            mi[s][j] = mutual_information(fam.channels[s], schedule[j]);
    return mi;
}

// inf * 0 = 0 convention: an endless phase that feeds a channel no
// information contributes nothing to its residual. Rates below the floor
// count as zero, matching the increment rule.
double safe_mul(double delta, double rate) {
    if (rate < kMiFloor) return 0.0;
    return delta * rate;
}

void finalize(const ChannelFamily& fam, DecodingProfile& prof) {
    const std::size_t n = prof.ordering.size();
    prof.per_state_cr.resize(n);
    prof.per_state_regret.resize(n);
    bool degenerate = false;
    double cr = kInf;
    double regret = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t s = prof.ordering[i];
        const double t = prof.cumulative[i];
        const double ratio = std::isinf(t) ? 0.0 : fam.t_star[s] / t;
        const double diff = fam.capacities[s] - (std::isinf(t) ? 0.0 : 1.0 / t);
        prof.per_state_cr[i] = ratio;
        prof.per_state_regret[i] = diff;
        cr = std::min(cr, ratio);
        regret = std::max(regret, diff);
        if (std::isinf(prof.increments[i])) degenerate = true;
    }
    prof.cr = std::clamp(cr, 0.0, 1.0);
    // A schedule that never finishes some channel gets the worst-case metrics.
    prof.regret = degenerate ? fam.max_capacity() : std::clamp(regret, 0.0, fam.max_capacity());
}

}  // namespace

DecodingProfile evaluate_with_ordering(const ChannelFamily& fam, const Schedule& schedule,
                                       const Ordering& ordering) {
    check_schedule(fam, schedule);
    const std::size_t n = fam.size();
    if (ordering.size() != n) throw LengthMismatch("ordering length mismatch");
    {
        std::vector<bool> seen(n, false);
        for (std::size_t s : ordering) {
            if (s >= n || seen[s]) throw LengthMismatch("ordering is not a permutation");
            seen[s] = true;
        }
    }

    const auto mi = phase_rates(fam, schedule);

    DecodingProfile prof;
    prof.ordering = ordering;
    prof.increments.resize(n);
    prof.cumulative.resize(n);
    prof.min_pre_clamp_numerator = kInf;

    double t_prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t s = ordering[i];
        double consumed = 0.0;
        for (std::size_t j = 0; j < i; ++j) consumed += safe_mul(prof.increments[j], mi[s][j]);
        const double residual = 1.0 - consumed;
        prof.min_pre_clamp_numerator = std::min(prof.min_pre_clamp_numerator, residual);

        double delta;
        if (residual <= 0.0) {
            delta = 0.0;
        } else if (mi[s][i] < kMiFloor) {
            delta = kInf;
        } else {
            delta = residual / mi[s][i];
        }
        prof.increments[i] = delta;
        t_prev = t_prev + delta;
        prof.cumulative[i] = t_prev;
    }

    finalize(fam, prof);
    return prof;
}

DecodingProfile greedy_profile(const ChannelFamily& fam, const Schedule& schedule) {
    check_schedule(fam, schedule);
    const std::size_t n = fam.size();
    const auto mi = phase_rates(fam, schedule);

    DecodingProfile prof;
    prof.increments.resize(n);
    prof.cumulative.resize(n);
    prof.min_pre_clamp_numerator = kInf;

    std::vector<bool> decoded(n, false);
    std::vector<double> residual(n, 1.0);

    double t_prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        // Candidate increment of each remaining state under phase i.
        std::size_t pick = n;
        double best = kInf;
        for (std::size_t s = 0; s < n; ++s) {
            if (decoded[s]) continue;
            double delta;
            if (residual[s] <= 0.0) {
                delta = 0.0;
            } else if (mi[s][i] < kMiFloor) {
                delta = kInf;
            } else {
                delta = residual[s] / mi[s][i];
            }
            if (pick == n || delta < best) {  // ties keep the lowest state index
                pick = s;
                best = delta;
            }
        }

        prof.ordering.push_back(pick);
        prof.increments[i] = best;
        t_prev = t_prev + best;
        prof.cumulative[i] = t_prev;
        decoded[pick] = true;

        // Remaining states consume phase-i information.
        for (std::size_t s = 0; s < n; ++s) {
            if (decoded[s]) continue;
            residual[s] -= safe_mul(best, mi[s][i]);
            prof.min_pre_clamp_numerator = std::min(prof.min_pre_clamp_numerator, residual[s]);
            residual[s] = std::max(residual[s], 0.0);
        }
    }

    finalize(fam, prof);
    return prof;
}

namespace {

TwoChannelValue two_channel_eval(const ChannelFamily& fam, const InputDist& p, bool regret) {
    if (fam.size() != 2) throw WrongFamilySize("two-channel closed form needs |S| = 2");
    if (p.size() != fam.num_inputs()) throw LengthMismatch("distribution dimension mismatch");

    const double i1 = mutual_information(fam.channels[0], p);
    const double i2 = mutual_information(fam.channels[1], p);
    const std::size_t first = (i1 >= i2) ? 0 : 1;
    const std::size_t second = 1 - first;
    const double ia = std::max(i1, i2);  // rate seen by the first decoder
    const double ib = std::min(i1, i2);
    const double ca = fam.capacities[first];
    const double cb = fam.capacities[second];

    TwoChannelValue out;
    out.first_state = first;
    if (regret) {
        const double denom = cb + ia - ib;
        const double second_rate = denom > 0.0 ? cb * ia / denom : 0.0;
        out.value = std::max(ca - ia, cb - second_rate);
    } else {
        if (ia < kMiFloor) {
            out.value = 0.0;
        } else {
            const double denom = cb + ia - ib;
            out.value = std::min(ia / ca, ia / denom);
        }
    }
    return out;
}

}  // namespace

TwoChannelValue two_channel_cr(const ChannelFamily& fam, const InputDist& p) {
    return two_channel_eval(fam, p, false);
}

TwoChannelValue two_channel_regret(const ChannelFamily& fam, const InputDist& p) {
    return two_channel_eval(fam, p, true);
}

ConcatSchedule concat_schedule(const std::vector<double>& rates, double k) {
    if (rates.empty()) throw NonpositiveRate("rate tuple is empty");
    for (double r : rates)
        if (!(r > 0.0)) throw NonpositiveRate("rates must be strictly positive");

    ConcatSchedule out;
    out.order.resize(rates.size());
    std::iota(out.order.begin(), out.order.end(), std::size_t{0});
    std::stable_sort(out.order.begin(), out.order.end(),
                     [&](std::size_t a, std::size_t b) { return rates[a] > rates[b]; });

    double prev_inv = 0.0;
    for (std::size_t l = 0; l < out.order.size(); ++l) {
        const double r = rates[out.order[l]];
        const double inv = 1.0 / r;
        double len = k * (inv - prev_inv);
        if (len < 0.0) len = 0.0;  // equal rates, up to rounding
        const double snapped = std::round(len);
        if (std::abs(len - snapped) > 1e-9) {
            len = std::ceil(len);
            out.rounded = true;
        } else {
            len = snapped;
        }
        out.phase_lengths.push_back(len);
        out.decode_times.push_back(k / r);
        prev_inv = inv;
    }
    return out;
}

double profile_cr_value(const DecodingProfile& prof) { return prof.cr; }

double profile_regret_value(const DecodingProfile& prof) { return prof.regret; }

double weighted_cr_value(const ChannelFamily& fam, const DecodingProfile& prof,
                         const std::vector<double>& w) {
    double v = kInf;
    for (std::size_t i = 0; i < prof.ordering.size(); ++i) {
        const std::size_t s = prof.ordering[i];
        const double t = prof.cumulative[i];
        const double ratio = std::isinf(t) ? 0.0 : fam.t_star[s] / t;
        v = std::min(v, w[s] * ratio);
    }
    return v;
}

double weighted_regret_value(const ChannelFamily& fam, const DecodingProfile& prof,
                             const std::vector<double>& r) {
    double v = 0.0;
    for (std::size_t i = 0; i < prof.ordering.size(); ++i) {
        const std::size_t s = prof.ordering[i];
        const double t = prof.cumulative[i];
        const double diff = fam.capacities[s] - (std::isinf(t) ? 0.0 : 1.0 / t);
        v = std::max(v, r[s] * diff);
    }
    return v;
}

}  // namespace ccap
