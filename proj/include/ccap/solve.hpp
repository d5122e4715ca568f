#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ccap/profile.hpp"

namespace ccap {

// Knobs for the derivative-free schedule search. Defaults: dense 1e-3
// structured grids, 32 multi-starts, one-phase-at-a-time simplex-projected
// perturbations with step halving after each failed sweep.
struct SearchConfig {
    double grid_step = 1e-3;    // structured 1-D grid resolution, in (0, 0.5]
    int starts = 32;            // random multi-starts
    double step_init = 0.25;    // initial perturbation radius
    double step_decay = 0.5;    // radius multiplier after a failed sweep
    double step_tol = 1e-6;     // stop once radius falls below this
    int tries_per_phase = 8;    // perturbations per phase per sweep
    std::uint64_t seed = 1;
    long max_evals = 500000;    // budget; best-so-far returned when exhausted
};

struct SolveReport {
    double value = 0.0;
    Schedule schedule;
    DecodingProfile profile;   // greedy profile at the reported schedule
    std::string method;        // "grid" | "local-search" | "closed-form"
    long evaluations = 0;
    std::uint64_t seed = 0;
    bool budget_exhausted = false;
};

// max over a single distribution q of min_s I_s(q)/C_s; the reported schedule
// repeats q once per state.
SolveReport single_dist_bound(const ChannelFamily& fam, const SearchConfig& cfg = {});

// min over a single q of max_s (C_s - I_s(q)).
SolveReport single_dist_regret(const ChannelFamily& fam, const SearchConfig& cfg = {});

// max over a single q of min_s I_s(q), unnormalized.
SolveReport compound_capacity(const ChannelFamily& fam, const SearchConfig& cfg = {});

// Competitive capacity: max over schedules of the greedy profile's cr.
SolveReport solve_cr(const ChannelFamily& fam, const SearchConfig& cfg = {});

// Optimal regret: min over schedules of the greedy profile's regret.
SolveReport solve_regret(const ChannelFamily& fam, const SearchConfig& cfg = {});

// Weighted variants. The decode order stays the greedy one; weights enter
// only the objective.
SolveReport solve_weighted_cr(const ChannelFamily& fam, const std::vector<double>& w,
                              const SearchConfig& cfg = {});
SolveReport solve_weighted_regret(const ChannelFamily& fam, const std::vector<double>& r,
                                  const SearchConfig& cfg = {});

// Weighted-CR / weighted-regret reduction by bisection.
//
// cr_via_regret: bisects alpha in (0, min_j w_j) on the weighted-regret value
// of r^alpha_j = w_j T*_j / (w_j - alpha) crossing 1; the crossing point is
// CR(w) and the final minimizing schedule also optimizes the weighted CR.
// regret_via_cr mirrors it with w^rho_j = r_j / (r_j - rho T*_j).
struct ReductionResult {
    double value = 0.0;                 // alpha* = CR(w), or rho* = Regret(r)
    std::vector<double> dual_weights;   // the r^alpha* (resp. w^rho*) vector
    Schedule schedule;
    DecodingProfile profile;
    std::vector<std::pair<double, double>> trace;  // sampled (parameter, inner value)
    long evaluations = 0;
};

ReductionResult prop1_cr_via_regret(const ChannelFamily& fam, const std::vector<double>& w,
                                    const SearchConfig& cfg = {}, double bisect_tol = 1e-6);
ReductionResult prop1_regret_via_cr(const ChannelFamily& fam, const std::vector<double>& r,
                                    const SearchConfig& cfg = {}, double bisect_tol = 1e-6);

// Parameter sweeps over builtin families.
//
// Family-parameter axes rebuild the family per grid point and support metrics
// cr_lb, cr_opt, regret_lb, regret_opt, compound. The pseudo-axis "p" sweeps
// the block-symmetric input split of a fixed bilingual-style family instead
// and supports rate_1, rate_2, nrate_1, nrate_2, cr_two, regret_two.
struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

struct SweepSpec {
    std::string family;                        // builtin family name
    std::map<std::string, double> base_params; // fixed constructor parameters
    std::vector<SweepAxis> axes;
    std::vector<std::string> metrics;
};

struct SweepTable {
    std::vector<std::string> columns;          // axis names then metric names
    std::vector<std::vector<double>> rows;     // NaN cells mark per-row errors
    std::vector<std::string> status;           // "ok" or the error message
};

SweepTable sweep(const SweepSpec& spec, const SearchConfig& cfg = {});

// Objective value of a report's schedule recomputed from scratch; used to
// check that reports reproduce.
double reevaluate(const ChannelFamily& fam, const std::string& metric, const Schedule& schedule,
                  const std::vector<double>& weights = {});

std::vector<double> parse_grid_axis(const std::string& text);  // "0.1:0.9:0.1" or "0.3"

}  // namespace ccap
