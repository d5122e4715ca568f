#include "ccap/solve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "ccap/errors.hpp"
#include "ccap/rng.hpp"

namespace ccap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// A search point is the list of free distributions: the whole schedule for
// the schedule programs, a single distribution for the one-shot bounds.
using Point = std::vector<InputDist>;

std::vector<double> project_simplex(std::vector<double> v) {
    const std::size_t n = v.size();
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double css = 0.0, theta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        css += u[i];
        const double t = (css - 1.0) / double(i + 1);
        if (u[i] - t > 0.0) theta = t;
    }
    double sum = 0.0;
    for (auto& x : v) {
        x = std::max(x - theta, 0.0);
        sum += x;
    }
    for (auto& x : v) x /= sum;
    return v;
}

InputDist mix(const InputDist& a, const InputDist& b, double lambda) {
    InputDist out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (1.0 - lambda) * a[i] + lambda * b[i];
    return out;
}

// Budgeted, counting evaluator. Internally everything maximizes; minimization
// problems negate on the way in and out.
struct Evaluator {
    std::function<double(const Point&)> fn;
    long budget;
    long count = 0;
    bool exhausted = false;

    double operator()(const Point& p) {
        if (count >= budget) {
            exhausted = true;
            return -kInf;
        }
        ++count;
        return fn(p);
    }
};

struct Best {
    double score = -kInf;
    Point point;
    std::string method = "grid";

    void offer(double s, const Point& p, const char* how) {
        if (s > score) {
            score = s;
            point = p;
            method = how;
        }
    }
};

// Triangular grid over the 2-simplex (|X| = 3).
std::vector<InputDist> simplex3_grid(double step) {
    std::vector<InputDist> pts;
    const int n = int(std::round(1.0 / step));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j)
            pts.push_back({double(i) / n, double(j) / n, double(n - i - j) / n});
    return pts;
}

std::vector<std::size_t> identity_perm(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    return p;
}

// Driver: structured anchors, dense 1-D mixture scans with golden refinement,
// then accept-if-better perturbation search from every start.
struct Search {
    const ChannelFamily& fam;
    std::size_t nfree;
    const SearchConfig& cfg;
    Evaluator eval;
    Best best;
    std::size_t start_index = 0;

    Search(const ChannelFamily& f, std::size_t nf, const SearchConfig& c,
           std::function<double(const Point&)> fn)
        : fam(f), nfree(nf), cfg(c), eval{std::move(fn), c.max_evals} {}

    void offer(const Point& p, const char* how) { best.offer(eval(p), p, how); }

    std::vector<InputDist> anchors() const {
        std::vector<InputDist> a;
        a.push_back(uniform_dist(fam.num_inputs()));
        for (const auto& d : fam.cap_dists) a.push_back(d);
        if (fam.num_inputs() == 2) {
            a.push_back({1.0, 0.0});
            a.push_back({0.0, 1.0});
        }
        return a;
    }

    // Second-phase candidates for two-state schedules; the residual phase is
    // best served by a capacity-achieving distribution, so scanning over the
    // first phase with each cap distribution second is exact up to the grid.
    std::vector<InputDist> second_phase_candidates() const {
        std::vector<InputDist> c = fam.cap_dists;
        c.push_back(uniform_dist(fam.num_inputs()));
        return c;
    }

    Point assemble(const InputDist& lead, const InputDist* second) const {
        if (nfree == 1) return {lead};
        Point p(nfree, lead);
        if (second && nfree == 2) p[1] = *second;
        return p;
    }

    void scan_segments() {
        const auto anc = anchors();
        const auto secs = second_phase_candidates();
        std::vector<const InputDist*> seconds;
        if (nfree == 2) {
            for (const auto& s : secs) seconds.push_back(&s);
        } else {
            seconds.push_back(nullptr);
        }
        // repeated-lead variant (all phases equal) covers single-distribution
        // schedules inside the two-phase programs
        const bool add_repeated = nfree == 2;

        struct ScanBest {
            double score = -kInf;
            std::size_t a = 0, b = 0;
            const InputDist* second = nullptr;
            bool repeated = false;
            double lambda = 0.0;
        } top;

        for (std::size_t i = 0; i < anc.size(); ++i) {
            for (std::size_t j = i + 1; j < anc.size(); ++j) {
                auto scan_one = [&](const InputDist* second, bool repeated) {
                    for (double lam = 0.0; lam <= 1.0 + 1e-12; lam += cfg.grid_step) {
                        const double l = std::min(lam, 1.0);
                        const InputDist lead = mix(anc[i], anc[j], l);
                        const Point p = repeated ? Point(nfree, lead) : assemble(lead, second);
                        const double s = eval(p);
                        best.offer(s, p, "grid");
                        if (s > top.score) top = {s, i, j, second, repeated, l};
                    }
                };
                for (const InputDist* second : seconds) scan_one(second, false);
                if (add_repeated) scan_one(nullptr, true);
            }
        }

        // golden refinement of the winning segment
        if (top.score > -kInf) {
            auto at = [&](double l) {
                const InputDist lead = mix(anc[top.a], anc[top.b], l);
                const Point p = top.repeated ? Point(nfree, lead) : assemble(lead, top.second);
                const double s = eval(p);
                best.offer(s, p, "grid");
                return s;
            };
            double lo = std::max(0.0, top.lambda - cfg.grid_step);
            double hi = std::min(1.0, top.lambda + cfg.grid_step);
            const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
            double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
            double f1 = at(x1), f2 = at(x2);
            for (int it = 0; it < 60 && !eval.exhausted; ++it) {
                if (f1 < f2) {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + gr * (hi - lo);
                    f2 = at(x2);
                } else {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - gr * (hi - lo);
                    f1 = at(x1);
                }
            }
        }
    }

    void scan_simplex3() {
        if (fam.num_inputs() != 3 || nfree > 2) return;
        const auto pts = simplex3_grid(0.02);
        if (nfree == 1) {
            for (const auto& q : pts) offer({q}, "grid");
        } else {
            for (const auto& sec : second_phase_candidates())
                for (const auto& q : pts) offer(Point{q, sec}, "grid");
        }
    }

    void local_search(Point x) {
        double fx = eval(x);
        best.offer(fx, x, "grid");
        Rng rng(derive_seed(cfg.seed, start_index++));
        double step = cfg.step_init;
        std::vector<double> cand(fam.num_inputs());
        while (step >= cfg.step_tol && !eval.exhausted) {
            bool improved = false;
            for (std::size_t phase = 0; phase < nfree; ++phase) {
                for (int t = 0; t < cfg.tries_per_phase; ++t) {
                    for (std::size_t i = 0; i < cand.size(); ++i)
                        cand[i] = x[phase][i] + step * rng.uniform(-1.0, 1.0);
                    Point trial = x;
                    trial[phase] = project_simplex(cand);
                    const double ft = eval(trial);
                    if (ft > fx) {
                        x = std::move(trial);
                        fx = ft;
                        improved = true;
                        best.offer(fx, x, "local-search");
                    }
                }
            }
            if (!improved) step *= cfg.step_decay;
        }
    }

    void run(const std::vector<Point>& extra_starts) {
        std::vector<Point> starts;
        starts.push_back(Point(nfree, uniform_dist(fam.num_inputs())));
        if (nfree == fam.size() && fam.size() >= 2) {
            // permutations of the capacity-achieving distributions
            auto perm = identity_perm(fam.size());
            if (fam.size() <= 4) {
                do {
                    Point p;
                    for (std::size_t s : perm) p.push_back(fam.cap_dists[s]);
                    starts.push_back(std::move(p));
                } while (std::next_permutation(perm.begin(), perm.end()));
            } else {
                Point p1, p2;
                for (std::size_t s = 0; s < fam.size(); ++s) {
                    p1.push_back(fam.cap_dists[s]);
                    p2.push_back(fam.cap_dists[fam.size() - 1 - s]);
                }
                starts.push_back(std::move(p1));
                starts.push_back(std::move(p2));
            }
            for (const auto& q : fam.cap_dists) starts.push_back(Point(nfree, q));
        }
        if (nfree == 1)
            for (const auto& q : fam.cap_dists) starts.push_back(Point{q});
        for (const auto& p : extra_starts) starts.push_back(p);

        scan_segments();
        scan_simplex3();
        if (best.score > -kInf) starts.push_back(best.point);

        for (const auto& s : starts) local_search(s);

        for (int r = 0; r < cfg.starts && !eval.exhausted; ++r) {
            Point p;
            for (std::size_t i = 0; i < nfree; ++i) {
                Rng g(derive_seed(cfg.seed, 0xB000 + std::uint64_t(r), i));
                p.push_back(g.simplex_point(fam.num_inputs()));
            }
            local_search(p);
        }
    }
};

SolveReport make_report(const ChannelFamily& fam, const Search& search, bool maximize,
                        const Schedule& schedule) {
    SolveReport rep;
    rep.value = maximize ? search.best.score : -search.best.score;
    rep.schedule = schedule;
    rep.profile = greedy_profile(fam, schedule);
    rep.method = search.best.method;
    rep.evaluations = search.eval.count;
    rep.seed = search.cfg.seed;
    rep.budget_exhausted = search.eval.exhausted;
    return rep;
}

Schedule repeat_dist(const InputDist& q, std::size_t n) { return Schedule(n, q); }

SolveReport run_single(const ChannelFamily& fam, const SearchConfig& cfg, bool maximize,
                       const std::function<double(const InputDist&)>& raw) {
    Search search(fam, 1, cfg, [&](const Point& p) {
        const double v = raw(p[0]);
        return maximize ? v : -v;
    });
    search.run({});
    return make_report(fam, search, maximize, repeat_dist(search.best.point[0], fam.size()));
}

SolveReport run_schedule(const ChannelFamily& fam, const SearchConfig& cfg, bool maximize,
                         const std::function<double(const Schedule&)>& raw,
                         const std::vector<Schedule>& extra_starts) {
    Search search(fam, fam.size(), cfg, [&](const Point& p) {
        const double v = raw(p);
        return maximize ? v : -v;
    });
    search.run(extra_starts);
    return make_report(fam, search, maximize, search.best.point);
}

void check_weights(const ChannelFamily& fam, const std::vector<double>& w, const char* what) {
    if (w.size() != fam.size()) throw LengthMismatch(std::string(what) + " length mismatch");
    for (double v : w)
        if (!(v > 0.0)) throw ParameterOutOfRange(std::string(what) + " must be strictly positive");
}

double single_cr_raw(const ChannelFamily& fam, const InputDist& q) {
    double v = kInf;
    for (std::size_t s = 0; s < fam.size(); ++s)
        v = std::min(v, mutual_information(fam.channels[s], q) / fam.capacities[s]);
    return v;
}

double single_regret_raw(const ChannelFamily& fam, const InputDist& q) {
    double v = 0.0;
    for (std::size_t s = 0; s < fam.size(); ++s)
        v = std::max(v, fam.capacities[s] - mutual_information(fam.channels[s], q));
    return v;
}

double compound_raw(const ChannelFamily& fam, const InputDist& q) {
    double v = kInf;
    for (std::size_t s = 0; s < fam.size(); ++s)
        v = std::min(v, mutual_information(fam.channels[s], q));
    return v;
}

}  // namespace

SolveReport single_dist_bound(const ChannelFamily& fam, const SearchConfig& cfg) {
    return run_single(fam, cfg, true, [&](const InputDist& q) { return single_cr_raw(fam, q); });
}

SolveReport single_dist_regret(const ChannelFamily& fam, const SearchConfig& cfg) {
    return run_single(fam, cfg, false, [&](const InputDist& q) { return single_regret_raw(fam, q); });
}

SolveReport compound_capacity(const ChannelFamily& fam, const SearchConfig& cfg) {
    return run_single(fam, cfg, true, [&](const InputDist& q) { return compound_raw(fam, q); });
}

SolveReport solve_cr(const ChannelFamily& fam, const SearchConfig& cfg) {
    const SolveReport lb = single_dist_bound(fam, cfg);
    return run_schedule(
        fam, cfg, true, [&](const Schedule& s) { return greedy_profile(fam, s).cr; },
        {lb.schedule});
}

SolveReport solve_regret(const ChannelFamily& fam, const SearchConfig& cfg) {
    const SolveReport lb = single_dist_regret(fam, cfg);
    return run_schedule(
        fam, cfg, false, [&](const Schedule& s) { return greedy_profile(fam, s).regret; },
        {lb.schedule});
}

SolveReport solve_weighted_cr(const ChannelFamily& fam, const std::vector<double>& w,
                              const SearchConfig& cfg) {
    check_weights(fam, w, "weights");
    return run_schedule(
        fam, cfg, true,
        [&](const Schedule& s) { return weighted_cr_value(fam, greedy_profile(fam, s), w); }, {});
}

SolveReport solve_weighted_regret(const ChannelFamily& fam, const std::vector<double>& r,
                                  const SearchConfig& cfg) {
    check_weights(fam, r, "weights");
    return run_schedule(
        fam, cfg, false,
        [&](const Schedule& s) { return weighted_regret_value(fam, greedy_profile(fam, s), r); },
        {});
}

namespace {

// Shared bisection shell for the two reduction directions.
ReductionResult bisect_reduction(double hi_limit,
                                 const std::function<std::vector<double>(double)>& dual,
                                 const std::function<SolveReport(const std::vector<double>&)>& inner,
                                 double bisect_tol, bool crossing_up) {
    ReductionResult out;
    long evals = 0;

    auto value_at = [&](double x) {
        const auto weights = dual(x);
        const SolveReport rep = inner(weights);
        evals += rep.evaluations;
        out.trace.emplace_back(x, rep.value);
        return rep;
    };

    double lo = 0.0;
    double hi = hi_limit * (1.0 - 1e-9);
    SolveReport hi_rep = value_at(hi);
    const bool hi_crossed = crossing_up ? hi_rep.value >= 1.0 : hi_rep.value <= 1.0;
    if (!hi_crossed) {
        // No crossing in range: the optimum sits at the boundary.
        out.value = hi;
        out.dual_weights = dual(hi);
        out.schedule = hi_rep.schedule;
        out.profile = hi_rep.profile;
        out.evaluations = evals;
        return out;
    }

    SolveReport final_rep = hi_rep;
    while (hi - lo > bisect_tol) {
        const double mid = 0.5 * (lo + hi);
        const SolveReport rep = value_at(mid);
        const bool crossed = crossing_up ? rep.value >= 1.0 : rep.value <= 1.0;
        if (crossed) {
            hi = mid;
            final_rep = rep;
        } else {
            lo = mid;
        }
    }

    // The inner solver is approximate; its value should still be monotone in
    // the bisection parameter up to solver noise.
    auto sorted = out.trace;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const double prev = sorted[i - 1].second, cur = sorted[i].second;
        const double slack = 1e-4 * (1.0 + std::abs(prev));
        const bool ok = crossing_up ? cur >= prev - slack : cur <= prev + slack;
        if (!ok)
            throw BisectionFailed("inner optimum not monotone near parameter " +
                                  std::to_string(sorted[i].first));
    }

    out.value = 0.5 * (lo + hi);
    out.dual_weights = dual(out.value);
    out.schedule = final_rep.schedule;
    out.profile = final_rep.profile;
    out.evaluations = evals;
    return out;
}

}  // namespace

ReductionResult prop1_cr_via_regret(const ChannelFamily& fam, const std::vector<double>& w,
                                    const SearchConfig& cfg, double bisect_tol) {
    check_weights(fam, w, "weights");
    const SolveReport reg = solve_regret(fam, cfg);
    if (reg.value <= 1e-9)
        throw DegenerateRegret("optimal regret is zero; the weighted reduction is vacuous");

    const double wmin = *std::min_element(w.begin(), w.end());
    auto dual = [&](double alpha) {
        std::vector<double> r(fam.size());
        for (std::size_t j = 0; j < fam.size(); ++j)
            r[j] = w[j] * fam.t_star[j] / (w[j] - alpha);
        return r;
    };
    auto inner = [&](const std::vector<double>& r) { return solve_weighted_regret(fam, r, cfg); };
    return bisect_reduction(wmin, dual, inner, bisect_tol, /*crossing_up=*/true);
}

ReductionResult prop1_regret_via_cr(const ChannelFamily& fam, const std::vector<double>& r,
                                    const SearchConfig& cfg, double bisect_tol) {
    check_weights(fam, r, "rates");
    const SolveReport reg = solve_regret(fam, cfg);
    if (reg.value <= 1e-9)
        throw DegenerateRegret("optimal regret is zero; the weighted reduction is vacuous");

    double rho_max = kInf;
    for (std::size_t j = 0; j < fam.size(); ++j)
        rho_max = std::min(rho_max, r[j] / fam.t_star[j]);
    auto dual = [&](double rho) {
        std::vector<double> w(fam.size());
        for (std::size_t j = 0; j < fam.size(); ++j)
            w[j] = r[j] / (r[j] - rho * fam.t_star[j]);
        return w;
    };
    auto inner = [&](const std::vector<double>& w) { return solve_weighted_cr(fam, w, cfg); };
    return bisect_reduction(rho_max, dual, inner, bisect_tol, /*crossing_up=*/true);
}

namespace {

InputDist block_symmetric_dist(std::size_t w1, std::size_t w2, double second_mass) {
    InputDist p(w1 + w2);
    for (std::size_t x = 0; x < w1; ++x) p[x] = (1.0 - second_mass) / double(w1);
    for (std::size_t x = w1; x < w1 + w2; ++x) p[x] = second_mass / double(w2);
    return p;
}

}  // namespace

double reevaluate(const ChannelFamily& fam, const std::string& metric, const Schedule& schedule,
                  const std::vector<double>& weights) {
    if (metric == "cr") return greedy_profile(fam, schedule).cr;
    if (metric == "regret") return greedy_profile(fam, schedule).regret;
    if (metric == "weighted_cr")
        return weighted_cr_value(fam, greedy_profile(fam, schedule), weights);
    if (metric == "weighted_regret")
        return weighted_regret_value(fam, greedy_profile(fam, schedule), weights);
    if (metric == "single_cr") return single_cr_raw(fam, schedule.at(0));
    if (metric == "single_regret") return single_regret_raw(fam, schedule.at(0));
    if (metric == "compound") return compound_raw(fam, schedule.at(0));
    throw ParameterOutOfRange("unknown metric '" + metric + "'");
}

std::vector<double> parse_grid_axis(const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) {
        try {
            parts.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ParseError("bad grid component '" + tok + "'");
        }
    }
    if (parts.size() == 1) return parts;
    if (parts.size() != 3) throw ParseError("grid axis must be 'value' or 'lo:hi:step'");
    const double lo = parts[0], hi = parts[1], step = parts[2];
    if (!(step > 0.0) || hi < lo) throw ParseError("bad grid range");
    std::vector<double> vals;
    const int n = int(std::round((hi - lo) / step));
    for (int i = 0; i <= n; ++i) {
        const double v = lo + double(i) * step;
        if (v <= hi + step * 1e-9) vals.push_back(v);
    }
    return vals;
}

SweepTable sweep(const SweepSpec& spec, const SearchConfig& cfg) {
    if (spec.axes.empty()) throw ParameterOutOfRange("sweep needs at least one axis");
    const bool p_mode = spec.axes.size() == 1 && spec.axes[0].name == "p";

    SweepTable table;
    for (const auto& ax : spec.axes) table.columns.push_back(ax.name);
    for (const auto& m : spec.metrics) table.columns.push_back(m);

    // cartesian product of the axes
    std::vector<std::vector<double>> grid;
    std::vector<double> current;
    std::function<void(std::size_t)> expand = [&](std::size_t depth) {
        if (depth == spec.axes.size()) {
            grid.push_back(current);
            return;
        }
        for (double v : spec.axes[depth].values) {
            current.push_back(v);
            expand(depth + 1);
            current.pop_back();
        }
    };
    expand(0);

    ChannelFamily fixed_fam;
    std::size_t w1 = 0, w2 = 0;
    if (p_mode) {
        fixed_fam = builtin_family(spec.family, spec.base_params);
        if (spec.family == "bilingual") {
            w1 = std::size_t(spec.base_params.at("w1"));
            w2 = std::size_t(spec.base_params.at("w2"));
        } else if (spec.family == "bilingual_erasure") {
            w1 = 2;
            w2 = 2;
        } else {
            throw ParameterOutOfRange("p sweeps need a bilingual-style family");
        }
    }

    for (std::size_t row = 0; row < grid.size(); ++row) {
        SearchConfig row_cfg = cfg;
        row_cfg.seed = derive_seed(cfg.seed, row);
        std::vector<double> cells = grid[row];
        std::string status = "ok";
        try {
            if (p_mode) {
                const double p = grid[row][0];
                if (p < 0.0 || p > 1.0) throw ParameterOutOfRange("p must lie in [0,1]");
                const InputDist q = block_symmetric_dist(w1, w2, p);
                for (const auto& m : spec.metrics) {
                    double v;
                    if (m == "rate_1")
                        v = mutual_information(fixed_fam.channels[0], q);
                    else if (m == "rate_2")
                        v = mutual_information(fixed_fam.channels[1], q);
                    else if (m == "nrate_1")
                        v = mutual_information(fixed_fam.channels[0], q) / fixed_fam.capacities[0];
                    else if (m == "nrate_2")
                        v = mutual_information(fixed_fam.channels[1], q) / fixed_fam.capacities[1];
                    else if (m == "cr_two")
                        v = two_channel_cr(fixed_fam, q).value;
                    else if (m == "regret_two")
                        v = two_channel_regret(fixed_fam, q).value;
                    else
                        throw ParameterOutOfRange("unknown p-sweep metric '" + m + "'");
                    cells.push_back(v);
                }
            } else {
                auto params = spec.base_params;
                for (std::size_t a = 0; a < spec.axes.size(); ++a)
                    params[spec.axes[a].name] = grid[row][a];
                const ChannelFamily fam = builtin_family(spec.family, params);
                for (const auto& m : spec.metrics) {
                    double v;
                    if (m == "cr_lb")
                        v = single_dist_bound(fam, row_cfg).value;
                    else if (m == "cr_opt")
                        v = solve_cr(fam, row_cfg).value;
                    else if (m == "regret_lb")
                        v = single_dist_regret(fam, row_cfg).value;
                    else if (m == "regret_opt")
                        v = solve_regret(fam, row_cfg).value;
                    else if (m == "compound")
                        v = compound_capacity(fam, row_cfg).value;
                    else
                        throw ParameterOutOfRange("unknown sweep metric '" + m + "'");
                    cells.push_back(v);
                }
            }
        } catch (const Error& e) {
            status = e.what();
            cells.resize(table.columns.size(), std::numeric_limits<double>::quiet_NaN());
        }
        cells.resize(table.columns.size(), std::numeric_limits<double>::quiet_NaN());
        table.rows.push_back(std::move(cells));
        table.status.push_back(std::move(status));
    }
    return table;
}

}  // namespace ccap
