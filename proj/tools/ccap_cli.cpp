// Command-line front end: family loading, capacity and competitive-metric
// solvers, weighted reductions, Monte Carlo simulation, parameter sweeps.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccap/capacity.hpp"
#include "ccap/errors.hpp"
#include "ccap/json_io.hpp"
#include "ccap/rng.hpp"
#include "ccap/simulate.hpp"
#include "ccap/solve.hpp"

namespace {

using ccap::ChannelFamily;
using ccap::SearchConfig;
using ccap::SolveReport;

struct CommonOpts {
    std::string family;
    std::string format = "json";
    std::string out;
    std::uint64_t seed = 1;
    double grid = 1e-3;
    int starts = 32;
    double tol = 1e-6;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_family = true,
                std::vector<std::string> formats = {"json", "text"}) {
    auto* fam = cmd->add_option("--family", o.family,
                                "family JSON file or builtin:<name>?a=1&b=2");
    if (needs_family) fam->required();
    cmd->add_option("--format", o.format, "output format")
        ->default_val("json")
        ->check(CLI::IsMember(formats));
    cmd->add_option("--out", o.out, "output file (default: stdout)");
    cmd->add_option("--seed", o.seed, "random seed, echoed in the report")->default_val(1);
    cmd->add_option("--grid", o.grid, "structured grid resolution")->default_val(1e-3);
    cmd->add_option("--starts", o.starts, "random multi-starts")->default_val(32);
    cmd->add_option("--tol", o.tol, "bisection / capacity tolerance")->default_val(1e-6);
}

SearchConfig search_config(const CommonOpts& o) {
    SearchConfig cfg;
    cfg.grid_step = o.grid;
    cfg.starts = o.starts;
    cfg.seed = o.seed;
    return cfg;
}

void emit(const CommonOpts& o, const std::string& payload) {
    if (o.out.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ccap::Error("cannot write '" + o.out + "'");
    f << payload;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            vals.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ccap::ParseError("bad number '" + tok + "'");
        }
    }
    if (vals.empty()) throw ccap::ParseError("empty list");
    return vals;
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) parts.push_back(tok);
    return parts;
}

std::string solver_text(const SolveReport& rep, const char* label) {
    std::ostringstream os;
    os << label << " = " << ccap::format_cell(rep.value) << "  (method " << rep.method
       << ", evaluations " << rep.evaluations << ", seed " << rep.seed << ")\n";
    return os.str();
}

void emit_solver(const CommonOpts& o, const SolveReport& rep, const char* label) {
    if (o.format == "text")
        emit(o, solver_text(rep, label));
    else
        emit(o, ccap::solve_report_to_json(rep));
}

int run(int argc, char** argv) {
    CLI::App app{"competitive channel capacity toolkit"};
    app.require_subcommand(1);

    CommonOpts cap_o, cr_o, regret_o, wcr_o, wregret_o, reduce_o, sim_o, sweep_o, concat_o;

    auto* cap_cmd = app.add_subcommand("capacity", "per-channel capacities");
    add_common(cap_cmd, cap_o);

    auto* cr_cmd = app.add_subcommand("cr", "optimal competitive ratio");
    add_common(cr_cmd, cr_o);

    auto* regret_cmd = app.add_subcommand("regret", "optimal regret");
    add_common(regret_cmd, regret_o);

    std::string wcr_weights;
    auto* wcr_cmd = app.add_subcommand("weighted-cr", "weighted competitive ratio");
    add_common(wcr_cmd, wcr_o);
    wcr_cmd->add_option("--weights", wcr_weights, "comma-separated positive weights")->required();

    std::string wregret_rates;
    auto* wregret_cmd = app.add_subcommand("weighted-regret", "weighted regret");
    add_common(wregret_cmd, wregret_o);
    wregret_cmd->add_option("--rates", wregret_rates, "comma-separated positive weights")
        ->required();

    std::string reduce_weights, reduce_rates;
    auto* reduce_cmd =
        app.add_subcommand("reduce", "weighted CR/regret reduction by bisection");
    add_common(reduce_cmd, reduce_o);
    reduce_cmd->add_option("--weights", reduce_weights, "solve CR(w) via weighted regret");
    reduce_cmd->add_option("--rates", reduce_rates, "solve Regret(r) via weighted CR");

    int sim_k = 8;
    double sim_delta = 0.25;
    int sim_trials = 100;
    std::string sim_channel = "all";
    std::string sim_objective = "cr";
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo rateless decoding");
    add_common(sim_cmd, sim_o, true, {"json", "csv", "text"});
    sim_cmd->add_option("--k", sim_k, "message bits")->default_val(8);
    sim_cmd->add_option("--delta", sim_delta, "stretch/threshold margin")->default_val(0.25);
    sim_cmd->add_option("--trials", sim_trials, "trials per channel")->default_val(100);
    sim_cmd->add_option("--channel", sim_channel, "1-based true channel, or 'all'")
        ->default_val("all");
    sim_cmd->add_option("--objective", sim_objective, "schedule source: cr|regret")
        ->default_val("cr");

    std::string sweep_grid, sweep_metrics = "cr_lb,cr_opt";
    auto* sweep_cmd = app.add_subcommand("sweep", "parametric family sweep");
    add_common(sweep_cmd, sweep_o, true, {"json", "csv"});
    sweep_cmd->add_option("--param-grid", sweep_grid, "e.g. z=0.1:0.9:0.1,s=0.1:0.9:0.1")
        ->required();
    sweep_cmd->add_option("--metric", sweep_metrics, "comma-separated metrics")
        ->default_val("cr_lb,cr_opt");

    std::string concat_rates;
    double concat_k = 0.0;
    auto* concat_cmd = app.add_subcommand("concat", "phase plan for concatenated codes");
    add_common(concat_cmd, concat_o, /*needs_family=*/false);
    concat_cmd->add_option("--rates", concat_rates, "per-state rates, descending or not")
        ->required();
    concat_cmd->add_option("--k", concat_k, "message bits")->required();

    CLI11_PARSE(app, argc, argv);

    if (cap_cmd->parsed()) {
        const ChannelFamily fam = ccap::family_from_uri(cap_o.family);
        nlohmann::json j;
        j["seed"] = cap_o.seed;
        auto& arr = j["channels"] = nlohmann::json::array();
        for (std::size_t s = 0; s < fam.size(); ++s) {
            nlohmann::json c;
            c["name"] = fam.channels[s].name;
            c["capacity_bits"] = fam.capacities[s];
            c["t_star"] = fam.t_star[s];
            c["input"] = fam.cap_dists[s];
            arr.push_back(std::move(c));
        }
        if (cap_o.format == "text") {
            std::ostringstream os;
            for (std::size_t s = 0; s < fam.size(); ++s)
                os << fam.channels[s].name << ": C = " << ccap::format_cell(fam.capacities[s])
                   << " bits, T* = " << ccap::format_cell(fam.t_star[s]) << "\n";
            emit(cap_o, os.str());
        } else {
            emit(cap_o, j.dump(2));
        }
    } else if (cr_cmd->parsed()) {
        const ChannelFamily fam = ccap::family_from_uri(cr_o.family);
        emit_solver(cr_o, ccap::solve_cr(fam, search_config(cr_o)), "cr");
    } else if (regret_cmd->parsed()) {
        const ChannelFamily fam = ccap::family_from_uri(regret_o.family);
        emit_solver(regret_o, ccap::solve_regret(fam, search_config(regret_o)), "regret");
    } else if (wcr_cmd->parsed()) {
        const ChannelFamily fam = ccap::family_from_uri(wcr_o.family);
        emit_solver(wcr_o,
                    ccap::solve_weighted_cr(fam, parse_list(wcr_weights), search_config(wcr_o)),
                    "weighted_cr");
    } else if (wregret_cmd->parsed()) {
        const ChannelFamily fam = ccap::family_from_uri(wregret_o.family);
        emit_solver(
            wregret_o,
            ccap::solve_weighted_regret(fam, parse_list(wregret_rates), search_config(wregret_o)),
            "weighted_regret");
    } else if (reduce_cmd->parsed()) {
        const ChannelFamily fam = ccap::family_from_uri(reduce_o.family);
        const bool has_w = !reduce_weights.empty();
        const bool has_r = !reduce_rates.empty();
        if (has_w == has_r)
            throw ccap::ParameterOutOfRange("reduce needs exactly one of --weights / --rates");
        ccap::ReductionResult red =
            has_w ? ccap::prop1_cr_via_regret(fam, parse_list(reduce_weights),
                                              search_config(reduce_o), reduce_o.tol)
                  : ccap::prop1_regret_via_cr(fam, parse_list(reduce_rates),
                                              search_config(reduce_o), reduce_o.tol);
        if (reduce_o.format == "text") {
            std::ostringstream os;
            os << (has_w ? "cr(w)" : "regret(r)") << " = " << ccap::format_cell(red.value)
               << "  (seed " << reduce_o.seed << ")\n";
            emit(reduce_o, os.str());
        } else {
            nlohmann::json j = nlohmann::json::parse(ccap::reduction_to_json(red));
            j["seed"] = reduce_o.seed;
            emit(reduce_o, j.dump(2));
        }
    } else if (sim_cmd->parsed()) {
        const ChannelFamily fam = ccap::family_from_uri(sim_o.family);
        SearchConfig scfg = search_config(sim_o);
        scfg.seed = ccap::derive_seed(sim_o.seed, 0x50F7);
        const SolveReport sched = sim_objective == "regret" ? ccap::solve_regret(fam, scfg)
                                                            : ccap::solve_cr(fam, scfg);
        ccap::SimConfig sim;
        sim.k = sim_k;
        sim.delta = sim_delta;
        sim.trials = sim_trials;
        sim.seed = sim_o.seed;
        sim.schedule = sched.schedule;
        sim.profile = sched.profile;
        ccap::SimReport rep;
        if (sim_channel == "all") {
            rep = ccap::estimate_all_channels(fam, sim);
        } else {
            sim.true_channel = std::size_t(std::stoul(sim_channel)) - 1;
            rep = ccap::estimate(fam, sim);
        }
        if (sim_o.format == "csv")
            emit(sim_o, ccap::sim_report_to_csv(rep));
        else if (sim_o.format == "text") {
            std::ostringstream os;
            for (const auto& st : rep.stats)
                os << "channel " << (st.channel + 1) << ": tau_hat = "
                   << ccap::format_cell(st.tau_hat)
                   << ", error = " << ccap::format_cell(st.error_rate)
                   << ", empirical cr = " << ccap::format_cell(st.empirical_cr) << "\n";
            emit(sim_o, os.str());
        } else {
            emit(sim_o, ccap::sim_report_to_json(rep));
        }
    } else if (sweep_cmd->parsed()) {
        ccap::SweepSpec spec;
        const std::string uri = sweep_o.family;
        const std::string prefix = "builtin:";
        if (uri.rfind(prefix, 0) != 0)
            throw ccap::ParameterOutOfRange("sweep needs a builtin family URI");
        std::string rest = uri.substr(prefix.size());
        const auto qpos = rest.find('?');
        spec.family = rest.substr(0, qpos == std::string::npos ? rest.size() : qpos);
        if (qpos != std::string::npos) {
            for (const auto& kv : split_commas(rest.substr(qpos + 1))) {
                std::string item = kv;
                std::stringstream ss(item);
                std::string one;
                while (std::getline(ss, one, '&')) {
                    const auto eq = one.find('=');
                    if (eq == std::string::npos) throw ccap::ParseError("bad parameter " + one);
                    spec.base_params[one.substr(0, eq)] = std::stod(one.substr(eq + 1));
                }
            }
        }
        for (const auto& axis_text : split_commas(sweep_grid)) {
            const auto eq = axis_text.find('=');
            if (eq == std::string::npos)
                throw ccap::ParseError("bad axis '" + axis_text + "', want name=lo:hi:step");
            ccap::SweepAxis axis;
            axis.name = axis_text.substr(0, eq);
            axis.values = ccap::parse_grid_axis(axis_text.substr(eq + 1));
            spec.axes.push_back(std::move(axis));
        }
        for (const auto& m : split_commas(sweep_metrics)) spec.metrics.push_back(m);
        const ccap::SweepTable table = ccap::sweep(spec, search_config(sweep_o));
        emit(sweep_o, sweep_o.format == "json" ? ccap::sweep_to_json(table)
                                               : ccap::sweep_to_csv(table));
    } else if (concat_cmd->parsed()) {
        const ccap::ConcatSchedule cs = ccap::concat_schedule(parse_list(concat_rates), concat_k);
        if (concat_o.format == "text") {
            std::ostringstream os;
            os << "decode times:";
            for (double t : cs.decode_times) os << " " << ccap::format_cell(t);
            os << "\nphase lengths:";
            for (double l : cs.phase_lengths) os << " " << ccap::format_cell(l);
            os << (cs.rounded ? "\n(rounded up to integers)\n" : "\n");
            emit(concat_o, os.str());
        } else {
            emit(concat_o, ccap::concat_to_json(cs));
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ccap::NonStochasticRow& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const ccap::MismatchedInputAlphabet& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const ccap::DegenerateChannel& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const ccap::ParameterOutOfRange& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const ccap::UnknownFamily& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const ccap::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
