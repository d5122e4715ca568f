#include "ccap/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "ccap/errors.hpp"

namespace ccap {

namespace {

using nlohmann::json;

json extended(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double from_extended(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw ParseError("bad extended real '" + s + "'");
    }
    return j.get<double>();
}

json extended_array(const std::vector<double>& v) {
    json arr = json::array();
    for (double x : v) arr.push_back(extended(x));
    return arr;
}

std::vector<double> extended_array_from(const json& arr) {
    std::vector<double> v;
    for (const auto& j : arr) v.push_back(from_extended(j));
    return v;
}

json profile_json(const DecodingProfile& prof) {
    json j;
    json ord = json::array();
    for (std::size_t s : prof.ordering) ord.push_back(s + 1);  // 1-based states
    j["ordering"] = ord;
    j["increments"] = extended_array(prof.increments);
    j["cumulative"] = extended_array(prof.cumulative);
    j["per_state_cr"] = extended_array(prof.per_state_cr);
    j["per_state_regret"] = extended_array(prof.per_state_regret);
    j["cr"] = prof.cr;
    j["regret"] = prof.regret;
    return j;
}

DecodingProfile profile_from(const json& j) {
    DecodingProfile prof;
    for (const auto& s : j.at("ordering")) prof.ordering.push_back(s.get<std::size_t>() - 1);
    prof.increments = extended_array_from(j.at("increments"));
    prof.cumulative = extended_array_from(j.at("cumulative"));
    prof.per_state_cr = extended_array_from(j.at("per_state_cr"));
    prof.per_state_regret = extended_array_from(j.at("per_state_regret"));
    prof.cr = j.at("cr").get<double>();
    prof.regret = j.at("regret").get<double>();
    return prof;
}

json schedule_json(const Schedule& schedule) {
    json arr = json::array();
    for (const auto& p : schedule) arr.push_back(p);
    return arr;
}

json report_json(const SolveReport& rep) {
    json j;
    j["value"] = rep.value;
    j["method"] = rep.method;
    j["evaluations"] = rep.evaluations;
    j["seed"] = rep.seed;
    j["budget_exhausted"] = rep.budget_exhausted;
    j["schedule"] = schedule_json(rep.schedule);
    j["profile"] = profile_json(rep.profile);
    return j;
}

}  // namespace

std::string profile_to_json(const DecodingProfile& prof, int indent) {
    return profile_json(prof).dump(indent);
}

DecodingProfile profile_from_json(const std::string& text) {
    try {
        return profile_from(json::parse(text));
    } catch (const json::exception& e) {
        throw ParseError(std::string("profile JSON: ") + e.what());
    }
}

std::string solve_report_to_json(const SolveReport& rep, int indent) {
    return report_json(rep).dump(indent);
}

SolveReport solve_report_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        SolveReport rep;
        rep.value = j.at("value").get<double>();
        rep.method = j.at("method").get<std::string>();
        rep.evaluations = j.at("evaluations").get<long>();
        rep.seed = j.at("seed").get<std::uint64_t>();
        rep.budget_exhausted = j.at("budget_exhausted").get<bool>();
        for (const auto& p : j.at("schedule")) rep.schedule.push_back(p.get<InputDist>());
        rep.profile = profile_from(j.at("profile"));
        return rep;
    } catch (const json::exception& e) {
        throw ParseError(std::string("report JSON: ") + e.what());
    }
}

std::string reduction_to_json(const ReductionResult& red, int indent) {
    json j;
    j["value"] = red.value;
    j["dual_weights"] = red.dual_weights;
    j["schedule"] = schedule_json(red.schedule);
    j["profile"] = profile_json(red.profile);
    j["evaluations"] = red.evaluations;
    json trace = json::array();
    for (const auto& [x, v] : red.trace) trace.push_back(json::array({x, v}));
    j["trace"] = trace;
    return j.dump(indent);
}

std::string sim_report_to_json(const SimReport& rep, int indent) {
    json j;
    j["k"] = rep.k;
    j["delta"] = rep.delta;
    j["seed"] = rep.seed;
    j["trials_per_channel"] = rep.trials_per_channel;
    json stats = json::array();
    for (const auto& st : rep.stats) {
        json s;
        s["channel"] = st.channel + 1;
        s["trials"] = st.trials;
        s["tau_hat"] = st.tau_hat;
        s["error_rate"] = st.error_rate;
        s["empirical_cr"] = st.empirical_cr;
        stats.push_back(std::move(s));
    }
    j["channels"] = stats;
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back(json::array({r.trial, r.channel + 1, r.stop_time, r.correct}));
    j["trials"] = rows;
    return j.dump(indent);
}

std::string sim_report_to_csv(const SimReport& rep) {
    std::string out = "trial,channel,stop_time,correct\n";
    for (const auto& r : rep.rows) {
        out += std::to_string(r.trial) + "," + std::to_string(r.channel + 1) + "," +
               std::to_string(r.stop_time) + "," + (r.correct ? "1" : "0") + "\n";
    }
    return out;
}

std::string format_cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string sweep_to_csv(const SweepTable& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ",";
        out += table.columns[c];
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ",";
            out += format_cell(row[c]);
        }
        out += "\n";
    }
    return out;
}

std::string sweep_to_json(const SweepTable& table, int indent) {
    json j;
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    j["status"] = table.status;
    return j.dump(indent);
}

std::string concat_to_json(const ConcatSchedule& cs, int indent) {
    json j;
    json order = json::array();
    for (std::size_t s : cs.order) order.push_back(s + 1);
    j["order"] = order;
    j["phase_lengths"] = cs.phase_lengths;
    j["decode_times"] = cs.decode_times;
    j["rounded"] = cs.rounded;
    return j.dump(indent);
}

}  // namespace ccap
