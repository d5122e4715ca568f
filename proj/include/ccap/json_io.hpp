#pragma once
#include <string>

#include "ccap/profile.hpp"
#include "ccap/simulate.hpp"
#include "ccap/solve.hpp"

namespace ccap {

// DecodingProfile <-> JSON. Orderings are serialized 1-based; +inf becomes
// the string "inf".
std::string profile_to_json(const DecodingProfile& prof, int indent = 2);
DecodingProfile profile_from_json(const std::string& text);

std::string solve_report_to_json(const SolveReport& rep, int indent = 2);
SolveReport solve_report_from_json(const std::string& text);

std::string reduction_to_json(const ReductionResult& red, int indent = 2);

std::string sim_report_to_json(const SimReport& rep, int indent = 2);

// Per-trial CSV: header "trial,channel,stop_time,correct", LF line endings.
std::string sim_report_to_csv(const SimReport& rep);

// Sweep CSV: axis columns then metric columns, 9 significant digits.
std::string sweep_to_csv(const SweepTable& table);
std::string sweep_to_json(const SweepTable& table, int indent = 2);

std::string concat_to_json(const ConcatSchedule& cs, int indent = 2);

// One floating point cell, '.' decimal separator, 9 significant digits.
std::string format_cell(double v);

}  // namespace ccap
