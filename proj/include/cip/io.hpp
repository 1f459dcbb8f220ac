#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cip/model.hpp"
#include "cip/policies.hpp"
#include "cip/relaxation.hpp"

namespace cip {

/// Instance schema:
///   {"n": int, "m": int,
///    "rows": [[[i, A_ki], ...] per constraint],
///    "a": [...],
///    "d": [cap or null, ...] or null (all unbounded),
///    "objectives": [[...], ...]}
/// Values are 64-bit floats; parse failures and invariant violations throw
/// std::invalid_argument listing what is wrong.
CipInstance read_instance(const std::string& path);
CipInstance parse_instance(const std::string& json_text);
std::string instance_to_json(const CipInstance& inst);
void write_instance(const CipInstance& inst, const std::string& path);

/// Solution files are either {"x": [...]} or a full solve report.
std::vector<long long> read_solution(const std::string& path);

std::string solve_report_to_json(const SolveReport& report, std::uint64_t seed);
void write_solve_report(const SolveReport& report, std::uint64_t seed, const std::string& path);

/// Trace export: JSON lines, one record per line. The first line holds the
/// initial bits, each following line one resampling event.
std::string trace_to_jsonl(const ResampleTrace& trace);
void write_trace_jsonl(const ResampleTrace& trace, const std::string& path);

}  // namespace cip
