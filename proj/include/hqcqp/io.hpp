// Problem files (version 1 JSON) and solution / trace serialization.
//
// A problem file is
//   {"version": 1, "dim": N, "T": M, "P": [M, ...]}
// where each matrix M is an array of N rows, each row an array of N
// [re, im] pairs.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hqcqp/problem.hpp"

namespace hqcqp {

nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j, int n, const std::string& what);

nlohmann::json problem_to_json(const HqcqpProblem& prob);
/// Throws ParseError describing the first schema or validity violation.
HqcqpProblem problem_from_json(const nlohmann::json& j);

/// Parses text; syntax errors are reported as "<source>:<line>:<column>: ...".
HqcqpProblem parse_problem(std::string_view text, const std::string& source = "<input>");

HqcqpProblem read_problem_file(const std::filesystem::path& path);
void write_problem_file(const std::filesystem::path& path, const HqcqpProblem& prob);
std::string serialize_problem(const HqcqpProblem& prob);

nlohmann::json vector_to_json(const CVector& v);
nlohmann::json solution_to_json(const Solution& s);

/// CSV with header `iteration,incumbent_c`.
void write_trace_csv(std::ostream& os, const std::vector<TracePoint>& trace);

}  // namespace hqcqp
