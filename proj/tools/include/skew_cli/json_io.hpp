#pragma once

// JSON encoding for the command-line front end.
//
// Complex numbers are [re, im]; matrices are row-major nested arrays of complex
// numbers. A bare number is accepted on input as a real entry. Doubles are written
// in shortest round-trip form, so re-reading output reproduces every value exactly.

#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skew/fuzz.hpp"
#include "skew/inequalities.hpp"
#include "skew/metric_adjusted.hpp"
#include "skew/skew_information.hpp"

namespace skew::cli {

using nlohmann::json;

/// (rho, A, B) plus optional parameters, already validated against the type invariants.
struct ProblemInput {
  DensityMatrix rho;
  Observable a;
  Observable b;
  std::optional<double> alpha;
  std::optional<double> gamma;
  std::optional<MonotoneFunction> f;
};

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);
json matrix_to_json(const Matrix& m);
/// Throws ValidationError("shape") for ragged, empty or non-square input.
Matrix matrix_from_json(const json& j, std::string_view field);

/// Throws ValidationError naming the failed invariant ("schema", "shape", "hermitian",
/// "trace", "positivity", "finite").
ProblemInput parse_problem(const json& doc);
ProblemInput load_problem(const std::string& path);

json function_to_json(const MonotoneFunction& f);
/// {"kind": "WYD", "alpha": 0.3} or the string form "WYD:0.3".
MonotoneFunction function_from_json(const json& j);

json to_json(const CheckResult& r);
json to_json(const SkewQuantities& q);
json to_json(const MetricQuantities& q);
json to_json(const TrialPoint& p);
json to_json(const IdSummary& s);
json to_json(const FuzzReport& r);

/// "lo:hi:n" (n evenly spaced points, ends included) or a comma list "0.1,0.5".
/// Throws DomainError on malformed text.
std::vector<double> parse_grid(std::string_view text);

/// Splits on commas and trims blanks; empty items are dropped.
std::vector<std::string> split_list(std::string_view text);

}  // namespace skew::cli
