#include "skew_cli/json_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "skew/errors.hpp"

namespace skew::cli {

namespace {

double parse_number(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end)
    throw DomainError("not a number: '" + std::string(text) + "'");
  return v;
}

const json& field(const json& doc, std::initializer_list<const char*> names) {
  for (const char* n : names)
    if (doc.contains(n)) return doc.at(n);
  throw ValidationError("schema", std::string("missing field '") + *names.begin() + "'");
}

template <class T, class Make>
T validated(std::string_view what, Make make) {
  try {
    return make();
  } catch (const ValidationError& e) {
    throw ValidationError(e.invariant(), std::string(what) + ": " + e.what());
  }
}

std::optional<double> optional_number(const json& doc, const char* name) {
  if (!doc.contains(name) || doc.at(name).is_null()) return std::nullopt;
  if (!doc.at(name).is_number()) throw ValidationError("schema", std::string(name) + " must be a number");
  return doc.at(name).get<double>();
}

std::string hex(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// NaN and infinities have no JSON spelling; they go out as null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json complex_to_json(Complex z) { return json::array({number(z.real()), number(z.imag())}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ValidationError("schema", "complex entries must be numbers or [re, im] pairs");
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, std::string_view name) {
  const std::string what(name);
  if (!j.is_array() || j.empty()) throw ValidationError("shape", what + ": expected a non-empty array of rows");
  const std::size_t n = j.size();
  if (n > kMaxDimension) throw ValidationError("shape", what + ": dimension exceeds " + std::to_string(kMaxDimension));
  std::vector<Complex> data;
  data.reserve(n * n);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != n) throw ValidationError("shape", what + ": matrix must be square");
    for (const auto& z : row) data.push_back(complex_from_json(z));
  }
  return Matrix(n, std::move(data));
}

ProblemInput parse_problem(const json& doc) {
  if (!doc.is_object()) throw ValidationError("schema", "input must be a JSON object");
  const Matrix rho_m = matrix_from_json(field(doc, {"rho"}), "rho");
  const Matrix a_m = matrix_from_json(field(doc, {"A", "a"}), "A");
  const Matrix b_m = matrix_from_json(field(doc, {"B", "b"}), "B");
  if (a_m.size() != rho_m.size() || b_m.size() != rho_m.size())
    throw ValidationError("shape", "rho, A and B must have the same dimension");

  ProblemInput in{validated<DensityMatrix>("rho", [&] { return DensityMatrix(rho_m); }),
                  validated<Observable>("A", [&] { return Observable(a_m); }),
                  validated<Observable>("B", [&] { return Observable(b_m); }),
                  optional_number(doc, "alpha"),
                  optional_number(doc, "gamma"),
                  std::nullopt};
  if (doc.contains("f") && !doc.at("f").is_null()) in.f = function_from_json(doc.at("f"));
  return in;
}

ProblemInput load_problem(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ValidationError("schema", "cannot open input file '" + path + "'");
  json doc;
  try {
    doc = json::parse(file);
  } catch (const json::parse_error& e) {
    throw ValidationError("schema", path + ": " + e.what());
  }
  return parse_problem(doc);
}

json function_to_json(const MonotoneFunction& f) {
  json j{{"name", f.name()}};
  if (f.kind() == FunctionKind::wyd) j["alpha"] = f.alpha();
  return j;
}

MonotoneFunction function_from_json(const json& j) {
  if (j.is_string()) return MonotoneFunction::parse(j.get<std::string>());
  if (j.is_object() && j.contains("kind") && j.at("kind").is_string()) {
    std::string text = j.at("kind").get<std::string>();
    if (j.contains("alpha") && !j.at("alpha").is_null()) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", j.at("alpha").get<double>());
      text += ":";
      text += buf;
    }
    return MonotoneFunction::parse(text);
  }
  throw ValidationError("schema", "f must be a string like \"WYD:0.3\" or {\"kind\": ..., \"alpha\": ...}");
}

json to_json(const CheckResult& r) {
  json diag = json::object();
  for (const auto& [k, v] : r.diagnostics) diag[k] = number(v);
  return {{"id", r.id},
          {"lhs", number(r.lhs)},
          {"rhs", number(r.rhs)},
          {"margin", number(r.margin)},
          {"holds", r.holds},
          {"tolerance", number(r.tolerance)},
          {"in_region", r.in_region},
          {"input_digest", r.input_digest},
          {"diagnostics", diag}};
}

json to_json(const SkewQuantities& q) {
  return {{"variance", number(q.variance)},
          {"skew_information", number(q.skew)},
          {"j", number(q.j)},
          {"u", number(q.u)},
          {"clamped", q.clamped}};
}

json to_json(const MetricQuantities& q) {
  return {{"variance", number(q.variance)},
          {"skew_information", number(q.i_f)},
          {"j", number(q.j_f)},
          {"u", number(q.u_f)},
          {"c_tilde", number(q.c_tilde)}};
}

json to_json(const TrialPoint& p) {
  json j{{"trial", p.trial}, {"stream_key", hex(p.stream_key)}, {"param_index", p.param_index},
         {"margin", number(p.margin)}};
  if (p.alpha) j["alpha"] = *p.alpha;
  if (p.gamma) j["gamma"] = *p.gamma;
  if (p.function) j["f"] = *p.function;
  return j;
}

json to_json(const IdSummary& s) {
  json j{{"id", s.id},
         {"evaluations", s.evaluations},
         {"in_region_evaluations", s.in_region_evaluations},
         {"violations", s.violations},
         {"out_of_region_failures", s.out_of_region_failures},
         {"skipped", s.skipped}};
  j["min_margin"] = s.argmin ? number(s.argmin->margin) : json(nullptr);
  j["argmin"] = s.argmin ? to_json(*s.argmin) : json(nullptr);
  j["min_margin_in_region"] = s.argmin_in_region ? number(s.argmin_in_region->margin) : json(nullptr);
  j["argmin_in_region"] = s.argmin_in_region ? to_json(*s.argmin_in_region) : json(nullptr);
  j["pinned_min"] = s.pinned_min ? to_json(*s.pinned_min) : json(nullptr);
  json list = json::array();
  for (const auto& v : s.violation_list) list.push_back(to_json(v));
  j["violation_list"] = std::move(list);
  return j;
}

json to_json(const FuzzReport& r) {
  json ids = json::array();
  for (const auto& s : r.per_id) ids.push_back(to_json(s));
  return {{"trials_run", r.trials_run},
          {"elapsed_seconds", r.elapsed_seconds},
          {"total_violations", r.total_violations()},
          {"per_id", std::move(ids)}};
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string_view item = text.substr(start, comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.emplace_back(item);
    start = comma + 1;
  }
  return out;
}

std::vector<double> parse_grid(std::string_view text) {
  if (text.find(':') != std::string_view::npos) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw DomainError("grid '" + std::string(text) + "': expected lo:hi:n");
    const double lo = parse_number(text.substr(0, c1));
    const double hi = parse_number(text.substr(c1 + 1, c2 - c1 - 1));
    const double count = parse_number(text.substr(c2 + 1));
    if (!(count >= 1.0) || count != std::floor(count) || count > 1e6)
      throw DomainError("grid '" + std::string(text) + "': point count must be a positive integer");
    const auto n = static_cast<std::size_t>(count);
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k)
      out[k] = n == 1 ? lo : (k + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1));
    return out;
  }
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_number(item));
  if (out.empty()) throw DomainError("grid is empty");
  return out;
}

}  // namespace skew::cli
