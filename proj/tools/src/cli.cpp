#include "skew_cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <cstdio>
#include <ostream>

#include "skew/errors.hpp"
#include "skew/fixtures.hpp"
#include "skew_cli/json_io.hpp"

namespace skew::cli {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

// Parameters given on the command line take precedence over the input file.
struct Overrides {
  std::optional<double> alpha;
  std::optional<double> gamma;
  std::optional<std::string> f;
};

struct Resolved {
  double alpha;
  double gamma;
  MonotoneFunction f;
};

Resolved resolve(const ProblemInput& in, const Overrides& o) {
  Resolved r{0.5, 0.5, MonotoneFunction::wy()};
  if (o.alpha) r.alpha = *o.alpha; else if (in.alpha) r.alpha = *in.alpha;
  if (o.gamma) r.gamma = *o.gamma; else if (in.gamma) r.gamma = *in.gamma;
  if (o.f) r.f = MonotoneFunction::parse(*o.f); else if (in.f) r.f = *in.f;
  if (!(r.alpha >= 0.0 && r.alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  if (!(r.gamma >= 0.0 && r.gamma <= 1.0)) throw DomainError("gamma must lie in [0, 1]");
  return r;
}

json parameters_json(const Resolved& p) {
  return {{"alpha", p.alpha}, {"gamma", p.gamma}, {"f", function_to_json(p.f)}};
}

CheckParams check_params(InequalityId id, const Resolved& p, double tol) {
  CheckParams c;
  c.relative_tolerance = tol;
  switch (inequality_spec(id).parameters) {
    case ParameterKind::none: break;
    case ParameterKind::alpha: c.alpha = p.alpha; break;
    case ParameterKind::alpha_gamma:
      c.alpha = p.alpha;
      c.gamma = p.gamma;
      break;
    case ParameterKind::function: c.f = p.f; break;
  }
  return c;
}

json check_json(const CheckResult& r, const CheckParams& c) {
  json j = to_json(r);
  json params = json::object();
  if (c.alpha) params["alpha"] = *c.alpha;
  if (c.gamma) params["gamma"] = *c.gamma;
  if (c.f) params["f"] = function_to_json(*c.f);
  j["parameters"] = std::move(params);
  return j;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// --- compute -----------------------------------------------------------------

int cmd_compute(const std::string& path, const Overrides& o, std::ostream& out) {
  const ProblemInput in = load_problem(path);
  const Resolved p = resolve(in, o);
  const auto& rho = in.rho;

  json j;
  j["dimension"] = rho.size();
  j["parameters"] = parameters_json(p);
  j["rho"] = {{"eigenvalues", rho.spectrum().eigenvalues}, {"invertible", rho.invertible()}};
  j["A"] = to_json(skew_quantities(rho, in.a, p.alpha));
  j["B"] = to_json(skew_quantities(rho, in.b, p.alpha));
  j["covariance"] = complex_to_json(covariance(rho, in.a, in.b));
  j["commutator_expectation"] = complex_to_json(commutator_expectation(rho, in.a, in.b));
  j["corr_alpha"] = complex_to_json(corr_alpha(rho, in.a, in.b, p.alpha));
  j["corr_alpha_reversed"] = complex_to_json(corr_alpha(rho, in.b, in.a, p.alpha));
  j["corr_alpha_gamma"] = complex_to_json(corr_alpha_gamma(rho, in.a, in.b, {p.alpha, p.gamma}));
  j["corr_sym"] = complex_to_json(corr_sym(rho, in.a, in.b, {p.alpha, p.gamma}));
  j["spectral"] = {{"skew_information_A", spectral::wyd_skew_information(rho, in.a, p.alpha)},
                   {"skew_information_B", spectral::wyd_skew_information(rho, in.b, p.alpha)},
                   {"corr_alpha", complex_to_json(spectral::corr_alpha(rho, in.a, in.b, p.alpha))}};

  if (!p.f.regular()) {
    j["metric_adjusted"] = nullptr;
    j["metric_adjusted_note"] = p.f.name() + " is not regular";
  } else if (!rho.invertible()) {
    j["metric_adjusted"] = nullptr;
    j["metric_adjusted_note"] = "rho is not invertible";
  } else {
    j["metric_adjusted"] = {
        {"f", function_to_json(p.f)},
        {"f_zero", f_zero(p.f)},
        {"A", to_json(metric_quantities(rho, p.f, in.a))},
        {"B", to_json(metric_quantities(rho, p.f, in.b))},
        {"corr_f", complex_to_json(corr_f(rho, p.f, in.a, in.b))},
        {"corr_f_via_mean", complex_to_json(corr_f_via_mean(rho, p.f, in.a, in.b))},
        {"corr_f_spectral", complex_to_json(corr_f_spectral(rho, p.f, in.a, in.b))},
    };
  }
  emit(out, j);
  return kOk;
}

// --- check -------------------------------------------------------------------

int cmd_check(const std::string& path, const std::string& id_text, const Overrides& o, double tol,
              std::ostream& out) {
  const ProblemInput in = load_problem(path);
  const Resolved p = resolve(in, o);
  PreparedInstance prepared(in.rho, in.a, in.b);

  if (lower(id_text) != "all") {
    const auto id = parse_inequality_id(id_text);
    const auto c = check_params(id, p, tol);
    const auto r = prepared.check(id, c);
    emit(out, check_json(r, c));
    return r.in_region && !r.holds ? kViolation : kOk;
  }

  json results = json::array();
  json skipped = json::array();
  std::size_t violations = 0;
  for (const auto& spec : inequality_registry()) {
    const auto c = check_params(spec.id, p, tol);
    try {
      const auto r = prepared.check(spec.id, c);
      if (r.in_region && !r.holds) ++violations;
      results.push_back(check_json(r, c));
    } catch (const SingularStateError& e) {
      skipped.push_back({{"id", spec.name}, {"reason", e.what()}});
    } catch (const DomainError& e) {
      skipped.push_back({{"id", spec.name}, {"reason", e.what()}});
    } catch (const NonRegularError& e) {
      skipped.push_back({{"id", spec.name}, {"reason", e.what()}});
    }
  }
  emit(out, {{"parameters", parameters_json(p)},
             {"results", std::move(results)},
             {"skipped", std::move(skipped)},
             {"violations", violations}});
  return violations ? kViolation : kOk;
}

// --- reproduce ---------------------------------------------------------------

int cmd_reproduce(const std::optional<std::string>& id, std::ostream& out) {
  std::vector<std::string> names;
  if (id) {
    names.push_back(*id);
  } else {
    for (auto n : fixture_names()) names.emplace_back(n);
  }
  json list = json::array();
  bool all_match = true;
  for (const auto& name : names) {
    const Reproduction rep = reproduce_example(name);
    const Fixture& fx = fixture(name);
    all_match = all_match && rep.matches;
    list.push_back({{"id", lower(rep.fixture)},
                    {"description", fx.description},
                    {"inequality", rep.result.id},
                    {"computed", rep.result.margin},
                    {"reference", rep.reference},
                    {"tolerance", rep.tolerance},
                    {"difference", rep.result.margin - rep.reference},
                    {"matches", rep.matches},
                    {"result", check_json(rep.result, fx.params)}});
  }
  emit(out, {{"reproductions", std::move(list)}, {"all_match", all_match}});
  return all_match ? kOk : kViolation;
}

// --- fuzz --------------------------------------------------------------------

struct FuzzArgs {
  std::uint64_t seed = 0;
  std::size_t trials = 1000;
  std::size_t dim = 2;
  std::string id = "all";
  std::string alpha_grid = "0.5";
  std::string gamma_grid = "0.5";
  std::optional<std::string> pin;
  std::optional<std::string> functions;
  double mix_floor = 0.05;
  double scale = 1.0;
  std::size_t threads = 0;
  double tol = 1e-8;
  std::size_t max_recorded = 16;
};

std::vector<InequalityId> parse_ids(const std::string& text) {
  std::vector<InequalityId> ids;
  if (lower(text) == "all") {
    for (const auto& s : inequality_registry()) ids.push_back(s.id);
    return ids;
  }
  for (const auto& item : split_list(text)) ids.push_back(parse_inequality_id(item));
  if (ids.empty()) throw UnknownIdError("no inequality id given");
  return ids;
}

int cmd_fuzz(const FuzzArgs& a, std::ostream& out) {
  RandomModelConfig c;
  c.seed = a.seed;
  c.trials = a.trials;
  c.dim = a.dim;
  c.inequality_ids = parse_ids(a.id);
  c.alpha_grid = parse_grid(a.alpha_grid);
  c.gamma_grid = parse_grid(a.gamma_grid);
  if (a.pin) c.pinned_fixture = *a.pin;
  if (a.functions) {
    c.functions.clear();
    for (const auto& item : split_list(*a.functions)) c.functions.push_back(MonotoneFunction::parse(item));
  }
  c.mix_floor = a.mix_floor;
  c.observable_scale = a.scale;
  c.threads = a.threads;
  c.relative_tolerance = a.tol;
  c.max_recorded_violations = a.max_recorded;

  const FuzzReport report = run_fuzz(c);
  json j = to_json(report);
  json fnames = json::array();
  for (const auto& f : c.functions) fnames.push_back(f.name());
  json ids = json::array();
  for (auto id : c.inequality_ids) ids.push_back(inequality_spec(id).name);
  j["config"] = {{"seed", c.seed},
                 {"dim", c.dim},
                 {"trials", c.trials},
                 {"mix_floor", c.mix_floor},
                 {"observable_scale", c.observable_scale},
                 {"alpha_grid", c.alpha_grid},
                 {"gamma_grid", c.gamma_grid},
                 {"inequality_ids", ids},
                 {"functions", fnames},
                 {"pinned_fixture", c.pinned_fixture ? json(*c.pinned_fixture) : json(nullptr)},
                 {"relative_tolerance", c.relative_tolerance}};
  emit(out, j);
  return report.total_violations() ? kViolation : kOk;
}

// --- scan --------------------------------------------------------------------

int cmd_scan(const std::string& path, const std::string& id_text, const std::string& alpha_grid,
             const std::string& gamma_grid, const std::string& format, double tol, std::ostream& out) {
  const ProblemInput in = load_problem(path);
  const auto id = parse_inequality_id(id_text);
  const auto rows = scan_grid(in.rho, in.a, in.b, id, parse_grid(alpha_grid), parse_grid(gamma_grid), tol);
  const bool failed = std::any_of(rows.begin(), rows.end(), [](const ScanRow& r) { return r.in_region && !r.holds; });

  if (format == "csv") {
    out << "alpha,gamma,margin,in_region\n";
    char line[128];
    for (const auto& r : rows) {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%s\n", r.alpha, r.gamma, r.margin,
                    r.in_region ? "true" : "false");
      out << line;
    }
  } else {
    json list = json::array();
    for (const auto& r : rows)
      list.push_back({{"alpha", r.alpha}, {"gamma", r.gamma}, {"margin", r.margin}, {"in_region", r.in_region},
                      {"holds", r.holds}});
    emit(out, {{"id", inequality_spec(id).name}, {"rows", std::move(list)}});
  }
  return failed ? kViolation : kOk;
}

void report_error(std::ostream& err, const std::string& type, const std::string& message,
                  const std::string& invariant = {}) {
  json e{{"type", type}, {"message", message}};
  if (!invariant.empty()) e["invariant"] = invariant;
  err << json{{"error", e}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Skew information and uncertainty relation toolkit", "skewtool"};
  app.require_subcommand(1);

  Overrides ov;
  std::string input, id = "all", format = "json";
  std::optional<std::string> reproduce_id;
  double tol = 1e-8;
  FuzzArgs fz;
  std::string alpha_grid, gamma_grid = "0.5";

  auto add_overrides = [&](CLI::App* sub) {
    sub->add_option("--alpha", ov.alpha, "WYD exponent alpha in [0, 1]");
    sub->add_option("--gamma", ov.gamma, "mixing weight gamma in [0, 1]");
    sub->add_option("--f", ov.f, "monotone function: SLD, RLD, BKM, WY or WYD:<alpha>");
  };

  auto* compute = app.add_subcommand("compute", "Every skew information and correlation quantity of an input");
  compute->add_option("--input", input, "problem JSON file")->required();
  add_overrides(compute);

  auto* check = app.add_subcommand("check", "Evaluate registered inequalities as signed margins");
  check->add_option("--input", input, "problem JSON file")->required();
  check->add_option("--id", id, "inequality id or 'all'")->required();
  check->add_option("--tol", tol, "relative tolerance");
  add_overrides(check);

  auto* reproduce = app.add_subcommand("reproduce", "Run the stored reference instances");
  reproduce->add_option("--id", reproduce_id, "fixture id, e.g. remark_2_1");

  auto* fuzz = app.add_subcommand("fuzz", "Seeded random testing of the registered inequalities");
  fuzz->add_option("--seed", fz.seed, "64-bit seed")->required();
  fuzz->add_option("--trials", fz.trials, "number of random instances");
  fuzz->add_option("--dim", fz.dim, "matrix dimension in [2, 16]");
  fuzz->add_option("--id", fz.id, "inequality id, comma list or 'all'");
  fuzz->add_option("--alpha-grid", fz.alpha_grid, "lo:hi:n or comma list");
  fuzz->add_option("--gamma-grid", fz.gamma_grid, "lo:hi:n or comma list");
  fuzz->add_option("--pin-fixture", fz.pin, "replace trial 0 with a stored instance");
  fuzz->add_option("--f", fz.functions, "comma list of monotone functions for THM4/REM4H");
  fuzz->add_option("--mix-floor", fz.mix_floor, "weight of I/n mixed into each sampled state");
  fuzz->add_option("--scale", fz.scale, "observable scale");
  fuzz->add_option("--threads", fz.threads, "worker threads (0 = hardware)");
  fuzz->add_option("--tol", fz.tol, "relative tolerance");
  fuzz->add_option("--max-recorded", fz.max_recorded, "violations listed per id");

  auto* scan = app.add_subcommand("scan", "Margin table over an (alpha, gamma) grid");
  scan->add_option("--input", input, "problem JSON file")->required();
  scan->add_option("--id", id, "inequality id")->required();
  scan->add_option("--alpha-grid", alpha_grid, "lo:hi:n or comma list")->required();
  scan->add_option("--gamma-grid", gamma_grid, "lo:hi:n or comma list");
  scan->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  scan->add_option("--tol", tol, "relative tolerance");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_error(err, "UsageError", e.what());
    return kInputError;
  }

  try {
    if (*compute) return cmd_compute(input, ov, out);
    if (*check) return cmd_check(input, id, ov, tol, out);
    if (*reproduce) return cmd_reproduce(reproduce_id, out);
    if (*fuzz) return cmd_fuzz(fz, out);
    if (*scan) return cmd_scan(input, id, alpha_grid, gamma_grid, format, tol, out);
  } catch (const ValidationError& e) {
    report_error(err, "ValidationError", e.what(), e.invariant());
    return kInputError;
  } catch (const DimensionError& e) {
    report_error(err, "DimensionError", e.what(), "shape");
    return kInputError;
  } catch (const DomainError& e) {
    report_error(err, "DomainError", e.what());
    return kInputError;
  } catch (const SingularStateError& e) {
    report_error(err, "SingularStateError", e.what(), "invertible");
    return kInputError;
  } catch (const NonRegularError& e) {
    report_error(err, "NonRegularError", e.what(), "regular");
    return kInputError;
  } catch (const UnknownIdError& e) {
    report_error(err, "UnknownIdError", e.what());
    return kInputError;
  } catch (const ConvergenceError& e) {
    report_error(err, "ConvergenceError", e.what());
    return kInputError;
  }
  return kInputError;
}

}  // namespace skew::cli
