#include "skew/fuzz.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <thread>
#include <tuple>

#include "skew/errors.hpp"
#include "skew/fixtures.hpp"

namespace skew {

namespace {

struct ParamPoint {
  CheckParams params;
  bool skip = false;
};

auto order_key(const TrialPoint& p) {
  const double m = std::isnan(p.margin) ? -std::numeric_limits<double>::infinity() : p.margin;
  return std::tuple(m, p.trial, p.param_index);
}

void keep_min(std::optional<TrialPoint>& slot, const TrialPoint& candidate) {
  if (!slot || order_key(candidate) < order_key(*slot)) slot = candidate;
}

std::vector<ParamPoint> parameter_points(InequalityId id, const RandomModelConfig& config,
                                         const std::map<std::string, double>& cond41) {
  std::vector<ParamPoint> points;
  auto base = [&] {
    CheckParams p;
    p.relative_tolerance = config.relative_tolerance;
    return p;
  };
  switch (inequality_spec(id).parameters) {
    case ParameterKind::none: points.push_back({base()}); break;
    case ParameterKind::alpha:
      for (double a : config.alpha_grid) {
        ParamPoint pt{base()};
        pt.params.alpha = a;
        if (id == InequalityId::cor4) {
          pt.skip = !(a >= MonotoneFunction::kMinWydAlpha && a <= 1.0 - MonotoneFunction::kMinWydAlpha);
        }
        points.push_back(pt);
      }
      break;
    case ParameterKind::alpha_gamma:
      for (double a : config.alpha_grid)
        for (double g : config.gamma_grid) {
          ParamPoint pt{base()};
          pt.params.alpha = a;
          pt.params.gamma = g;
          points.push_back(pt);
        }
      break;
    case ParameterKind::function:
      for (const auto& f : config.functions) {
        ParamPoint pt{base()};
        pt.params.f = f;
        pt.skip = !f.regular();
        if (!pt.skip) pt.params.cond41_min_slack = cond41.at(f.name());
        points.push_back(pt);
      }
      break;
  }
  return points;
}

void record(IdSummary& s, const CheckResult& r, const ParamPoint& pt, std::uint64_t trial, std::uint64_t key,
            std::size_t index, std::size_t max_recorded, bool pinned) {
  TrialPoint tp;
  tp.trial = trial;
  tp.stream_key = key;
  tp.param_index = index;
  tp.alpha = pt.params.alpha;
  tp.gamma = pt.params.gamma;
  if (pt.params.f) tp.function = pt.params.f->name();
  tp.margin = r.margin;

  ++s.evaluations;
  keep_min(s.argmin, tp);
  if (pinned) keep_min(s.pinned_min, tp);
  if (r.in_region) {
    ++s.in_region_evaluations;
    keep_min(s.argmin_in_region, tp);
    if (!r.holds) {
      ++s.violations;
      if (s.violation_list.size() < max_recorded) s.violation_list.push_back(tp);
    }
  } else if (!r.holds) {
    ++s.out_of_region_failures;
  }
}

}  // namespace

std::vector<MonotoneFunction> default_function_catalog() {
  std::vector<MonotoneFunction> out{MonotoneFunction::wy()};
  for (int k = 1; k <= 9; ++k) out.push_back(MonotoneFunction::wyd(k / 10.0));
  return out;
}

void RandomModelConfig::validate() const {
  if (dim < 2 || dim > 16) throw DomainError("fuzz dimension must lie in [2, 16]");
  if (!(mix_floor > 0.0 && mix_floor < 1.0)) throw DomainError("mix floor must lie in (0, 1)");
  if (!(observable_scale > 0.0)) throw DomainError("observable scale must be > 0");
  if (!std::isfinite(relative_tolerance)) throw DomainError("relative tolerance must be finite");
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!std::all_of(alpha_grid.begin(), alpha_grid.end(), in_unit)) throw DomainError("alpha grid must lie in [0, 1]");
  if (!std::all_of(gamma_grid.begin(), gamma_grid.end(), in_unit)) throw DomainError("gamma grid must lie in [0, 1]");
  if (pinned_fixture && fixture(*pinned_fixture).rho.size() != dim)
    throw DomainError("pinned fixture " + *pinned_fixture + " has dimension " +
                      std::to_string(fixture(*pinned_fixture).rho.size()) + ", config has " + std::to_string(dim));
}

void IdSummary::merge(const IdSummary& other, std::size_t max_recorded) {
  evaluations += other.evaluations;
  in_region_evaluations += other.in_region_evaluations;
  violations += other.violations;
  out_of_region_failures += other.out_of_region_failures;
  skipped += other.skipped;
  if (other.argmin) keep_min(argmin, *other.argmin);
  if (other.argmin_in_region) keep_min(argmin_in_region, *other.argmin_in_region);
  if (other.pinned_min) keep_min(pinned_min, *other.pinned_min);
  violation_list.insert(violation_list.end(), other.violation_list.begin(), other.violation_list.end());
  std::sort(violation_list.begin(), violation_list.end(), [](const TrialPoint& x, const TrialPoint& y) {
    return std::tie(x.trial, x.param_index) < std::tie(y.trial, y.param_index);
  });
  if (violation_list.size() > max_recorded) violation_list.resize(max_recorded);
}

std::uint64_t FuzzReport::total_violations() const {
  std::uint64_t n = 0;
  for (const auto& s : per_id) n += s.violations;
  return n;
}

TrialInstance make_trial(const RandomModelConfig& config, std::uint64_t trial) {
  KeyedStream stream(config.seed, trial);
  if (trial == 0 && config.pinned_fixture) {
    const Fixture& fx = fixture(*config.pinned_fixture);
    return {DensityMatrix(fx.rho), Observable(fx.a), Observable(fx.b), stream.key()};
  }
  DensityMatrix rho = sample_density(stream, config.dim, config.mix_floor);
  Observable a = sample_observable(stream, config.dim, config.observable_scale);
  Observable b = sample_observable(stream, config.dim, config.observable_scale);
  return {std::move(rho), std::move(a), std::move(b), stream.key()};
}

FuzzReport run_fuzz(const RandomModelConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();
  FuzzReport report;
  if (config.trials == 0 || config.inequality_ids.empty()) return report;

  std::map<std::string, double> cond41;
  for (const auto& f : config.functions)
    if (f.regular()) cond41.emplace(f.name(), cond41_min_slack(f));

  std::vector<std::vector<ParamPoint>> points;
  for (auto id : config.inequality_ids) points.push_back(parameter_points(id, config, cond41));

  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<IdSummary> local(config.inequality_ids.size());
    for (std::size_t k = 0; k < local.size(); ++k) local[k].id = inequality_spec(config.inequality_ids[k]).name;
    for (std::uint64_t t = begin; t < end; ++t) {
      const TrialInstance inst = make_trial(config, t);
      PreparedInstance prepared(inst.rho, inst.a, inst.b);
      for (std::size_t k = 0; k < local.size(); ++k) {
        const auto id = config.inequality_ids[k];
        for (std::size_t p = 0; p < points[k].size(); ++p) {
          const auto& pt = points[k][p];
          if (pt.skip) {
            ++local[k].skipped;
            continue;
          }
          const auto r = prepared.check(id, pt.params);
          record(local[k], r, pt, t, inst.stream_key, p, config.max_recorded_violations,
                 t == 0 && config.pinned_fixture.has_value());
        }
      }
    }
    return local;
  };

  std::size_t workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<std::size_t>(workers, config.trials);

  std::vector<std::vector<IdSummary>> partial(workers);
  if (workers == 1) {
    partial[0] = run_range(0, config.trials);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (config.trials + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::uint64_t begin = std::min<std::uint64_t>(w * chunk, config.trials);
      const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, config.trials);
      pool.emplace_back([&, w, begin, end] {
        try {
          partial[w] = run_range(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  report.per_id = std::move(partial[0]);
  for (std::size_t w = 1; w < workers; ++w)
    for (std::size_t k = 0; k < report.per_id.size(); ++k)
      if (!partial[w].empty()) report.per_id[k].merge(partial[w][k], config.max_recorded_violations);
  report.trials_run = config.trials;
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<ScanRow> scan_grid(const DensityMatrix& rho, const Observable& a, const Observable& b, InequalityId id,
                               const std::vector<double>& alpha_grid, const std::vector<double>& gamma_grid,
                               double relative_tolerance) {
  const auto kind = inequality_spec(id).parameters;
  PreparedInstance prepared(rho, a, b);
  std::vector<ScanRow> rows;
  rows.reserve(alpha_grid.size() * gamma_grid.size());
  for (double al : alpha_grid) {
    for (double ga : gamma_grid) {
      CheckParams p;
      p.relative_tolerance = relative_tolerance;
      switch (kind) {
        case ParameterKind::none: break;
        case ParameterKind::alpha: p.alpha = al; break;
        case ParameterKind::alpha_gamma:
          p.alpha = al;
          p.gamma = ga;
          break;
        case ParameterKind::function: p.f = MonotoneFunction::wyd(al); break;
      }
      const auto r = prepared.check(id, p);
      rows.push_back({al, ga, r.margin, r.in_region, r.holds});
    }
  }
  return rows;
}

}  // namespace skew
