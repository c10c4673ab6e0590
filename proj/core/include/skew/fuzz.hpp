#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skew/inequalities.hpp"
#include "skew/random.hpp"

namespace skew {

/// WY and WYD(0.1), ..., WYD(0.9).
std::vector<MonotoneFunction> default_function_catalog();

struct RandomModelConfig {
  std::uint64_t seed = 0;
  std::size_t dim = 2;
  std::size_t trials = 0;
  double mix_floor = 0.05;
  double observable_scale = 1.0;
  std::vector<double> alpha_grid{0.5};
  std::vector<double> gamma_grid{0.5};
  std::vector<InequalityId> inequality_ids;
  /// Functions swept by the f-parametrized ids (THM4, REM4H).
  std::vector<MonotoneFunction> functions = default_function_catalog();
  /// Replace trial 0 with a stored fixture (e.g. "REMARK_2_1").
  std::optional<std::string> pinned_fixture;
  /// 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;
  double relative_tolerance = 1e-8;
  /// Cap on the stored violation list per id (the count is always exact).
  std::size_t max_recorded_violations = 16;

  /// Throws DomainError on dim outside [2, 16], grids outside [0, 1], a bad mix floor,
  /// scale, a non-finite tolerance, or a pinned fixture whose dimension differs from `dim`.
  void validate() const;
};

/// One evaluation, identified by trial and parameter point.
struct TrialPoint {
  std::uint64_t trial = 0;
  std::uint64_t stream_key = 0;  ///< key of the trial's random stream
  std::size_t param_index = 0;
  std::optional<double> alpha;
  std::optional<double> gamma;
  std::optional<std::string> function;
  double margin = 0.0;
};

struct IdSummary {
  std::string id;
  std::uint64_t evaluations = 0;
  std::uint64_t in_region_evaluations = 0;
  /// In-region evaluations where the inequality failed.
  std::uint64_t violations = 0;
  /// Out-of-region evaluations where the inequality failed (expected, not a bug).
  std::uint64_t out_of_region_failures = 0;
  /// Grid points that the id cannot take (e.g. WYD exponent 0 for COR4).
  std::uint64_t skipped = 0;
  std::optional<TrialPoint> argmin;            ///< over all evaluations
  std::optional<TrialPoint> argmin_in_region;  ///< over in-region evaluations
  std::optional<TrialPoint> pinned_min;        ///< over trial 0 when it is pinned to a fixture
  std::vector<TrialPoint> violation_list;      ///< earliest by (trial, param_index)

  /// Folds `other` into this summary. Associative and commutative.
  void merge(const IdSummary& other, std::size_t max_recorded);
};

struct FuzzReport {
  std::vector<IdSummary> per_id;
  std::uint64_t trials_run = 0;
  double elapsed_seconds = 0.0;

  std::uint64_t total_violations() const;
};

/// Runs the configured trials. Trial t draws rho, A, B (in that order) from
/// KeyedStream(seed, t); evaluation order and worker count do not affect the report
/// except for `elapsed_seconds`.
FuzzReport run_fuzz(const RandomModelConfig& config);

/// The instance trial `t` of a config evaluates.
struct TrialInstance {
  DensityMatrix rho;
  Observable a;
  Observable b;
  std::uint64_t stream_key;
};
TrialInstance make_trial(const RandomModelConfig& config, std::uint64_t trial);

struct ScanRow {
  double alpha;
  double gamma;
  double margin;
  bool in_region;
  bool holds;
};

/// Margin of `id` over alpha_grid x gamma_grid, alpha-major. For function ids the
/// alpha coordinate selects f = WYD(alpha); ids without a gamma parameter repeat their
/// value along gamma.
std::vector<ScanRow> scan_grid(const DensityMatrix& rho, const Observable& a, const Observable& b, InequalityId id,
                               const std::vector<double>& alpha_grid, const std::vector<double>& gamma_grid,
                               double relative_tolerance = 1e-8);

}  // namespace skew
