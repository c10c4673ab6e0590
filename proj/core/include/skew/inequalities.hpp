#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skew/hermitian.hpp"
#include "skew/monotone.hpp"

namespace skew {

/// Every registered uncertainty relation, plus one diagnostic comparison (ord22).
enum class InequalityId {
  heis,      ///< V(A)V(B) >= |Tr rho[A,B]|^2 / 4
  schr,      ///< V(A)V(B) - |Re Cov(A,B)|^2 >= |Tr rho[A,B]|^2 / 4
  luo,       ///< U(A)U(B) >= |Tr rho[A,B]|^2 / 4, Wigner-Yanase U
  yanagi_a,  ///< U_a(A)U_a(B) >= a(1-a)|Tr rho[A,B]|^2
  wy_schr,   ///< U(A)U(B) >= |Corr(A,B)|^2, Wigner-Yanase correlation
  thm2,      ///< U_a(A)U_a(B) >= 4a(1-a)|Corr_a(A,B)|^2, a in [1/2, 1]
  cor2,      ///< U_aU_a - 4a(1-a)(|Re Corr_a|^2 - |Im Tr[rho^a A rho^(1-a) B]|^2) >= a(1-a)|Tr rho[A,B]|^2
  thm3,      ///< U_aU_a >= 4a(1-a)|Corr_{a,g}|^2 on a, g <= 1/2 or a, g >= 1/2
  cor3,      ///< thm3 at g = 1/2, any a
  thm3s,     ///< U_aU_a >= 4a(1-a)|Corr^sym_{a,g}|^2, a in [1/2, 1]
  thm4,      ///< U^f(A)U^f(B) >= 4 f(0)|Corr^f(A,B)|^2, given cond41
  rem4h,     ///< U^f(A)U^f(B) >= f(0)|Tr rho[A,B]|^2, given cond41
  cor4,      ///< thm4 at f = WYD(a)
  ord22,     ///< diagnostic: |Re Corr_a|^2 versus |Im Tr[rho^a A rho^(1-a) B]|^2
};

enum class ParameterKind { none, alpha, alpha_gamma, function };

struct InequalitySpec {
  InequalityId id;
  std::string_view name;  ///< registry identifier, e.g. "THM2"
  ParameterKind parameters;
  /// False for diagnostics that make no claim; those never count as in-region.
  bool theorem;
  bool needs_invertible_state;
  std::string_view relation;
  std::string_view hypothesis;
};

const std::vector<InequalitySpec>& inequality_registry();
const InequalitySpec& inequality_spec(InequalityId id);
/// Case-insensitive; throws UnknownIdError.
InequalityId parse_inequality_id(std::string_view name);

struct CheckParams {
  std::optional<double> alpha;
  std::optional<double> gamma;
  std::optional<MonotoneFunction> f;
  /// Precomputed cond41 slack for `f`; evaluated on the default grid when absent.
  std::optional<double> cond41_min_slack;
  /// holds <=> margin >= -relative_tolerance * max(1, |lhs|, |rhs|). A negative value
  /// demands a strictly positive margin.
  double relative_tolerance = 1e-8;
};

struct CheckResult {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  ///< lhs - rhs
  bool holds = false;   ///< margin >= -tolerance
  double tolerance = 0.0;
  bool in_region = false;
  std::string input_digest;
  std::vector<std::pair<std::string, double>> diagnostics;
};

/// Evaluates one registered inequality as a signed margin. Runs outside the
/// theorem's hypothesis too; `in_region` says whether the hypothesis holds.
/// Throws DomainError when a required parameter is missing or out of range,
/// SingularStateError for metric-adjusted ids on a non-invertible state.
CheckResult check_inequality(InequalityId id, const DensityMatrix& rho, const Observable& a, const Observable& b,
                             const CheckParams& params);

/// One fixed (rho, A, B) evaluated at many (id, params) points.
///
/// Powers of rho, U values and correlation terms are cached per alpha (and per f for
/// the metric-adjusted ids), so sweeping a parameter grid costs one evaluation per
/// distinct alpha rather than per grid point. Results are bit-identical to
/// check_inequality. Keeps references: the inputs must outlive the instance.
class PreparedInstance {
 public:
  PreparedInstance(const DensityMatrix& rho, const Observable& a, const Observable& b);
  ~PreparedInstance();
  PreparedInstance(PreparedInstance&&) noexcept;
  PreparedInstance& operator=(PreparedInstance&&) noexcept;

  CheckResult check(InequalityId id, const CheckParams& params);

 private:
  struct Cache;
  std::unique_ptr<Cache> cache_;
};

/// Whether the parameters satisfy the hypothesis of `id` (cond41 is evaluated for thm4/rem4h).
bool in_region(InequalityId id, const CheckParams& params);

/// Stable FNV-1a digest of the inputs, as 16 hex digits.
std::string input_digest(InequalityId id, const DensityMatrix& rho, const Observable& a, const Observable& b,
                         const CheckParams& params);

/// Minimum cond41 slack of f on the default grid (0 for a non-regular f, which is out of scope).
double cond41_min_slack(const MonotoneFunction& f);

}  // namespace skew
