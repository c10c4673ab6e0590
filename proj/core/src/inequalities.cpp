#include "skew/inequalities.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>

#include "skew/errors.hpp"
#include "skew/metric_adjusted.hpp"
#include "skew/scalar_checks.hpp"
#include "skew/skew_information.hpp"

namespace skew {

namespace {

using enum InequalityId;
using enum ParameterKind;

const std::vector<InequalitySpec> kRegistry = {
    {heis, "HEIS", none, true, false, "V(A) V(B) >= |Tr rho[A,B]|^2 / 4", "any state"},
    {schr, "SCHR", none, true, false, "V(A) V(B) - |Re Cov(A,B)|^2 >= |Tr rho[A,B]|^2 / 4", "any state"},
    {luo, "LUO", none, true, false, "U(A) U(B) >= |Tr rho[A,B]|^2 / 4", "any state"},
    {yanagi_a, "YANAGI_A", alpha, true, false, "U_a(A) U_a(B) >= a(1-a) |Tr rho[A,B]|^2", "a in [0,1]"},
    {wy_schr, "WY_SCHR", none, true, false, "U(A) U(B) >= |Corr(A,B)|^2", "any state"},
    {thm2, "THM2", alpha, true, false, "U_a(A) U_a(B) >= 4a(1-a) |Corr_a(A,B)|^2", "a in [1/2,1]"},
    {cor2, "COR2", alpha, true, false,
     "U_a(A) U_a(B) - 4a(1-a)(|Re Corr_a(A,B)|^2 - |Im Tr[rho^a A rho^(1-a) B]|^2) >= a(1-a) |Tr rho[A,B]|^2",
     "a in [1/2,1]"},
    {thm3, "THM3", alpha_gamma, true, false, "U_a(A) U_a(B) >= 4a(1-a) |Corr_{a,g}(A,B)|^2",
     "a,g in [0,1/2] or a,g in [1/2,1]"},
    {cor3, "COR3", alpha, true, false, "U_a(A) U_a(B) >= 4a(1-a) |Corr_{a,1/2}(A,B)|^2", "a in [0,1]"},
    {thm3s, "THM3S", alpha_gamma, true, false, "U_a(A) U_a(B) >= 4a(1-a) |Corr^sym_{a,g}(A,B)|^2",
     "a in [1/2,1], g in [0,1]"},
    {thm4, "THM4", function, true, true, "U^f(A) U^f(B) >= 4 f(0) |Corr^f(A,B)|^2", "f regular and COND41 holds"},
    {rem4h, "REM4H", function, true, true, "U^f(A) U^f(B) >= f(0) |Tr rho[A,B]|^2", "f regular and COND41 holds"},
    {cor4, "COR4", alpha, true, true, "U^f(A) U^f(B) >= 4a(1-a) |Corr^f(A,B)|^2, f = WYD(a)", "a in (0,1)"},
    {ord22, "ORD22", alpha, false, false, "|Re Corr_a(A,B)|^2 >= |Im Tr[rho^a A rho^(1-a) B]|^2",
     "none: no ordering is claimed"},
};

double require_alpha(const CheckParams& p, const InequalitySpec& spec) {
  if (!p.alpha) throw DomainError(std::string(spec.name) + " needs alpha");
  if (!(*p.alpha >= 0.0 && *p.alpha <= 1.0)) throw DomainError(std::string(spec.name) + ": alpha must lie in [0, 1]");
  return *p.alpha;
}

double require_gamma(const CheckParams& p, const InequalitySpec& spec) {
  if (!p.gamma) throw DomainError(std::string(spec.name) + " needs gamma");
  if (!(*p.gamma >= 0.0 && *p.gamma <= 1.0)) throw DomainError(std::string(spec.name) + ": gamma must lie in [0, 1]");
  return *p.gamma;
}

const MonotoneFunction& require_function(const CheckParams& p, const InequalitySpec& spec) {
  if (!p.f) throw DomainError(std::string(spec.name) + " needs a monotone function");
  if (!p.f->regular()) throw NonRegularError(std::string(spec.name) + " needs a regular f, got " + p.f->name());
  return *p.f;
}

double slack_for(const CheckParams& p) {
  return p.cond41_min_slack ? *p.cond41_min_slack : cond41_min_slack(*p.f);
}

struct Uint64Hasher {
  std::uint64_t h = 0xcbf29ce484222325ULL;

  void bytes(const void* data, std::size_t len) {
    const auto* c = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= c[i];
      h *= 0x100000001b3ULL;
    }
  }
  void value(double x) {
    const auto bits = std::bit_cast<std::uint64_t>(x);
    for (int k = 0; k < 8; ++k) {
      const unsigned char byte = static_cast<unsigned char>(bits >> (8 * k));
      bytes(&byte, 1);
    }
  }
  void matrix(const Matrix& m) {
    value(static_cast<double>(m.size()));
    for (const auto& z : m.data()) {
      value(z.real());
      value(z.imag());
    }
  }
};

}  // namespace

const std::vector<InequalitySpec>& inequality_registry() { return kRegistry; }

const InequalitySpec& inequality_spec(InequalityId id) {
  for (const auto& s : kRegistry)
    if (s.id == id) return s;
  throw UnknownIdError("unregistered inequality");
}

InequalityId parse_inequality_id(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  for (const auto& s : kRegistry)
    if (s.name == up) return s.id;
  throw UnknownIdError("unknown inequality id '" + std::string(name) + "'");
}

double cond41_min_slack(const MonotoneFunction& f) {
  if (!f.regular()) return 0.0;
  ScalarParams p;
  p.f = f;
  return check_scalar_inequality(ScalarInequality::cond41, p).min_slack;
}

bool in_region(InequalityId id, const CheckParams& params) {
  const auto& spec = inequality_spec(id);
  switch (id) {
    case heis:
    case schr:
    case luo:
    case wy_schr: return true;
    case yanagi_a:
    case cor3: require_alpha(params, spec); return true;
    case thm2:
    case cor2: return require_alpha(params, spec) >= 0.5;
    case thm3: return eq33_region(require_alpha(params, spec), require_gamma(params, spec));
    case thm3s: require_gamma(params, spec); return require_alpha(params, spec) >= 0.5;
    case thm4:
    case rem4h: require_function(params, spec); return slack_for(params) >= -kScalarSlackTolerance;
    case cor4: {
      const double a = require_alpha(params, spec);
      return a >= MonotoneFunction::kMinWydAlpha && a <= 1.0 - MonotoneFunction::kMinWydAlpha;
    }
    case ord22: require_alpha(params, spec); return false;
  }
  return false;
}

namespace {

std::uint64_t digest_prefix(const DensityMatrix& rho, const Observable& a, const Observable& b) {
  Uint64Hasher h;
  h.matrix(rho.matrix());
  h.matrix(a.matrix());
  h.matrix(b.matrix());
  return h.h;
}

std::string finish_digest(std::uint64_t prefix, InequalityId id, const CheckParams& params) {
  Uint64Hasher h{prefix};
  const auto name = inequality_spec(id).name;
  h.bytes(name.data(), name.size());
  for (const auto& opt : {params.alpha, params.gamma}) {
    const unsigned char tag = opt ? 1 : 0;
    h.bytes(&tag, 1);
    if (opt) h.value(*opt);
  }
  if (params.f) {
    const auto fname = params.f->name();
    h.bytes(fname.data(), fname.size());
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h.h));
  return buf;
}

}  // namespace

std::string input_digest(InequalityId id, const DensityMatrix& rho, const Observable& a, const Observable& b,
                         const CheckParams& params) {
  return finish_digest(digest_prefix(rho, a, b), id, params);
}

struct PreparedInstance::Cache {
  const DensityMatrix& rho;
  const Observable& a;
  const Observable& b;
  std::uint64_t prefix;

  std::optional<double> comm_sq, var_product, re_cov;

  struct AlphaTerms {
    PowerPair p;
    double u_product;
    Complex corr_ab;
    std::optional<Complex> corr_ba;       // Corr_a(B, A)
    std::optional<Complex> corr_ab_flip;  // Corr_{1-a}(A, B) from the swapped pair
    std::optional<double> im_sandwich;    // Im Tr[rho^a A rho^(1-a) B]
  };
  std::map<double, AlphaTerms> by_alpha;

  struct FunctionTerms {
    double u_product;
    Complex corr;
  };
  std::map<std::pair<FunctionKind, double>, FunctionTerms> by_function;

  double commutator_sq() {
    if (!comm_sq) comm_sq = std::norm(commutator_expectation(rho, a, b));
    return *comm_sq;
  }

  AlphaTerms& at(double al) {
    auto it = by_alpha.find(al);
    if (it == by_alpha.end()) {
      auto p = PowerPair::of(rho, al);
      const double u = u_alpha(rho, a, p) * u_alpha(rho, b, p);
      const Complex c = corr_alpha(rho, a, b, p);
      it = by_alpha.emplace(al, AlphaTerms{std::move(p), u, c, {}, {}, {}}).first;
    }
    return it->second;
  }

  FunctionTerms& at(const MonotoneFunction& f) {
    const auto key = std::pair(f.kind(), f.alpha());
    auto it = by_function.find(key);
    if (it == by_function.end()) {
      const double u = metric_quantities(rho, f, a).u_f * metric_quantities(rho, f, b).u_f;
      it = by_function.emplace(key, FunctionTerms{u, corr_f(rho, f, a, b)}).first;
    }
    return it->second;
  }
};

PreparedInstance::PreparedInstance(const DensityMatrix& rho, const Observable& a, const Observable& b) {
  require_same_size(rho.matrix(), a.matrix(), "inequality check");
  require_same_size(rho.matrix(), b.matrix(), "inequality check");
  cache_ = std::make_unique<Cache>(Cache{rho, a, b, digest_prefix(rho, a, b), {}, {}, {}, {}, {}});
}

PreparedInstance::~PreparedInstance() = default;
PreparedInstance::PreparedInstance(PreparedInstance&&) noexcept = default;
PreparedInstance& PreparedInstance::operator=(PreparedInstance&&) noexcept = default;

CheckResult PreparedInstance::check(InequalityId id, const CheckParams& params) {
  const auto& spec = inequality_spec(id);
  Cache& c = *cache_;
  const DensityMatrix& rho = c.rho;
  if (spec.needs_invertible_state) rho.require_invertible(spec.name.data());

  CheckResult r;
  r.id = std::string(spec.name);

  switch (id) {
    case heis:
    case schr: {
      if (!c.var_product) c.var_product = variance(rho, c.a) * variance(rho, c.b);
      r.lhs = *c.var_product;
      if (id == schr) {
        if (!c.re_cov) c.re_cov = covariance(rho, c.a, c.b).real();
        r.lhs -= *c.re_cov * *c.re_cov;
      }
      r.rhs = 0.25 * c.commutator_sq();
      break;
    }
    case luo:
    case wy_schr: {
      auto& t = c.at(0.5);
      r.lhs = t.u_product;
      r.rhs = id == luo ? 0.25 * c.commutator_sq() : std::norm(t.corr_ab);
      break;
    }
    case yanagi_a: {
      const double al = require_alpha(params, spec);
      r.lhs = c.at(al).u_product;
      r.rhs = al * (1.0 - al) * c.commutator_sq();
      break;
    }
    case thm2:
    case cor2:
    case ord22: {
      const double al = require_alpha(params, spec);
      auto& t = c.at(al);
      const double k = 4.0 * al * (1.0 - al);
      if (id == thm2) {
        r.lhs = t.u_product;
        r.rhs = k * std::norm(t.corr_ab);
        break;
      }
      if (!t.im_sandwich)
        t.im_sandwich = trace_of_product(t.p.rho_alpha * c.a.matrix(), t.p.rho_complement * c.b.matrix()).imag();
      const double re = t.corr_ab.real();
      const double diff = re * re - *t.im_sandwich * *t.im_sandwich;
      if (id == ord22) {
        r.lhs = re * re;
        r.rhs = *t.im_sandwich * *t.im_sandwich;
      } else {
        r.lhs = t.u_product - k * diff;
        r.rhs = al * (1.0 - al) * c.commutator_sq();
      }
      break;
    }
    case thm3:
    case cor3:
    case thm3s: {
      const double al = require_alpha(params, spec);
      const double ga = id == cor3 ? 0.5 : require_gamma(params, spec);
      auto& t = c.at(al);
      Complex corr;
      if (id == thm3s) {
        if (!t.corr_ba) t.corr_ba = corr_alpha(rho, c.b, c.a, t.p);
        corr = ga * t.corr_ab + (1.0 - ga) * *t.corr_ba;
      } else {
        if (!t.corr_ab_flip) {
          const PowerPair q{1.0 - al, t.p.rho_complement, t.p.rho_alpha};
          t.corr_ab_flip = corr_alpha(rho, c.a, c.b, q);
        }
        corr = ga * t.corr_ab + (1.0 - ga) * *t.corr_ab_flip;
      }
      r.lhs = t.u_product;
      r.rhs = 4.0 * al * (1.0 - al) * std::norm(corr);
      break;
    }
    case thm4:
    case rem4h:
    case cor4: {
      MonotoneFunction f = MonotoneFunction::wy();
      if (id == cor4) {
        f = MonotoneFunction::wyd(require_alpha(params, spec));
      } else {
        f = require_function(params, spec);
        r.diagnostics.emplace_back("cond41_min_slack", slack_for(params));
      }
      const auto& t = c.at(f);
      r.lhs = t.u_product;
      r.rhs = id == rem4h ? f_zero(f) * c.commutator_sq() : 4.0 * f_zero(f) * std::norm(t.corr);
      break;
    }
  }

  r.margin = r.lhs - r.rhs;
  r.tolerance = params.relative_tolerance * std::max({1.0, std::abs(r.lhs), std::abs(r.rhs)});
  r.holds = r.margin >= -r.tolerance;
  if (id == thm4 || id == rem4h) {
    r.in_region = r.diagnostics.front().second >= -kScalarSlackTolerance;
  } else {
    r.in_region = in_region(id, params);
  }
  r.input_digest = finish_digest(c.prefix, id, params);
  return r;
}

CheckResult check_inequality(InequalityId id, const DensityMatrix& rho, const Observable& a, const Observable& b,
                             const CheckParams& params) {
  return PreparedInstance(rho, a, b).check(id, params);
}

}  // namespace skew
