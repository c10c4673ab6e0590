#include "skew/fixtures.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "skew/errors.hpp"

namespace skew {

namespace {

const Complex kI{0.0, 1.0};

Matrix remark_a() { return Matrix{{2.0, 2.0 - kI}, {2.0 + kI, 1.0}}; }
Matrix remark_b() { return Matrix{{2.0, kI}, {-kI, 1.0}}; }

CheckParams with_alpha(double alpha) {
  CheckParams p;
  p.alpha = alpha;
  return p;
}

std::vector<Fixture> build() {
  std::vector<Fixture> out;
  out.push_back({"REMARK_2_1",
                 "THM2 margin at alpha = 0.1, outside its hypothesis alpha >= 1/2",
                 Matrix{{1.0 / 3.0, 0.0}, {0.0, 2.0 / 3.0}},
                 remark_a(),
                 remark_b(),
                 InequalityId::thm2,
                 with_alpha(0.1),
                 -0.28332,
                 5e-5});
  out.push_back({"REMARK_2_2",
                 "|Re Corr_a|^2 - |Im Tr[rho^a A rho^(1-a) B]|^2 at alpha = 2/3 is negative",
                 Matrix{{2.0 / 7.0, 3.0 / 7.0}, {3.0 / 7.0, 5.0 / 7.0}},
                 remark_a(),
                 remark_b(),
                 InequalityId::ord22,
                 with_alpha(2.0 / 3.0),
                 -0.0548142,
                 5e-7});
  out.push_back({"EQUALITY_WY",
                 "THM2 at alpha = 1/2 with sigma_x, sigma_y is tight",
                 Matrix{{1.0 / 3.0, 0.0}, {0.0, 2.0 / 3.0}},
                 Matrix{{0.0, 1.0}, {1.0, 0.0}},
                 Matrix{{0.0, -kI}, {kI, 0.0}},
                 InequalityId::thm2,
                 with_alpha(0.5),
                 0.0,
                 1e-12});
  return out;
}

const std::vector<Fixture>& all() {
  static const std::vector<Fixture> fixtures = build();
  return fixtures;
}

}  // namespace

std::vector<std::string_view> fixture_names() {
  std::vector<std::string_view> names;
  for (const auto& f : all()) names.emplace_back(f.name);
  return names;
}

const Fixture& fixture(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  for (const auto& f : all())
    if (f.name == up) return f;
  throw UnknownIdError("unknown fixture '" + std::string(name) + "'");
}

Reproduction reproduce_example(std::string_view name) {
  const Fixture& fx = fixture(name);
  const DensityMatrix rho(fx.rho);
  const Observable a(fx.a);
  const Observable b(fx.b);
  Reproduction r;
  r.fixture = fx.name;
  r.result = check_inequality(fx.id, rho, a, b, fx.params);
  r.reference = fx.reference;
  r.tolerance = fx.reference_tolerance;
  r.matches = std::abs(r.result.margin - fx.reference) <= fx.reference_tolerance;
  return r;
}

}  // namespace skew
