#include <doctest.h>

#include <Eigen/QR>
#include <cmath>

#include "oracle/eigen_oracle.hpp"
#include "skew/errors.hpp"
#include "skew/random.hpp"
#include "skew/skew_information.hpp"
#include "support/matrices.hpp"

using namespace skew;
using namespace skew::testing;

namespace {

const Complex I1(0.0, 1.0);

DensityMatrix rho13() { return DensityMatrix(third_two_thirds()); }
DensityMatrix maximally_mixed(std::size_t n) {
  Matrix m = Matrix::identity(n);
  m *= Complex(1.0 / static_cast<double>(n));
  return DensityMatrix(m);
}

struct Instance {
  DensityMatrix rho;
  Observable a;
  Observable b;
};

Instance random_instance(std::uint64_t trial, std::size_t n) {
  KeyedStream s(2024, trial);
  auto rho = sample_density(s, n, 0.05);
  auto a = sample_observable(s, n);
  auto b = sample_observable(s, n);
  return {std::move(rho), std::move(a), std::move(b)};
}

Matrix random_unitary(std::uint64_t trial, std::size_t n) {
  KeyedStream s(77, trial);
  oracle::Mat g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = {s.normal(), s.normal()};
  Eigen::HouseholderQR<oracle::Mat> qr(g);
  return from_eigen(qr.householderQ() * oracle::Mat::Identity(g.rows(), g.cols()));
}

Matrix conjugate(const Matrix& u, const Matrix& m) { return u * m * u.adjoint(); }

// Hermitian part, to absorb the rounding of U M U^dagger.
Matrix hermitian_part(const Matrix& m) {
  Matrix h = m + m.adjoint();
  h *= Complex(0.5);
  return h;
}

}  // namespace

TEST_SUITE("variance and covariance") {
  TEST_CASE("examples") {
    CHECK(variance(rho13(), Observable{sigma_x()}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(variance(rho13(), Observable{Matrix::identity(2)}) == 0.0);
    CHECK(variance(maximally_mixed(2), Observable{sigma_z()}) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK(std::abs(covariance(rho13(), Observable{sigma_x()}, Observable{sigma_x()}) - 1.0) < 1e-15);
    CHECK(std::abs(covariance(rho13(), Observable{sigma_x()}, Observable{Matrix::identity(2)})) == 0.0);
    CHECK(std::abs(covariance(rho13(), Observable{sigma_x()}, Observable{sigma_y()}) - (-I1 / 3.0)) < 1e-15);
  }

  TEST_CASE("dimension mismatch") {
    CHECK_THROWS_AS(variance(rho13(), Observable{Matrix::identity(3)}), DimensionError);
    CHECK_THROWS_AS(covariance(rho13(), Observable{sigma_x()}, Observable{Matrix::identity(3)}), DimensionError);
  }

  TEST_CASE("properties on random inputs") {
    for (std::uint64_t t = 0; t < 100; ++t) {
      const auto [rho, a, b] = random_instance(t, 2 + t % 7);
      const double v = variance(rho, a);
      const Complex cab = covariance(rho, a, b);
      const Complex caa = covariance(rho, a, a);
      CHECK(v >= -1e-12);
      CHECK(std::abs(caa - v) < 1e-12 * std::max(1.0, v));
      CHECK(std::abs(caa.imag()) < 1e-12 * std::max(1.0, v));
      CHECK(std::abs(covariance(rho, b, a) - std::conj(cab)) < 1e-12 * std::max(1.0, std::abs(cab)));
      CHECK(v == doctest::Approx(oracle::variance(oracle::to_eigen(rho.matrix()), oracle::to_eigen(a.matrix())))
                     .epsilon(1e-11));
      // Tr rho[A, B] = 2i Im Cov(A, B)
      const Complex comm = commutator_expectation(rho, a, b);
      CHECK(std::abs(comm - 2.0 * I1 * cab.imag()) < 1e-11 * std::max(1.0, std::abs(comm)));
      CHECK(std::abs(comm.real()) < 1e-11 * std::max(1.0, std::abs(comm)));
    }
  }
}

TEST_SUITE("WYD skew information") {
  TEST_CASE("examples at alpha = 1/2") {
    const auto rho = rho13();
    const Observable sx{sigma_x()};
    CHECK(wyd_skew_information(rho, sx, 0.5) == doctest::Approx(1.0 - 2.0 * std::sqrt(2.0) / 3.0).epsilon(1e-13));
    CHECK(wyd_j(rho, sx, 0.5) == doctest::Approx(1.0 + 2.0 * std::sqrt(2.0) / 3.0).epsilon(1e-14));
    CHECK(u_alpha(rho, sx, 0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  }

  TEST_CASE("examples at alpha = 0.3") {
    // High-precision values of the one-pair spectral sum for this input.
    const auto rho = rho13();
    const Observable sx{sigma_x()};
    CHECK(wyd_skew_information(rho, sx, 0.3) == doctest::Approx(0.0481169313142).epsilon(1e-11));
    CHECK(wyd_j(rho, sx, 0.3) == doctest::Approx(1.9518830686858).epsilon(1e-12));
    CHECK(u_alpha(rho, sx, 0.3) == doctest::Approx(0.3064614552424).epsilon(1e-11));
    const double p = 1.0 / 3.0, q = 2.0 / 3.0;
    const double pair = (std::pow(p, 0.3) - std::pow(q, 0.3)) * (std::pow(p, 0.7) - std::pow(q, 0.7));
    CHECK(wyd_skew_information(rho, sx, 0.3) == doctest::Approx(pair).epsilon(1e-12));
  }

  TEST_CASE("trivial cases") {
    for (std::size_t n : {2u, 3u, 5u}) {
      const auto rho = maximally_mixed(n);
      const auto h = random_instance(n, n).a;
      for (double a : {0.0, 0.2, 0.5, 1.0}) {
        CHECK(std::abs(wyd_skew_information(rho, h, a)) < 1e-14);
        CHECK(std::abs(u_alpha(rho, h, a)) < 1e-6);
      }
    }
    const Observable id{Matrix::identity(2)};
    CHECK(wyd_j(rho13(), id, 0.4) == 0.0);
    CHECK(u_alpha(maximally_mixed(2), Observable{sigma_z()}, 0.3) == 0.0);
  }

  TEST_CASE("alpha outside [0, 1]") {
    CHECK_THROWS_AS(wyd_skew_information(rho13(), Observable{sigma_x()}, -0.1), DomainError);
    CHECK_THROWS_AS(wyd_j(rho13(), Observable{sigma_x()}, 1.5), DomainError);
    CHECK_THROWS_AS(u_alpha(rho13(), Observable{sigma_x()}, std::nan("")), DomainError);
    CHECK_THROWS_AS(PowerPair::of(rho13(), 2.0), DomainError);
  }

  TEST_CASE("endpoints vanish for invertible states") {
    for (std::uint64_t t = 0; t < 20; ++t) {
      const auto [rho, a, b] = random_instance(t, 2 + t % 5);
      const double scale = std::max(1.0, variance(rho, a));
      CHECK(std::abs(wyd_skew_information(rho, a, 0.0)) < 1e-12 * scale);
      CHECK(std::abs(wyd_skew_information(rho, a, 1.0)) < 1e-12 * scale);
    }
  }

  TEST_CASE("singular state at alpha = 0 uses the support projector") {
    // Pure state |0><0|: rho^0 = |0><0|, so I_0(sigma_x) = V - Tr[P X0 rho X0] = 1 - 0.
    const DensityMatrix pure(Matrix{{1.0, 0.0}, {0.0, 0.0}});
    const Observable sx{sigma_x()};
    CHECK(wyd_skew_information(pure, sx, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(wyd_skew_information(pure, sx, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
  }

  TEST_CASE("agrees with the Eigen oracle") {
    for (std::uint64_t t = 0; t < 200; ++t) {
      const std::size_t n = 2 + t % 7;
      const auto [rho, a, b] = random_instance(t, n);
      const auto er = oracle::to_eigen(rho.matrix());
      const auto ea = oracle::to_eigen(a.matrix());
      const double scale = std::max(1.0, variance(rho, a));
      for (double alpha : {0.0, 0.1, 0.37, 0.5, 0.8, 1.0}) {
        CHECK(std::abs(wyd_skew_information(rho, a, alpha) - oracle::wyd_skew(er, ea, alpha)) < 1e-10 * scale);
        const Complex ref = oracle::corr_alpha(er, ea, oracle::to_eigen(b.matrix()), alpha);
        CHECK(std::abs(corr_alpha(rho, a, b, alpha) - ref) < 1e-10 * std::max(1.0, std::abs(ref)));
      }
    }
  }

  TEST_CASE("trace formula agrees with the spectral sum") {
    for (std::uint64_t t = 0; t < 300; ++t) {
      const std::size_t n = 2 + t % 7;
      const auto [rho, a, b] = random_instance(t + 1000, n);
      const double v = variance(rho, a);
      for (int k = 0; k <= 10; ++k) {
        const double alpha = 0.1 * k;
        const double trace = wyd_skew_information(rho, a, alpha);
        CHECK(std::abs(trace - spectral::wyd_skew_information(rho, a, alpha)) < 1e-10 * std::max(1.0, v));
        // J exceeds its spectral lower bound by sum_i 2 l_i |h_ii|^2 >= 0.
        CHECK(wyd_j(rho, a, alpha) >= spectral::wyd_j_lower_bound(rho, a, alpha) - 1e-10 * std::max(1.0, v));
        const Complex c = corr_alpha(rho, a, b, alpha);
        CHECK(std::abs(c - spectral::corr_alpha(rho, a, b, alpha)) < 1e-10 * std::max(1.0, std::abs(c)));
      }
    }
  }

  TEST_CASE("spectral lower bound gap") {
    const auto [rho, a, b] = random_instance(5, 4);
    const auto basis = to_eigenbasis(center(rho, a).matrix(), rho.spectrum());
    double gap = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) gap += 2.0 * rho.spectrum().eigenvalues[i] * std::norm(basis(i, i));
    CHECK(wyd_j(rho, a, 0.3) - spectral::wyd_j_lower_bound(rho, a, 0.3) == doctest::Approx(gap).epsilon(1e-10));
  }

  TEST_CASE("identities J = 2V - I and U = sqrt(IJ), ordering chain") {
    for (std::uint64_t t = 0; t < 300; ++t) {
      const auto [rho, a, b] = random_instance(t + 2000, 2 + t % 7);
      for (double alpha : {0.0, 0.05, 0.25, 0.5, 0.9}) {
        const auto q = skew_quantities(rho, a, alpha);
        const double scale = std::max(1.0, q.variance);
        CHECK(std::abs(q.j - (2.0 * q.variance - q.skew)) < 1e-10 * scale);
        CHECK(std::abs(q.u - std::sqrt(q.skew * q.j)) < 1e-10 * scale);
        CHECK(q.skew >= 0.0);
        CHECK(q.skew <= q.u + 1e-10 * scale);
        CHECK(q.u <= q.variance + 1e-10 * scale);
        CHECK(q.skew == wyd_skew_information(rho, a, alpha));
        CHECK(q.u == u_alpha(rho, a, alpha));
      }
    }
  }

  TEST_CASE("alpha symmetry") {
    for (std::uint64_t t = 0; t < 200; ++t) {
      const auto [rho, a, b] = random_instance(t + 3000, 2 + t % 7);
      const double scale = std::max(1.0, variance(rho, a));
      for (double alpha : {0.0, 0.1, 0.3, 0.45}) {
        CHECK(std::abs(wyd_skew_information(rho, a, alpha) - wyd_skew_information(rho, a, 1.0 - alpha)) <
              1e-11 * scale);
        CHECK(std::abs(wyd_j(rho, a, alpha) - wyd_j(rho, a, 1.0 - alpha)) < 1e-11 * scale);
        CHECK(std::abs(u_alpha(rho, a, alpha) - u_alpha(rho, a, 1.0 - alpha)) < 1e-11 * scale);
      }
    }
  }

  TEST_CASE("unitary covariance") {
    for (std::uint64_t t = 0; t < 100; ++t) {
      const std::size_t n = 2 + t % 7;
      const auto [rho, a, b] = random_instance(t + 4000, n);
      const Matrix u = random_unitary(t, n);
      const DensityMatrix rho_u(hermitian_part(conjugate(u, rho.matrix())));
      const Observable a_u(hermitian_part(conjugate(u, a.matrix())));
      const Observable b_u(hermitian_part(conjugate(u, b.matrix())));
      const double scale = std::max({1.0, variance(rho, a), variance(rho, b)});
      CHECK(std::abs(variance(rho_u, a_u) - variance(rho, a)) < 1e-9 * scale);
      CHECK(std::abs(covariance(rho_u, a_u, b_u) - covariance(rho, a, b)) < 1e-9 * scale);
      for (double alpha : {0.2, 0.5, 0.7}) {
        CHECK(std::abs(wyd_skew_information(rho_u, a_u, alpha) - wyd_skew_information(rho, a, alpha)) < 1e-9 * scale);
        CHECK(std::abs(wyd_j(rho_u, a_u, alpha) - wyd_j(rho, a, alpha)) < 1e-9 * scale);
        CHECK(std::abs(u_alpha(rho_u, a_u, alpha) - u_alpha(rho, a, alpha)) < 1e-9 * scale);
        CHECK(std::abs(corr_alpha(rho_u, a_u, b_u, alpha) - corr_alpha(rho, a, b, alpha)) < 1e-9 * scale);
        const AlphaGamma p{alpha, 0.3};
        CHECK(std::abs(corr_alpha_gamma(rho_u, a_u, b_u, p) - corr_alpha_gamma(rho, a, b, p)) < 1e-9 * scale);
        CHECK(std::abs(corr_sym(rho_u, a_u, b_u, p) - corr_sym(rho, a, b, p)) < 1e-9 * scale);
      }
    }
  }

  TEST_CASE("clamping is reported") {
    // A commuting observable has I = 0 up to rounding; whatever was clamped is named.
    const auto rho = rho13();
    const auto q = skew_quantities(rho, Observable{sigma_z()}, 0.3);
    CHECK(q.skew >= 0.0);
    CHECK(q.u >= 0.0);
    for (const auto& name : q.clamped) CHECK((name == "I" || name == "U" || name == "variance"));
  }
}

TEST_SUITE("correlation measures") {
  TEST_CASE("corr_alpha examples") {
    const auto rho = rho13();
    const Observable sx{sigma_x()}, sy{sigma_y()};
    CHECK(std::abs(corr_alpha(rho, sx, sy, 0.5) - (-I1 / 3.0)) < 1e-14);
    CHECK(std::abs(corr_alpha(rho, sx, sy, 0.1) - Complex(0.0, -0.598097506845774)) < 1e-13);
    CHECK(std::abs(corr_alpha(rho, sx, sy, 0.3) - Complex(0.0, -0.464453459789)) < 1e-11);
    const double p = 1.0 / 3.0, q = 2.0 / 3.0;
    const Complex closed =
        I1 * ((2.0 * p - 1.0) - std::pow(p, 0.1) * std::pow(q, 0.9) + std::pow(q, 0.1) * std::pow(p, 0.9));
    CHECK(std::abs(corr_alpha(rho, sx, sy, 0.1) - closed) < 1e-14);
  }

  TEST_CASE("corr_alpha(H, H) = I") {
    for (std::uint64_t t = 0; t < 100; ++t) {
      const auto [rho, a, b] = random_instance(t + 5000, 2 + t % 7);
      for (double alpha : {0.0, 0.3, 0.5, 0.8}) {
        const double i = wyd_skew_information(rho, a, alpha);
        const double scale = std::max(1.0, variance(rho, a));
        const Complex c = corr_alpha(rho, a, a, alpha);
        CHECK(std::abs(c - i) < 1e-12 * scale);
        CHECK(std::abs(corr_alpha_gamma(rho, a, a, {alpha, 0.27}) - i) < 1e-12 * scale);
        CHECK(std::abs(corr_sym(rho, a, a, {alpha, 0.83}) - i) < 1e-12 * scale);
      }
    }
  }

  TEST_CASE("centering invariance and the imaginary-part identity") {
    for (std::uint64_t t = 0; t < 100; ++t) {
      const auto [rho, a, b] = random_instance(t + 6000, 2 + t % 7);
      const Observable a0 = center(rho, a), b0 = center(rho, b);
      for (double alpha : {0.1, 0.5, 0.9}) {
        const Complex c = corr_alpha(rho, a, b, alpha);
        const double scale = std::max({1.0, std::abs(c), variance(rho, a), variance(rho, b)});
        CHECK(std::abs(corr_alpha(rho, a0, b0, alpha) - c) < 1e-12 * scale);
        const auto pp = PowerPair::of(rho, alpha);
        const Complex sandwich = trace_of_product(pp.rho_alpha * a.matrix() * pp.rho_complement, b.matrix());
        const Complex comm = commutator_expectation(rho, a, b);
        CHECK(std::abs(c.imag() - ((comm / (2.0 * I1)).real() - sandwich.imag())) < 1e-12 * scale);
      }
    }
  }

  TEST_CASE("corr_alpha at 1/2 is the Wigner-Yanase correlation") {
    for (std::uint64_t t = 0; t < 50; ++t) {
      const auto [rho, a, b] = random_instance(t + 7000, 2 + t % 7);
      const Matrix s = fractional_power(rho, 0.5);
      const Complex wy = trace_of_product(rho.matrix() * a.matrix(), b.matrix()) -
                         trace_of_product(s * a.matrix() * s, b.matrix());
      CHECK(std::abs(corr_alpha(rho, a, b, 0.5) - wy) < 1e-12 * std::max(1.0, std::abs(wy)));
      // U at 1/2 against V^2 - (V - I)^2 evaluated literally.
      const double v = variance(rho, a);
      const double i = wyd_skew_information(rho, a, 0.5);
      CHECK(u_alpha(rho, a, 0.5) == doctest::Approx(std::sqrt(std::max(0.0, v * v - (v - i) * (v - i)))).epsilon(1e-8));
    }
  }

  TEST_CASE("corr_alpha_gamma") {
    const auto rho = rho13();
    const Observable sx{sigma_x()}, sy{sigma_y()};
    CHECK(std::abs(corr_alpha_gamma(rho, sx, sy, {0.1, 0.5}) - (-I1 / 3.0)) < 1e-14);
    for (std::uint64_t t = 0; t < 50; ++t) {
      const auto [r, a, b] = random_instance(t + 8000, 2 + t % 7);
      for (double alpha : {0.0, 0.2, 0.6}) {
        CHECK(corr_alpha_gamma(r, a, b, {alpha, 1.0}) == corr_alpha(r, a, b, alpha));
        const Complex expect = 0.3 * corr_alpha(r, a, b, alpha) + 0.7 * corr_alpha(r, a, b, 1.0 - alpha);
        CHECK(std::abs(corr_alpha_gamma(r, a, b, {alpha, 0.3}) - expect) < 1e-12 * std::max(1.0, std::abs(expect)));
      }
    }
  }

  TEST_CASE("corr_sym") {
    const auto rho = rho13();
    const Observable sx{sigma_x()}, sy{sigma_y()};
    CHECK(std::abs(corr_sym(rho, sx, sy, {0.3, 0.5})) < 1e-15);
    CHECK(std::abs(corr_alpha(rho, sx, sy, 0.3) + corr_alpha(rho, sy, sx, 0.3)) < 1e-15);
    for (std::uint64_t t = 0; t < 50; ++t) {
      const auto [r, a, b] = random_instance(t + 9000, 2 + t % 7);
      for (double alpha : {0.0, 0.4, 0.75}) {
        CHECK(corr_sym(r, a, b, {alpha, 1.0}) == corr_alpha(r, a, b, alpha));
        const Complex ab = corr_sym(r, a, b, {alpha, 0.5});
        const double scale = std::max(1.0, std::abs(ab));
        CHECK(std::abs(ab - corr_sym(r, b, a, {alpha, 0.5})) < 1e-12 * scale);
        // At gamma = 1/2 the symmetric measure is the real part of Corr_alpha.
        CHECK(std::abs(ab - corr_alpha(r, a, b, alpha).real()) < 1e-12 * scale);
      }
    }
  }

  TEST_CASE("corr_sym is not symmetric away from gamma = 1/2") {
    const auto rho = rho13();
    const Observable sx{sigma_x()}, sy{sigma_y()};
    const Complex ab = corr_sym(rho, sx, sy, {0.3, 0.8});
    const Complex ba = corr_sym(rho, sy, sx, {0.3, 0.8});
    CHECK(std::abs(ab - ba) > 0.1);
    CHECK(std::abs(ab + ba) < 1e-15);
  }
}
