#include "skew/random.hpp"

#include <cmath>
#include <numbers>

#include "skew/errors.hpp"

namespace skew {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

Matrix gaussian_matrix(KeyedStream& s, std::size_t n) {
  Matrix g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double re = s.normal();
      const double im = s.normal();
      g(i, j) = Complex{re, im};
    }
  return g;
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

KeyedStream::KeyedStream(std::uint64_t seed, std::uint64_t trial)
    : key_(mix64(mix64(seed) ^ mix64(trial + kGolden))) {}

KeyedStream::result_type KeyedStream::operator()() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double KeyedStream::uniform() {
  // (u + 0.5) / 2^53 lies strictly inside (0, 1).
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double KeyedStream::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

DensityMatrix sample_density(KeyedStream& stream, std::size_t n, double mix_floor) {
  if (n < 2) throw DomainError("sample_density needs n >= 2");
  if (!(mix_floor > 0.0 && mix_floor < 1.0)) throw DomainError("mix floor must lie in (0, 1)");
  const Matrix g = gaussian_matrix(stream, n);
  Matrix w = g * g.adjoint();
  const double tr = w.trace().real();
  const double scale = (1.0 - mix_floor) / tr;
  const double shift = mix_floor / static_cast<double>(n);
  Matrix rho(n);
  for (std::size_t i = 0; i < n; ++i) {
    rho(i, i) = w(i, i).real() * scale + shift;
    for (std::size_t j = i + 1; j < n; ++j) {
      rho(i, j) = w(i, j) * scale;
      rho(j, i) = std::conj(rho(i, j));
    }
  }
  // Remove the last ulps of trace error on the diagonal.
  const double err = rho.trace().real() - 1.0;
  for (std::size_t i = 0; i < n; ++i) rho(i, i) -= err / static_cast<double>(n);
  return DensityMatrix(std::move(rho));
}

Observable sample_observable(KeyedStream& stream, std::size_t n, double scale) {
  if (n < 2) throw DomainError("sample_observable needs n >= 2");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("observable scale must be finite and > 0");
  const Matrix m = gaussian_matrix(stream, n);
  Matrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = scale * m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = scale * 0.5 * (m(i, j) + std::conj(m(j, i)));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return Observable(std::move(h));
}

}  // namespace skew
