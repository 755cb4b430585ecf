// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace gencirc {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Raised when an argument lies outside the domain of an operation
/// (index out of range, length mismatch, invalid orbit representative).
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when a case-specific construction is asked for a shift that does
/// not satisfy its structural precondition (e.g. s != 1 for the s = 1 formula).
class WrongCaseError : public std::logic_error {
public:
  explicit WrongCaseError(const std::string& what) : std::logic_error(what) {}
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw DomainError(message);
}

/// exp(2*pi*i*k/n), with k reduced mod n first so large exponents stay exact.
inline Complex unit_root(std::size_t n, long long k) {
  const long long nn = static_cast<long long>(n);
  long long r = k % nn;
  if (r < 0) r += nn;
  if (r == 0) return {1.0, 0.0};
  // Exact values at the quarter turns keep small examples free of 1e-17 noise.
  if (4 * r == nn) return {0.0, 1.0};
  if (2 * r == nn) return {-1.0, 0.0};
  if (4 * r == 3 * nn) return {0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(nn);
  return {std::cos(angle), std::sin(angle)};
}

/// Principal n-th root: argument in (-pi/n, pi/n].
inline Complex principal_root(Complex z, std::size_t n) {
  if (n == 1) return z;
  const double modulus = std::abs(z);
  if (modulus == 0.0) return {0.0, 0.0};
  double arg = std::arg(z);
  if (arg == -std::numbers::pi) arg = std::numbers::pi;  // -0.0 imaginary part
  return std::polar(std::pow(modulus, 1.0 / static_cast<double>(n)), arg / static_cast<double>(n));
}

inline double norm2(const CVector& x) {
  double scale = 0.0;
  for (const auto& v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (const auto& v : x) sum += std::norm(v / scale);
  return scale * std::sqrt(sum);
}

}  // namespace detail
}  // namespace gencirc
