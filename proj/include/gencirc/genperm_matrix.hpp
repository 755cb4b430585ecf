// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gencirc/core.hpp"
#include "gencirc/dense.hpp"
#include "gencirc/shift_group.hpp"

namespace gencirc {

/// Weights of the r-th power: v_i = u_i u_{pi(i)} ... u_{pi^{r-1}(i)}.
struct PowerWeights {
  std::size_t r = 0;
  CVector v;
};

/// Partial product of the weights along an orbit, starting at t:
/// a_j(t) = u_t u_{pi(t)} ... u_{pi^{j-1}(t)}.
struct OrbitProduct {
  std::size_t t = 0;
  std::size_t j = 0;
  Complex value{1.0, 0.0};
};

class GenPermMatrix;

/// U^k written as factor * reduced. See GenPermMatrix::power.
struct MatrixPower;

/// Generalized permutation matrix U(u) = D_u P_{pi_s}, stored sparsely.
///
/// Row i has its only nonzero at column pi_s(i) with value u_i, so
/// (U x)_i = u_i x_{(i + s) mod m}.
class GenPermMatrix {
public:
  GenPermMatrix(ShiftPermutation perm, CVector weights)
      : perm_(std::move(perm)), u_(std::move(weights)) {
    detail::require(u_.size() == perm_.modulus(),
                    "weight vector has length " + std::to_string(u_.size()) + ", expected m=" +
                        std::to_string(perm_.modulus()));
    prod_ = Complex{1.0, 0.0};
    for (const auto& w : u_) prod_ *= w;
  }

  GenPermMatrix(std::size_t m, std::size_t s, CVector weights)
      : GenPermMatrix(ShiftPermutation(m, s), std::move(weights)) {}

  static GenPermMatrix identity(std::size_t m) { return {ShiftPermutation(m, 0), CVector(m, Complex{1.0, 0.0})}; }

  [[nodiscard]] std::size_t size() const noexcept { return perm_.modulus(); }
  [[nodiscard]] const ShiftPermutation& perm() const noexcept { return perm_; }
  [[nodiscard]] const CVector& weights() const noexcept { return u_; }
  /// Product of all weights.
  [[nodiscard]] Complex prod() const noexcept { return prod_; }

  [[nodiscard]] bool has_zero_weight() const noexcept {
    for (const auto& w : u_) {
      if (w == Complex{0.0, 0.0}) return true;
    }
    return false;
  }

  [[nodiscard]] CVector matvec(const CVector& x) const {
    detail::require(x.size() == size(), "matvec: vector length " + std::to_string(x.size()) +
                                            " does not match m=" + std::to_string(size()));
    CVector y(x.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = u_[i] * x[perm_.step(i)];
    return y;
  }

  [[nodiscard]] DenseMatrix to_dense() const {
    DenseMatrix out(size(), size());
    for (std::size_t i = 0; i < size(); ++i) out(i, perm_.step(i)) = u_[i];
    return out;
  }

  /// Product of j consecutive weights walking the orbit from `start`.
  /// Any start index and any j >= 0 are accepted; j may exceed the orbit length.
  [[nodiscard]] Complex walk_product(std::size_t start, std::size_t j) const {
    detail::require(start < size(), "walk start outside [0, m)");
    Complex acc{1.0, 0.0};
    std::size_t x = start;
    for (std::size_t i = 0; i < j; ++i) {
      acc *= u_[x];
      x = perm_.step(x);
    }
    return acc;
  }

  /// a_j(t) for an orbit representative t in [0, g) and 1 <= j <= d.
  [[nodiscard]] OrbitProduct orbit_product(std::size_t t, std::size_t j) const {
    detail::require(t < perm_.gcd(), "index " + std::to_string(t) + " is not an orbit representative");
    detail::require(j >= 1 && j <= perm_.order(), "orbit product length must lie in [1, d]");
    return {t, j, walk_product(t, j)};
  }

  /// Weights v_r of U^r (Hadamard product of r shifted copies of u).
  [[nodiscard]] PowerWeights power_weights(std::size_t r) const {
    PowerWeights out{r, CVector(size(), Complex{1.0, 0.0})};
    // Accumulate one shifted copy at a time: v <- v .* (u shifted by j*s).
    std::size_t offset = 0;
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t i = 0; i < size(); ++i) {
        std::size_t idx = i + offset;
        if (idx >= size()) idx -= size();
        out.v[i] *= u_[idx];
      }
      offset += perm_.shift();
      if (offset >= size()) offset -= size();
    }
    return out;
  }

  [[nodiscard]] MatrixPower power(std::uint64_t k) const;

  friend bool operator==(const GenPermMatrix& a, const GenPermMatrix& b) {
    return a.perm_ == b.perm_ && a.u_ == b.u_;
  }

private:
  ShiftPermutation perm_;
  CVector u_;
  Complex prod_{1.0, 0.0};
};

struct MatrixPower {
  /// U^k == factor * reduced.to_dense().
  Complex factor{1.0, 0.0};
  GenPermMatrix reduced;
  /// Exponent carried by `reduced` when the scalar reduction applies
  /// (k mod m); otherwise k itself.
  std::uint64_t exponent = 0;
  /// True when U^m = prod(u) I was used, i.e. the shift has order m.
  bool scalar_reduction = false;
};

namespace detail {

inline Complex int_power(Complex base, std::uint64_t e) {
  Complex acc{1.0, 0.0};
  while (e != 0) {
    if (e & 1U) acc *= base;
    base *= base;
    e >>= 1U;
  }
  return acc;
}

}  // namespace detail

/// U^k as a scalar times a generalized permutation matrix.
///
/// When the shift has order m, k = q m + r and U^k = prod(u)^q U^r; the
/// scalar is kept apart from the weights of U^r. With fewer than m steps per
/// orbit (gcd(m, s) > 1) U^m is diagonal but not scalar, so the weights of
/// U^k are formed directly from the orbit products and the factor is 1.
inline MatrixPower GenPermMatrix::power(std::uint64_t k) const {
  const std::size_t m = size();
  const std::size_t d = perm_.order();
  if (d == m) {
    const std::uint64_t q = k / m;
    const std::uint64_t r = k % m;
    auto weights = power_weights(static_cast<std::size_t>(r)).v;
    return {detail::int_power(prod_, q), GenPermMatrix(perm_.power(static_cast<std::int64_t>(r)), std::move(weights)), r,
            true};
  }
  const std::uint64_t q = k / d;
  const std::size_t r = static_cast<std::size_t>(k % d);
  CVector full_orbit(perm_.gcd());
  for (std::size_t t = 0; t < perm_.gcd(); ++t) full_orbit[t] = detail::int_power(walk_product(t, d), q);
  auto weights = power_weights(r).v;
  for (std::size_t i = 0; i < m; ++i) weights[i] *= full_orbit[perm_.orbit_of(i)];
  return {Complex{1.0, 0.0},
          GenPermMatrix(perm_.power(static_cast<std::int64_t>(k % m)), std::move(weights)), k, false};
}

}  // namespace gencirc
