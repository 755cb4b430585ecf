// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gencirc/core.hpp"
#include "gencirc/dense.hpp"
#include "gencirc/genperm_matrix.hpp"

namespace gencirc {

/// C(u) = sum_{r=0}^{k} c_r U^r(u). Trailing zero coefficients are allowed.
struct CirculantSpec {
  GenPermMatrix base;
  CVector coeffs;

  CirculantSpec(GenPermMatrix base_matrix, CVector coefficients)
      : base(std::move(base_matrix)), coeffs(std::move(coefficients)) {
    detail::require(!coeffs.empty(), "a circulant needs at least the coefficient c_0");
  }

  [[nodiscard]] std::size_t size() const noexcept { return base.size(); }
  [[nodiscard]] std::size_t degree() const noexcept { return coeffs.size() - 1; }
};

/// The same matrix with exactly m coefficients c'_0 .. c'_{m-1}.
///
/// `orbit_coeffs[t]` holds d coefficients b_{t,r} with C = sum_r B_r U^r on
/// orbit t, where B_r is b_{t,r} on orbit t. U^d is the scalar a_d(t) there, so
/// these come from Horner in a_d(t) and stay accurate when gcd(m, s) > 1. All
/// matrix operations use this form; for g = 1 it equals `coeffs`.
struct FoldedSpec {
  GenPermMatrix base;
  CVector coeffs;
  std::vector<CVector> orbit_coeffs;

  [[nodiscard]] std::size_t size() const noexcept { return base.size(); }

  /// Number of coefficients up to and including the last nonzero one.
  [[nodiscard]] std::size_t effective_length() const noexcept { return trimmed_length(coeffs); }

  /// The orbit-t polynomial at z; z should be an eigenvalue of U on orbit t.
  [[nodiscard]] Complex evaluate_on_orbit(std::size_t t, Complex z) const {
    detail::require(t < orbit_coeffs.size(), "orbit index " + std::to_string(t) + " out of range");
    const CVector& b = orbit_coeffs[t];
    Complex acc{0.0, 0.0};
    for (std::size_t r = b.size(); r-- > 0;) acc = acc * z + b[r];
    return acc;
  }

  [[nodiscard]] CVector matvec(const CVector& x) const {
    detail::require(x.size() == size(), "matvec: vector length " + std::to_string(x.size()) +
                                            " does not match m=" + std::to_string(size()));
    const std::size_t len = orbit_length();
    if (len == 0) return CVector(x.size());
    const std::size_t g = orbit_coeffs.size();
    // Horner with orbit-constant diagonal coefficients, which commute with U.
    CVector y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = orbit_coeffs[i % g][len - 1] * x[i];
    for (std::size_t r = len - 1; r-- > 0;) {
      y = base.matvec(y);
      for (std::size_t i = 0; i < x.size(); ++i) y[i] += orbit_coeffs[i % g][r] * x[i];
    }
    return y;
  }

  [[nodiscard]] DenseMatrix to_dense() const {
    const std::size_t m = size();
    const auto& u = base.weights();
    const std::size_t s = base.perm().shift();
    const std::size_t g = orbit_coeffs.size();
    DenseMatrix out(m, m);
    CVector v(m, Complex{1.0, 0.0});  // weights of U^r
    std::size_t offset = 0;            // r*s mod m
    const std::size_t len = orbit_length();
    for (std::size_t r = 0; r < len; ++r) {
      for (std::size_t i = 0; i < m; ++i) {
        std::size_t col = i + offset;
        if (col >= m) col -= m;
        out(i, col) += orbit_coeffs[i % g][r] * v[i];
      }
      for (std::size_t i = 0; i < m; ++i) {
        std::size_t idx = i + offset;
        if (idx >= m) idx -= m;
        v[i] *= u[idx];
      }
      offset += s;
      if (offset >= m) offset -= m;
    }
    return out;
  }

  /// ||C||_F without materializing C; O(m * d).
  [[nodiscard]] double frobenius_norm() const {
    const std::size_t m = size();
    const auto& u = base.weights();
    const std::size_t s = base.perm().shift();
    const std::size_t g = orbit_coeffs.size();
    const std::size_t len = orbit_length();
    // Powers below d land on distinct columns of each row.
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      Complex v{1.0, 0.0};
      std::size_t idx = i;
      for (std::size_t r = 0; r < len; ++r) {
        sum += std::norm(orbit_coeffs[i % g][r] * v);
        v *= u[idx];
        idx += s;
        if (idx >= m) idx -= m;
      }
    }
    return std::sqrt(sum);
  }

private:
  static std::size_t trimmed_length(const CVector& c) noexcept {
    std::size_t n = c.size();
    while (n > 0 && c[n - 1] == Complex{0.0, 0.0}) --n;
    return n;
  }

  [[nodiscard]] std::size_t orbit_length() const noexcept {
    std::size_t n = 0;
    for (const auto& b : orbit_coeffs) n = std::max(n, trimmed_length(b));
    return n;
  }
};

/// Characteristic polynomial of U: prod over orbits t of (x^d - a_d(t)).
/// Returned as m+1 coefficients, constant term first; monic.
inline CVector characteristic_polynomial(const GenPermMatrix& base) {
  const std::size_t d = base.perm().order();
  CVector poly{Complex{1.0, 0.0}};
  for (std::size_t t = 0; t < base.perm().gcd(); ++t) {
    const Complex a = base.walk_product(t, d);
    CVector next(poly.size() + d);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + d] += poly[i];
      next[i] -= a * poly[i];
    }
    poly = std::move(next);
  }
  return poly;
}

namespace detail {
/// n coefficients of sum_r c_r x^r reduced by x^n = a; Horner in a per residue.
inline CVector reduce_by_scalar_power(const CVector& c, std::size_t n, Complex a) {
  CVector out(n);
  const std::size_t blocks = (c.size() + n - 1) / n;
  for (std::size_t r = 0; r < n; ++r) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = blocks; j-- > 0;) {
      const std::size_t idx = j * n + r;
      acc = acc * a + (idx < c.size() ? c[idx] : Complex{0.0, 0.0});
    }
    out[r] = acc;
  }
  return out;
}
}  // namespace detail

/// Reduces the coefficient list below degree m.
///
/// For a shift of order m this is c'_r = sum_j c_{jm+r} prod(u)^j, evaluated
/// by Horner in prod(u). For gcd(m, s) > 1 the scalar identity U^m = prod(u) I
/// does not hold; `coeffs` is then the remainder modulo the characteristic
/// polynomial of U (Cayley-Hamilton), and `orbit_coeffs` carries the per-orbit
/// reduction by U^d = a_d(t).
inline FoldedSpec fold(const CirculantSpec& spec) {
  const std::size_t m = spec.size();
  const std::size_t d = spec.base.perm().order();
  const std::size_t g = spec.base.perm().gcd();
  const auto& c = spec.coeffs;
  FoldedSpec out{spec.base, CVector(m), {}};
  out.orbit_coeffs.reserve(g);
  for (std::size_t t = 0; t < g; ++t) {
    out.orbit_coeffs.push_back(detail::reduce_by_scalar_power(c, d, spec.base.walk_product(t, d)));
  }
  if (c.size() <= m) {
    std::copy(c.begin(), c.end(), out.coeffs.begin());
    return out;
  }
  if (d == m) {
    out.coeffs = out.orbit_coeffs.front();
    return out;
  }
  const CVector chi = characteristic_polynomial(spec.base);
  CVector rem = c;
  for (std::size_t n = rem.size(); n-- > m;) {
    const Complex lead = rem[n];
    if (lead == Complex{0.0, 0.0}) continue;
    // rem -= lead * x^{n-m} * chi; chi[m] == 1 cancels rem[n].
    for (std::size_t j = 0; j < m; ++j) {
      if (chi[j] != Complex{0.0, 0.0}) rem[n - m + j] -= lead * chi[j];
    }
    rem[n] = Complex{0.0, 0.0};
  }
  std::copy(rem.begin(), rem.begin() + static_cast<std::ptrdiff_t>(m), out.coeffs.begin());
  return out;
}

inline DenseMatrix to_dense(const CirculantSpec& spec) { return fold(spec).to_dense(); }

inline CVector matvec(const CirculantSpec& spec, const CVector& x) { return fold(spec).matvec(x); }

/// tr(C^p) for p in {1, 2, 3}, from the dense form.
inline Complex trace_power(const DenseMatrix& c, int p) {
  detail::require(c.square(), "trace of a non-square matrix");
  detail::require(p >= 1 && p <= 3, "trace_power supports p = 1, 2, 3");
  const std::size_t m = c.rows();
  if (p == 1) return c.trace();
  if (p == 2) {
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) sum += c(i, j) * c(j, i);
    }
    return sum;
  }
  const DenseMatrix c2 = c * c;
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) sum += c2(i, j) * c(j, i);
  }
  return sum;
}

inline Complex trace_power(const CirculantSpec& spec, int p) { return trace_power(to_dense(spec), p); }

}  // namespace gencirc
