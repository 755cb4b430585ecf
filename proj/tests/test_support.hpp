// SPDX-License-Identifier: Apache-2.0
// Independent oracles for the test suite. Nothing here calls the closed forms.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gencirc/gencirc.hpp"

namespace gencirc::testing {

using EigenMatrix = Eigen::MatrixXcd;

inline EigenMatrix to_eigen(const DenseMatrix& a) {
  EigenMatrix out(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
  }
  return out;
}

/// Dense U built entry by entry from the definition (U x)_i = u_i x_{(i+s) mod m}.
inline EigenMatrix naive_u(std::size_t m, std::size_t s, const CVector& u) {
  EigenMatrix out = EigenMatrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>((i + s) % m)) = u[i];
  return out;
}

/// sum_r c_r U^r by repeated dense multiplication, no folding.
inline EigenMatrix naive_circulant(std::size_t m, std::size_t s, const CVector& u, const CVector& c) {
  const EigenMatrix base = naive_u(m, s, u);
  EigenMatrix power = EigenMatrix::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  EigenMatrix sum = EigenMatrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (const auto& cr : c) {
    sum += cr * power;
    power = power * base;
  }
  return sum;
}

inline CVector eigen_eigenvalues(const EigenMatrix& a) {
  Eigen::ComplexEigenSolver<EigenMatrix> solver(a, false);
  CVector out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

/// Largest distance in an optimal-ish greedy matching of two multisets.
/// Each value of `a` takes the nearest unused value of `b`.
inline double multiset_distance(CVector a, CVector b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& x : a) {
    std::size_t best = b.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(x - b[j]);
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_dist);
  }
  return worst;
}

/// Clusters values lying within `radius` of each other (single linkage) and
/// returns (centroid, count) per cluster, sorted.
inline std::vector<std::pair<Complex, std::size_t>> cluster(const CVector& values, double radius) {
  const std::size_t n = values.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(values[i] - values[j]) <= radius) parent[find(i)] = find(j);
    }
  }
  std::vector<std::pair<Complex, std::size_t>> out;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (slot[root] == n) {
      slot[root] = out.size();
      out.push_back({Complex{0.0, 0.0}, 0});
    }
    out[slot[root]].first += values[i];
    out[slot[root]].second += 1;
  }
  for (auto& [centroid, count] : out) centroid /= static_cast<double>(count);
  std::ranges::sort(out, [](const auto& a, const auto& b) {
    if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
    return a.first.imag() < b.first.imag();
  });
  return out;
}

/// Weight with modulus log-uniform in [lo, hi] and uniform phase.
inline Complex random_weight(std::mt19937_64& rng, double lo = 0.5, double hi = 2.0) {
  std::uniform_real_distribution<double> log_mod(std::log(lo), std::log(hi));
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
  return std::polar(std::exp(log_mod(rng)), phase(rng));
}

inline CVector random_weights(std::size_t m, std::mt19937_64& rng) {
  CVector u(m);
  for (auto& w : u) w = random_weight(rng);
  return u;
}

inline CVector random_coeffs(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  CVector c(n);
  for (auto& v : c) v = {box(rng), box(rng)};
  return c;
}

/// ||b - alpha a|| / ||b|| for the least-squares alpha; zero iff b is a
/// scalar multiple of a.
inline double collinearity_defect(const CVector& a, const CVector& b) {
  Complex inner{0.0, 0.0};
  double na = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    inner += std::conj(a[i]) * b[i];
    na += std::norm(a[i]);
  }
  const Complex alpha = inner / na;
  double num = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(b[i] - alpha * a[i]);
    nb += std::norm(b[i]);
  }
  return std::sqrt(num / nb);
}

inline double max_abs_diff(const EigenMatrix& a, const DenseMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      worst = std::max(worst, std::abs(a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - b(i, j)));
    }
  }
  return worst;
}

/// Residual of one pair against an Eigen matrix, scaled by ||A||_F ||v||.
inline double eigen_residual(const EigenMatrix& a, Complex lambda, const CVector& v) {
  Eigen::VectorXcd x(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) x(static_cast<Eigen::Index>(i)) = v[i];
  const double scale = std::max(a.norm(), 1e-300) * x.norm();
  return (a * x - lambda * x).norm() / scale;
}

}  // namespace gencirc::testing
