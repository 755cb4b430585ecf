// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gencirc/circulant.hpp"
#include "gencirc/core.hpp"
#include "gencirc/dense.hpp"
#include "gencirc/spectral.hpp"

namespace gencirc {

// The oracle sees only dense matrices and candidate pairs. Nothing in this
// header calls into the closed-form constructions.

struct Tolerances {
  double residual = 1e-9;     ///< ||Mv - lambda v|| / (||M||_F ||v||)
  double rank_floor = 1e-10;  ///< pivot floor, relative to ||T||_F (columns normalized)
  double offdiag = 1e-10;     ///< ||offdiag(T^-1 M T)||_F / ||M||_F
  double trace = 1e-8;        ///< |sum lambda^p - tr(M^p)| / max(1, |tr(M^p)|)
  /// Pivot floor for rank(M - c_0 I), relative to ||M||_F. Nilpotent blocks
  /// have nonzero singular values far below the eigenvector floor, so this
  /// sits a few hundred ulps above roundoff.
  double kernel_floor = 1e-13;
};

struct VerificationReport {
  CaseTag case_tag = CaseTag::GENERAL_ORBIT;
  double max_relative_residual = 0.0;
  std::size_t worst_pair = 0;
  bool rank_verdict = false;
  std::size_t rank = 0;
  std::optional<double> diagonalization_offdiag_norm;
  std::array<double, 3> trace_deltas{};
  /// Degenerate decompositions: m - rank(C - c_0 I) from the dense matrix.
  std::optional<std::size_t> dense_geometric_multiplicity;
  bool passed = false;
  Tolerances tolerances_used;
};

/// ||Mv - lambda v||_2 / (||M||_F ||v||_2); when M = 0 the scale is ||v||_2.
inline double relative_residual(const CVector& mv, double m_norm, Complex lambda, const CVector& v) {
  CVector diff(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) diff[i] = mv[i] - lambda * v[i];
  const double v_norm = detail::norm2(v);
  if (v_norm == 0.0) return std::numeric_limits<double>::infinity();  // zero vector is no eigenvector
  const double scale = m_norm > 0.0 ? m_norm * v_norm : v_norm;
  return detail::norm2(diff) / scale;
}

struct ResidualFragment {
  double max_relative_residual = 0.0;
  std::size_t worst_pair = 0;
  bool passed = false;
};

inline ResidualFragment residual_check(const DenseMatrix& m, std::span<const EigenPair> pairs, double tol) {
  detail::require(m.square(), "residual_check needs a square matrix");
  const double m_norm = m.frobenius_norm();
  ResidualFragment out;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    detail::require(pairs[k].eigenvector.size() == m.rows(),
                    "eigenvector " + std::to_string(k) + " has length " + std::to_string(pairs[k].eigenvector.size()) +
                        ", matrix has size " + std::to_string(m.rows()));
    const double r = relative_residual(m * pairs[k].eigenvector, m_norm, pairs[k].eigenvalue, pairs[k].eigenvector);
    if (!(r <= out.max_relative_residual)) {
      out.max_relative_residual = r;
      out.worst_pair = k;
    }
  }
  out.passed = out.max_relative_residual <= tol;
  return out;
}

inline ResidualFragment residual_check(const DenseMatrix& m, const SpectralDecomposition& decomp, double tol) {
  return residual_check(m, std::span<const EigenPair>(decomp.pairs), tol);
}

struct DiagonalizationResult {
  std::size_t rank = 0;
  bool full_rank = false;
  std::optional<double> offdiag;  ///< absent when T is numerically singular
};

/// Solves T X = M T column by column (partial pivoting) and measures how far
/// X is from diagonal. Columns of T are normalized first; neither the rank nor
/// the diagonal structure of X depends on column scaling.
inline DiagonalizationResult diagonalization_check(const DenseMatrix& m, const DenseMatrix& t, double rank_floor) {
  detail::require(m.square() && t.square() && m.rows() == t.rows(), "diagonalization_check: shape mismatch");
  const std::size_t n = t.rows();
  DenseMatrix scaled = t;
  for (std::size_t j = 0; j < n; ++j) {
    const double norm = detail::norm2(t.column(j));
    if (norm == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) /= norm;
  }
  DiagonalizationResult out;
  const PivotedLU lu(scaled, rank_floor * scaled.frobenius_norm());
  out.rank = lu.rank();
  out.full_rank = !lu.singular() && out.rank == n;
  if (!out.full_rank) return out;

  const DenseMatrix mt = m * scaled;
  DenseMatrix x(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto column = lu.solve(mt.column(j));
    for (std::size_t i = 0; i < n; ++i) x(i, j) = (*column)[i];
  }
  CVector off;
  off.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) off.push_back(x(i, j));
    }
  }
  const double m_norm = m.frobenius_norm();
  out.offdiag = detail::norm2(off) / (m_norm > 0.0 ? m_norm : 1.0);
  return out;
}

/// |sum_j lambda_j^p - tr(M^p)| / max(1, |tr(M^p)|) for p = 1, 2, 3.
inline std::array<double, 3> trace_identity_check(const DenseMatrix& m, std::span<const Complex> spectrum) {
  detail::require(spectrum.size() == m.rows(), "trace identities need the full spectrum (" +
                                                   std::to_string(m.rows()) + " values), got " +
                                                   std::to_string(spectrum.size()));
  std::array<double, 3> deltas{};
  for (int p = 1; p <= 3; ++p) {
    Complex sum{0.0, 0.0};
    for (const auto& lambda : spectrum) {
      Complex power{1.0, 0.0};
      for (int k = 0; k < p; ++k) power *= lambda;
      sum += power;
    }
    const Complex trace = trace_power(m, p);
    deltas[static_cast<std::size_t>(p - 1)] = std::abs(sum - trace) / std::max(1.0, std::abs(trace));
  }
  return deltas;
}

/// Runs every oracle check on a decomposition of the dense matrix `c`.
inline VerificationReport verify(const DenseMatrix& c, const SpectralDecomposition& decomp, const Tolerances& tol = {}) {
  VerificationReport report;
  report.case_tag = decomp.case_tag;
  report.tolerances_used = tol;
  const std::size_t m = c.rows();

  const ResidualFragment residual = residual_check(c, decomp, tol.residual);
  report.max_relative_residual = residual.max_relative_residual;
  report.worst_pair = residual.worst_pair;

  const CVector spectrum = decomp.spectrum();
  bool traces_ok = false;
  if (spectrum.size() == m) {
    report.trace_deltas = trace_identity_check(c, spectrum);
    traces_ok = std::ranges::all_of(report.trace_deltas, [&](double delta) { return delta <= tol.trace; });
  } else {
    report.trace_deltas.fill(std::numeric_limits<double>::infinity());
  }

  if (decomp.degenerate) {
    DenseMatrix shifted = c;
    for (std::size_t i = 0; i < m; ++i) shifted(i, i) -= decomp.degenerate->c0;
    const double scale = std::max(c.frobenius_norm(), 1.0);
    const std::size_t rank = PivotedLU(shifted, tol.kernel_floor * scale).rank();
    report.dense_geometric_multiplicity = m - rank;
    report.rank = decomp.degenerate->geometric_basis.size();
    report.rank_verdict = report.rank == m - rank;
    report.passed = residual.passed && traces_ok && report.rank_verdict;
    return report;
  }

  if (decomp.pairs.size() == m) {
    const DiagonalizationResult diag = diagonalization_check(c, decomp.eigenvector_matrix(), tol.rank_floor);
    report.rank = diag.rank;
    report.rank_verdict = diag.full_rank;
    report.diagonalization_offdiag_norm = diag.offdiag;
  }
  report.passed = residual.passed && traces_ok && report.rank_verdict && report.diagonalization_offdiag_norm &&
                  *report.diagonalization_offdiag_norm <= tol.offdiag;
  return report;
}

inline VerificationReport verify(const CirculantSpec& spec, const SpectralDecomposition& decomp,
                                 const Tolerances& tol = {}) {
  return verify(to_dense(spec), decomp, tol);
}

/// Residual of one pair computed with the sparse operator; for sizes where the
/// dense matrix is too large to form.
inline double sparse_relative_residual(const FoldedSpec& c, double c_norm, const EigenPair& pair) {
  return relative_residual(c.matvec(pair.eigenvector), c_norm, pair.eigenvalue, pair.eigenvector);
}

}  // namespace gencirc
