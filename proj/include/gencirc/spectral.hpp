// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gencirc/circulant.hpp"
#include "gencirc/core.hpp"
#include "gencirc/dense.hpp"
#include "gencirc/genperm_matrix.hpp"
#include "gencirc/shift_group.hpp"

namespace gencirc {

/// Structural case of (s, m) that selected the eigenvector formula.
enum class CaseTag { S_EQUALS_1, COPRIME, DIVISOR, GENERAL_ORBIT, DEGENERATE_ZERO_WEIGHT };

inline constexpr std::string_view to_string(CaseTag tag) noexcept {
  switch (tag) {
    case CaseTag::S_EQUALS_1: return "S_EQUALS_1";
    case CaseTag::COPRIME: return "COPRIME";
    case CaseTag::DIVISOR: return "DIVISOR";
    case CaseTag::GENERAL_ORBIT: return "GENERAL_ORBIT";
    case CaseTag::DEGENERATE_ZERO_WEIGHT: return "DEGENERATE_ZERO_WEIGHT";
  }
  return "UNKNOWN";
}

inline std::optional<CaseTag> parse_case_tag(std::string_view name) {
  for (auto tag : {CaseTag::S_EQUALS_1, CaseTag::COPRIME, CaseTag::DIVISOR, CaseTag::GENERAL_ORBIT,
                   CaseTag::DEGENERATE_ZERO_WEIGHT}) {
    if (to_string(tag) == name) return tag;
  }
  return std::nullopt;
}

struct EigenPair {
  Complex eigenvalue;
  CVector eigenvector;
  std::size_t t = 0;  ///< orbit representative
  std::size_t p = 0;  ///< phase index: eigenvalue of U is mu_t * omega^p
};

/// What can be said when some weight is zero. Orbits containing a zero weight
/// make U nilpotent there; C restricted to them has the single eigenvalue c_0.
struct DegenerateInfo {
  Complex c0;
  /// d times the number of orbits that contain a zero weight (m when g = 1).
  std::size_t algebraic_multiplicity = 0;
  /// Indices x with e_x in ker(C - c_0 I), restricted to those orbits.
  std::vector<std::size_t> geometric_basis;
  std::vector<std::size_t> nilpotent_orbits;
};

struct SpectralDecomposition {
  CaseTag case_tag = CaseTag::GENERAL_ORBIT;
  Complex omega{1.0, 0.0};  ///< exp(2 pi i / d)
  std::vector<EigenPair> pairs;
  std::optional<DegenerateInfo> degenerate;
  std::vector<std::string> diagnostics;

  /// Full eigenvalue multiset (m values), including the c_0 block of a
  /// degenerate decomposition.
  [[nodiscard]] CVector spectrum() const {
    CVector out;
    out.reserve(pairs.size());
    for (const auto& pair : pairs) {
      if (degenerate && std::ranges::find(degenerate->nilpotent_orbits, pair.t) != degenerate->nilpotent_orbits.end()) {
        continue;
      }
      out.push_back(pair.eigenvalue);
    }
    if (degenerate) out.insert(out.end(), degenerate->algebraic_multiplicity, degenerate->c0);
    return out;
  }

  [[nodiscard]] DenseMatrix eigenvector_matrix() const {
    std::vector<CVector> columns;
    columns.reserve(pairs.size());
    for (const auto& pair : pairs) columns.push_back(pair.eigenvector);
    return DenseMatrix::from_columns(columns);
  }
};

/// An eigenvector of U for the eigenvalue lambda (coprime case), anchored so
/// that the last entry is 1.
struct BaseEigenvector {
  CVector entries;
  std::size_t anchor_index = 0;
  Complex lambda;
};

/// Outcome of the s = 2 closed-form fast path after validation.
struct ValidatedBase {
  BaseEigenvector vector;
  bool corrected = false;       ///< closed form disagreed; recursive result used
  double max_deviation = 0.0;   ///< max_i |closed_i - recursive_i| / |recursive_i|
};

struct UEigenvalue {
  std::size_t t = 0;
  std::size_t p = 0;
  Complex value;
};

struct SpectralOptions {
  /// Root branch per orbit: orbit t uses mu_t * omega^{root_branch[t]} in place
  /// of the principal d-th root mu_t. Empty means principal everywhere.
  std::vector<std::size_t> root_branch;
  /// Relative agreement required between the s = 2 closed form and the
  /// recursive solve before the closed form is trusted.
  double s2_tolerance = 1e-10;
  /// Bypass automatic dispatch. Ignored when a weight is zero.
  std::optional<CaseTag> forced_case;
};

namespace detail {

/// Table of exp(2 pi i k / n) for k = 0..n-1.
inline CVector root_table(std::size_t n) {
  CVector table(n);
  for (std::size_t k = 0; k < n; ++k) table[k] = unit_root(n, static_cast<long long>(k));
  return table;
}

/// Branch-adjusted orbit roots mu_t, t = 0..g-1.
inline CVector orbit_roots(const GenPermMatrix& u, const SpectralOptions& options) {
  const auto& perm = u.perm();
  const std::size_t g = perm.gcd();
  const std::size_t d = perm.order();
  require(options.root_branch.empty() || options.root_branch.size() == g,
          "root_branch must name one branch per orbit");
  CVector roots(g);
  for (std::size_t t = 0; t < g; ++t) {
    // For a single orbit the product is taken in index order, as prod(u).
    const Complex a = g == 1 ? u.prod() : u.walk_product(t, d);
    roots[t] = principal_root(a, d);
    if (!options.root_branch.empty()) roots[t] *= unit_root(d, static_cast<long long>(options.root_branch[t]));
  }
  return roots;
}

/// Inverse of s modulo m (gcd(s, m) == 1).
inline std::size_t mod_inverse(std::size_t s, std::size_t m) {
  if (m == 1) return 0;
  std::int64_t r0 = static_cast<std::int64_t>(m), r1 = static_cast<std::int64_t>(s % m);
  std::int64_t x0 = 0, x1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(x0, x1) = std::pair{x1, x0 - q * x1};
  }
  require(r0 == 1, "shift is not invertible modulo m");
  const auto mm = static_cast<std::int64_t>(m);
  return static_cast<std::size_t>(((x0 % mm) + mm) % mm);
}

inline void require_nonzero_weights(const GenPermMatrix& u, std::string_view what) {
  require(!u.has_zero_weight(), std::string(what) + ": a zero weight has no closed-form eigenvector basis; use decompose()");
}

}  // namespace detail

/// Eigenvalues of U: lambda_{t,p} = mu_t omega^p, t-major.
///
/// mu_t is the principal d-th root of the orbit product a_d(t) (or the branch
/// chosen in `options`). Zero weights are allowed here: the values are then the
/// correct algebraic eigenvalues, but no eigenvector basis exists.
inline std::vector<UEigenvalue> u_eigenvalues(const GenPermMatrix& u, const SpectralOptions& options = {}) {
  const std::size_t d = u.perm().order();
  const CVector roots = detail::orbit_roots(u, options);
  const CVector phases = detail::root_table(d);
  std::vector<UEigenvalue> out;
  out.reserve(u.size());
  for (std::size_t t = 0; t < roots.size(); ++t) {
    for (std::size_t p = 0; p < d; ++p) out.push_back({t, p, roots[t] * phases[p]});
  }
  return out;
}

/// Eigenvalues of C: the coefficient polynomial at every eigenvalue of U.
inline std::vector<UEigenvalue> c_eigenvalues(const CirculantSpec& spec, const SpectralOptions& options = {}) {
  const FoldedSpec folded = fold(spec);
  auto values = u_eigenvalues(spec.base, options);
  for (auto& v : values) v.value = folded.evaluate_on_orbit(v.t, v.value);
  return values;
}

/// s = 1: columns P_{pi_1} [1, omega^j lambda / u_m, omega^{2j} lambda^2 / (u_1 u_m), ...]^T
/// (1-based weights), paired with lambda omega^j.
inline SpectralDecomposition eigenvectors_s1(const GenPermMatrix& u, const SpectralOptions& options = {}) {
  if (u.perm().shift() != 1) throw WrongCaseError("eigenvectors_s1 requires s = 1");
  detail::require_nonzero_weights(u, "eigenvectors_s1");
  const std::size_t m = u.size();
  const auto& w = u.weights();
  const Complex lambda = detail::orbit_roots(u, options)[0];
  const CVector phases = detail::root_table(m);

  // Unpermuted column for j = 0: base[0] = 1, base[l] = lambda^l / (u_m u_1 ... u_{l-1}).
  CVector base(m);
  base[0] = 1.0;
  if (m > 1) base[1] = lambda / w[m - 1];
  for (std::size_t l = 2; l < m; ++l) base[l] = base[l - 1] * lambda / w[l - 2];

  SpectralDecomposition out;
  out.case_tag = CaseTag::S_EQUALS_1;
  out.omega = detail::unit_root(m, 1);
  out.pairs.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    CVector column(m);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t l = (i + 1) % m;  // (P x)_i = x_{i+1}
      column[i] = phases[(l * j) % m] * base[l];
    }
    out.pairs.push_back({lambda * phases[j], std::move(column), 0, j});
  }
  return out;
}

/// Solves U T = lambda T around the single cycle from the anchor t_m = 1.
inline BaseEigenvector base_eigenvector_coprime(const GenPermMatrix& u, const SpectralOptions& options = {}) {
  if (u.perm().gcd() != 1) throw WrongCaseError("base_eigenvector_coprime requires gcd(s, m) = 1");
  detail::require_nonzero_weights(u, "base_eigenvector_coprime");
  const std::size_t m = u.size();
  const auto& w = u.weights();
  BaseEigenvector out{CVector(m), m - 1, detail::orbit_roots(u, options)[0]};
  // Row x of U T = lambda T reads u_x t_{x+s} = lambda t_x.
  std::size_t x = m - 1;
  out.entries[x] = 1.0;
  for (std::size_t step = 1; step < m; ++step) {
    const std::size_t next = u.perm().step(x);
    out.entries[next] = out.entries[x] * out.lambda / w[x];
    x = next;
  }
  return out;
}

/// s = 2, m odd: entries straight from the closed expressions (1-based):
///   t_{2l}   = lambda^l / (u_{2(l-1)} (u_2 u_4 ... u_{2(l-2)}) u_m),             l = 1..(m-1)/2
///   t_{2l+1} = lambda^{(m+2l+1)/2} / ((u_1 u_3 ... u_{2l-1}) (u_2 ... u_{m-5}) u_{m-3} u_{m-1} u_m),
///                                                                                 l = 0..(m-3)/2
/// with u_0 = 1 and empty products equal to 1; t_m = 1. Not validated here.
inline BaseEigenvector s2_closed_form(const GenPermMatrix& u, const SpectralOptions& options = {}) {
  const std::size_t m = u.size();
  if (u.perm().shift() != 2 || m % 2 == 0) throw WrongCaseError("s2_closed_form requires s = 2 and odd m");
  detail::require_nonzero_weights(u, "s2_closed_form");
  const auto& w = u.weights();
  auto weight = [&](long long one_based) -> Complex {
    return one_based <= 0 ? Complex{1.0, 0.0} : w[static_cast<std::size_t>(one_based - 1)];
  };
  // Product of u_first, u_{first+2}, ..., u_last; empty when last < first.
  auto stride2 = [&](long long first, long long last) {
    Complex acc{1.0, 0.0};
    for (long long i = first; i <= last; i += 2) acc *= weight(i);
    return acc;
  };
  const Complex lambda = detail::orbit_roots(u, options)[0];
  const auto mm = static_cast<long long>(m);
  BaseEigenvector out{CVector(m), m - 1, lambda};
  out.entries[m - 1] = 1.0;
  for (long long l = 1; l <= (mm - 1) / 2; ++l) {
    const Complex denom = weight(2 * (l - 1)) * stride2(2, 2 * (l - 2)) * weight(mm);
    out.entries[static_cast<std::size_t>(2 * l - 1)] = detail::int_power(lambda, static_cast<std::uint64_t>(l)) / denom;
  }
  for (long long l = 0; l <= (mm - 3) / 2; ++l) {
    const Complex denom =
        stride2(1, 2 * l - 1) * stride2(2, mm - 5) * weight(mm - 3) * weight(mm - 1) * weight(mm);
    const auto exponent = static_cast<std::uint64_t>((mm + 2 * l + 1) / 2);
    out.entries[static_cast<std::size_t>(2 * l)] = detail::int_power(lambda, exponent) / denom;
  }
  return out;
}

/// Runs the s = 2 closed form and checks it against the recursive solve.
/// On disagreement beyond the tolerance the recursive vector is returned.
inline ValidatedBase validated_s2_base(const GenPermMatrix& u, const SpectralOptions& options = {}) {
  BaseEigenvector closed = s2_closed_form(u, options);
  BaseEigenvector recursive = base_eigenvector_coprime(u, options);
  double deviation = 0.0;
  for (std::size_t i = 0; i < closed.entries.size(); ++i) {
    deviation = std::max(deviation, std::abs(closed.entries[i] - recursive.entries[i]) / std::abs(recursive.entries[i]));
  }
  if (!(deviation <= options.s2_tolerance)) return {std::move(recursive), true, deviation};
  return {std::move(closed), false, deviation};
}

/// gcd(s, m) = 1: column k of Lambda_s F has entries t_i omega^{(i+1) k}
/// (0-based i, so the anchor row stays 1) and belongs to lambda omega^{k s}.
/// Pairs are returned in phase order p = k s mod m.
inline SpectralDecomposition eigenvectors_coprime(const GenPermMatrix& u, const SpectralOptions& options = {}) {
  const auto& perm = u.perm();
  if (perm.gcd() != 1) throw WrongCaseError("eigenvectors_coprime requires gcd(s, m) = 1");
  detail::require_nonzero_weights(u, "eigenvectors_coprime");
  const std::size_t m = u.size();

  SpectralDecomposition out;
  out.case_tag = CaseTag::COPRIME;
  out.omega = detail::unit_root(m, 1);

  BaseEigenvector base;
  if (perm.shift() == 2 && m % 2 == 1) {
    ValidatedBase checked = validated_s2_base(u, options);
    if (checked.corrected) {
      out.diagnostics.push_back("s=2 closed form deviates from the recursive solve by " +
                                std::to_string(checked.max_deviation) + " (relative); recursive result used");
    }
    base = std::move(checked.vector);
  } else {
    base = base_eigenvector_coprime(u, options);
  }

  const CVector phases = detail::root_table(m);
  const std::size_t s_inv = detail::mod_inverse(perm.shift(), m);
  out.pairs.reserve(m);
  for (std::size_t p = 0; p < m; ++p) {
    const std::size_t k = (p * s_inv) % m;
    CVector column(m);
    for (std::size_t i = 0; i < m; ++i) column[i] = base.entries[i] * phases[((i + 1) * k) % m];
    out.pairs.push_back({base.lambda * phases[p], std::move(column), 0, p});
  }
  return out;
}

namespace detail {

/// alpha_j = mu^j / a_j(t) along the orbit of t, j = 0..d-1.
inline CVector orbit_profile(const GenPermMatrix& u, const Orbit& orbit, Complex mu) {
  const auto& w = u.weights();
  CVector alpha(orbit.members.size());
  alpha[0] = 1.0;
  for (std::size_t j = 1; j < alpha.size(); ++j) alpha[j] = alpha[j - 1] * mu / w[orbit.members[j - 1]];
  return alpha;
}

}  // namespace detail

/// s | m, k0 = m / s: for orbit t and l = 0..k0-1 the vector has block p equal
/// to omega^{(p+1) l} lambda_{t,0}^p / a_p(t) e_t, paired with lambda_{t,0} omega^l.
inline SpectralDecomposition eigenvectors_divisor(const GenPermMatrix& u, const SpectralOptions& options = {}) {
  const auto& perm = u.perm();
  const std::size_t m = u.size();
  if (perm.shift() == 0 || m % perm.shift() != 0) throw WrongCaseError("eigenvectors_divisor requires s | m");
  detail::require_nonzero_weights(u, "eigenvectors_divisor");
  const std::size_t d = perm.order();
  const CVector roots = detail::orbit_roots(u, options);
  const CVector phases = detail::root_table(d);

  SpectralDecomposition out;
  out.case_tag = CaseTag::DIVISOR;
  out.omega = detail::unit_root(d, 1);
  out.pairs.reserve(m);
  for (const auto& orbit : perm.orbits()) {
    const std::size_t t = orbit.representative;
    const CVector alpha = detail::orbit_profile(u, orbit, roots[t]);
    for (std::size_t l = 0; l < d; ++l) {
      CVector v(m);
      for (std::size_t p = 0; p < d; ++p) v[orbit.members[p]] = phases[((p + 1) * l) % d] * alpha[p];
      out.pairs.push_back({roots[t] * phases[l], std::move(v), t, l});
    }
  }
  return out;
}

/// Any shift: for each orbit and p = 0..d-1 the vector supported on the orbit
/// with entry omega^{j p} mu_t^j / a_j(t) at the j-th member, so that
/// U v = mu_t omega^p v.
inline SpectralDecomposition eigenvectors_general_orbit(const GenPermMatrix& u, const SpectralOptions& options = {}) {
  detail::require_nonzero_weights(u, "eigenvectors_general_orbit");
  const auto& perm = u.perm();
  const std::size_t m = u.size();
  const std::size_t d = perm.order();
  const CVector roots = detail::orbit_roots(u, options);
  const CVector phases = detail::root_table(d);

  SpectralDecomposition out;
  out.case_tag = CaseTag::GENERAL_ORBIT;
  out.omega = detail::unit_root(d, 1);
  out.pairs.reserve(m);
  for (const auto& orbit : perm.orbits()) {
    const std::size_t t = orbit.representative;
    const CVector alpha = detail::orbit_profile(u, orbit, roots[t]);
    for (std::size_t p = 0; p < d; ++p) {
      CVector v(m);
      for (std::size_t j = 0; j < d; ++j) v[orbit.members[j]] = phases[(j * p) % d] * alpha[j];
      out.pairs.push_back({roots[t] * phases[p], std::move(v), t, p});
    }
  }
  return out;
}

/// The automatic case choice: s = 1, then gcd = 1, then s | m, then any orbit.
inline CaseTag select_case(const GenPermMatrix& u) {
  if (u.has_zero_weight()) return CaseTag::DEGENERATE_ZERO_WEIGHT;
  const auto& perm = u.perm();
  if (perm.shift() == 1) return CaseTag::S_EQUALS_1;
  if (perm.gcd() == 1) return CaseTag::COPRIME;
  if (perm.shift() != 0 && u.size() % perm.shift() == 0) return CaseTag::DIVISOR;
  return CaseTag::GENERAL_ORBIT;
}

/// Eigendecomposition of U itself for a given case.
inline SpectralDecomposition decompose_u(const GenPermMatrix& u, CaseTag tag, const SpectralOptions& options = {}) {
  switch (tag) {
    case CaseTag::S_EQUALS_1: return eigenvectors_s1(u, options);
    case CaseTag::COPRIME: return eigenvectors_coprime(u, options);
    case CaseTag::DIVISOR: return eigenvectors_divisor(u, options);
    case CaseTag::GENERAL_ORBIT: return eigenvectors_general_orbit(u, options);
    case CaseTag::DEGENERATE_ZERO_WEIGHT: break;
  }
  throw WrongCaseError("the degenerate path is only reachable through decompose()");
}

namespace detail {

inline SpectralDecomposition decompose_degenerate(const CirculantSpec& spec, const SpectralOptions& options) {
  const GenPermMatrix& u = spec.base;
  const auto& perm = u.perm();
  const auto& w = u.weights();
  const std::size_t m = u.size();
  const std::size_t d = perm.order();
  const FoldedSpec folded = fold(spec);

  // C - c_0 I = N^j (c_j + c_{j+1} N + ...) on a nilpotent block, with j the
  // first r >= 1 having c_r != 0; the second factor is invertible there.
  std::size_t first_active = std::numeric_limits<std::size_t>::max();
  for (std::size_t r = 1; r < spec.coeffs.size(); ++r) {
    if (spec.coeffs[r] != Complex{0.0, 0.0}) {
      first_active = r;
      break;
    }
  }

  SpectralDecomposition out;
  out.case_tag = CaseTag::DEGENERATE_ZERO_WEIGHT;
  out.omega = unit_root(d, 1);
  DegenerateInfo info;
  info.c0 = spec.coeffs[0];

  const CVector phases = root_table(d);
  for (const auto& orbit : perm.orbits()) {
    const std::size_t t = orbit.representative;
    const bool nilpotent = std::ranges::any_of(orbit.members, [&](std::size_t x) { return w[x] == Complex{0.0, 0.0}; });
    if (!nilpotent) {
      Complex mu = principal_root(u.walk_product(t, d), d);
      if (!options.root_branch.empty()) mu *= unit_root(d, static_cast<long long>(options.root_branch.at(t)));
      const CVector alpha = orbit_profile(u, orbit, mu);
      for (std::size_t p = 0; p < d; ++p) {
        CVector v(m);
        for (std::size_t j = 0; j < d; ++j) v[orbit.members[j]] = phases[(j * p) % d] * alpha[j];
        out.pairs.push_back({folded.evaluate_on_orbit(t, mu * phases[p]), std::move(v), t, p});
      }
      continue;
    }
    info.nilpotent_orbits.push_back(t);
    info.algebraic_multiplicity += d;
    // e_x is in ker N^j iff one of the j weights preceding x on the orbit is zero.
    for (std::size_t j = 0; j < d; ++j) {
      std::size_t distance = 0;
      for (std::size_t back = 1; back <= d; ++back) {
        if (w[orbit.members[(j + d - back % d) % d]] == Complex{0.0, 0.0}) {
          distance = back;
          break;
        }
      }
      if (distance <= first_active) {
        CVector e(m);
        e[orbit.members[j]] = 1.0;
        info.geometric_basis.push_back(orbit.members[j]);
        out.pairs.push_back({info.c0, std::move(e), t, j});
      }
    }
  }
  std::ranges::sort(info.geometric_basis);
  out.degenerate = std::move(info);
  return out;
}

}  // namespace detail

/// Eigenpairs of C(u).
///
/// Eigenvectors are those of U for the applicable case; each eigenvalue is the
/// coefficient polynomial at the paired U eigenvalue. With a zero weight the
/// closed forms do not apply and the result is tagged DEGENERATE_ZERO_WEIGHT:
/// orbits holding a zero contribute the eigenvalue c_0 and the standard basis
/// vectors spanning its eigenspace there; the remaining orbits keep their
/// orbit eigenpairs.
inline SpectralDecomposition decompose(const CirculantSpec& spec, const SpectralOptions& options = {}) {
  const CaseTag automatic = select_case(spec.base);
  if (automatic == CaseTag::DEGENERATE_ZERO_WEIGHT) return detail::decompose_degenerate(spec, options);
  const CaseTag tag = options.forced_case.value_or(automatic);
  SpectralDecomposition out = decompose_u(spec.base, tag, options);
  const FoldedSpec folded = fold(spec);
  for (auto& pair : out.pairs) pair.eigenvalue = folded.evaluate_on_orbit(pair.t, pair.eigenvalue);
  return out;
}

}  // namespace gencirc
