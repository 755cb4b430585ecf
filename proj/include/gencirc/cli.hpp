// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <iterator>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gencirc/circulant.hpp"
#include "gencirc/instance_io.hpp"
#include "gencirc/spectral.hpp"
#include "gencirc/verify.hpp"

namespace gencirc::cli {

/// Process exit codes.
enum ExitCode : int { kOk = 0, kUsage = 1, kVerificationFailed = 2 };

inline std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// ---------------------------------------------------------------------------
// example

inline const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"worked-3x3", "ramp-5x5-s2", "ramp-9x9-s3"};
  return names;
}

/// Built-in instances. worked-3x3 is a degree-5 circulant that folds to 2U;
/// the 5x5 and 9x9 instances use u = (1, ..., m) and coefficients (0, 1), so C = U.
inline std::optional<InstanceDocument> example_instance(const std::string& name) {
  auto ramp = [](std::size_t m) {
    CVector u(m);
    for (std::size_t i = 0; i < m; ++i) u[i] = static_cast<double>(i + 1);
    return u;
  };
  if (name == "worked-3x3") {
    return InstanceDocument{3, 1, {-2.0, -3.0, 1.0},
                            {{0.0, 1.0}, {-1.0, 0.0}, {3.0, 0.0}, {0.0, -1.0 / 6.0}, {0.5, 0.0}, {-0.5, 0.0}},
                            std::nullopt};
  }
  if (name == "ramp-5x5-s2") return InstanceDocument{5, 2, ramp(5), {0.0, 1.0}, std::nullopt};
  if (name == "ramp-9x9-s3") return InstanceDocument{9, 3, ramp(9), {0.0, 1.0}, std::nullopt};
  return std::nullopt;
}

inline int cmd_example(const std::string& name, std::ostream& out, std::ostream& err) {
  const auto doc = example_instance(name);
  if (!doc) {
    err << "unknown example '" << name << "'; known examples:";
    for (const auto& n : example_names()) err << ' ' << n;
    err << '\n';
    return kUsage;
  }
  out << emit_instance(*doc);
  return kOk;
}

// ---------------------------------------------------------------------------
// spectrum / verify

inline int cmd_spectrum(std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    const InstanceDocument doc = parse_instance(read_all(in));
    const SpectralDecomposition decomp = decompose(doc.to_spec());
    out << emit_spectrum(decomp, doc.m, doc.s % doc.m);
    return kOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsage;
}

inline std::string render_report(const VerificationReport& r, const SpectralDecomposition& decomp) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"passed\": " << (r.passed ? "true" : "false") << ",\n";
  out << "  \"case\": " << io::quote(std::string(to_string(r.case_tag))) << ",\n";
  out << "  \"max_relative_residual\": " << io::format_real(r.max_relative_residual) << ",\n";
  out << "  \"worst_pair\": " << r.worst_pair << ",\n";
  out << "  \"rank_verdict\": " << (r.rank_verdict ? "true" : "false") << ",\n";
  out << "  \"rank\": " << r.rank << ",\n";
  out << "  \"diagonalization_offdiag_norm\": "
      << (r.diagonalization_offdiag_norm ? io::format_real(*r.diagonalization_offdiag_norm) : "null") << ",\n";
  out << "  \"trace_deltas\": [" << io::format_real(r.trace_deltas[0]) << ", " << io::format_real(r.trace_deltas[1])
      << ", " << io::format_real(r.trace_deltas[2]) << "],\n";
  if (decomp.degenerate) {
    const auto& info = *decomp.degenerate;
    out << "  \"degenerate\": {\"eigenvalue\": " << io::format_complex(info.c0)
        << ", \"algebraic_multiplicity\": " << info.algebraic_multiplicity << ", \"geometric_basis\": [";
    for (std::size_t i = 0; i < info.geometric_basis.size(); ++i) out << (i ? ", " : "") << info.geometric_basis[i];
    out << "], \"dense_geometric_multiplicity\": "
        << (r.dense_geometric_multiplicity ? std::to_string(*r.dense_geometric_multiplicity) : "null") << "},\n";
  }
  if (!decomp.diagnostics.empty()) {
    out << "  \"diagnostics\": [";
    for (std::size_t i = 0; i < decomp.diagnostics.size(); ++i) out << (i ? ", " : "") << io::quote(decomp.diagnostics[i]);
    out << "],\n";
  }
  const auto& t = r.tolerances_used;
  out << "  \"tolerances\": {\"residual\": " << io::format_real(t.residual)
      << ", \"rank_floor\": " << io::format_real(t.rank_floor) << ", \"offdiag\": " << io::format_real(t.offdiag)
      << ", \"trace\": " << io::format_real(t.trace) << ", \"kernel_floor\": " << io::format_real(t.kernel_floor)
      << "}\n";
  out << "}\n";
  return out.str();
}

struct VerifyFlags {
  double tol = 1e-9;
  /// Previously computed spectrum document to check instead of recomputing.
  std::optional<std::string> cached_spectrum;
};

/// Exit 0 when every oracle check passes, 2 on a failed check, 1 on bad input.
inline int cmd_verify(std::istream& in, std::ostream& out, std::ostream& err, const VerifyFlags& flags = {}) {
  try {
    const InstanceDocument doc = parse_instance(read_all(in));
    const CirculantSpec spec = doc.to_spec();
    const SpectralDecomposition decomp =
        flags.cached_spectrum ? parse_spectrum(*flags.cached_spectrum) : decompose(spec);
    for (const auto& pair : decomp.pairs) {
      if (pair.eigenvector.size() != doc.m) {
        err << "error: spectrum eigenvector length " << pair.eigenvector.size() << " does not match m=" << doc.m << '\n';
        return kUsage;
      }
    }
    Tolerances tol;
    tol.residual = flags.tol;
    const VerificationReport report = verify(spec, decomp, tol);
    out << render_report(report, decomp);
    if (!report.passed) {
      err << "verification failed\n";
      return kVerificationFailed;
    }
    return kOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsage;
}

// ---------------------------------------------------------------------------
// bench

struct BenchFlags {
  std::vector<std::size_t> m_list{64};
  std::string case_name = "coprime";
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  std::size_t oracle_cap = 512;
  /// Coefficient count k + 1 of the generated circulants.
  std::size_t coefficients = 4;
};

namespace detail {

/// Shift for the requested case, chosen at random among the admissible ones.
inline std::optional<std::size_t> pick_shift(const std::string& case_name, std::size_t m, std::mt19937_64& rng) {
  std::vector<std::size_t> candidates;
  if (case_name == "s1") {
    candidates.push_back(1);
  } else {
    for (std::size_t s = 2; s < m; ++s) {
      const std::size_t g = std::gcd(s, m);
      if (case_name == "coprime" && g == 1) candidates.push_back(s);
      if (case_name == "divisor" && m % s == 0) candidates.push_back(s);
      if (case_name == "general" && g != 1 && m % s != 0) candidates.push_back(s);
    }
    // m = 2 has no shift >= 2; the only coprime shift left is 1.
    if (case_name == "coprime" && candidates.empty()) candidates.push_back(1);
  }
  if (candidates.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  return candidates[pick(rng)];
}

inline std::string normalize_case_name(const std::string& name) {
  if (name == "s1" || name == "S_EQUALS_1") return "s1";
  if (name == "coprime" || name == "COPRIME") return "coprime";
  if (name == "divisor" || name == "DIVISOR") return "divisor";
  if (name == "general" || name == "GENERAL_ORBIT") return "general";
  return {};
}

/// Random instance: weight moduli log-uniform in [0.5, 2], uniform phases,
/// coefficients uniform in the unit box.
inline CirculantSpec random_spec(std::size_t m, std::size_t s, std::size_t coefficients, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> log_mod(std::log(0.5), std::log(2.0));
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  CVector u(m);
  for (auto& w : u) w = std::polar(std::exp(log_mod(rng)), phase(rng));
  CVector c(coefficients);
  for (auto& v : c) v = {box(rng), box(rng)};
  return {GenPermMatrix(m, s, std::move(u)), std::move(c)};
}

}  // namespace detail

inline constexpr const char* kBenchHeader = "m,case,closed_form_micros,dense_oracle_micros,max_residual";

/// CSV timing table: one row per (m, trial). Rows for m above the oracle cap
/// leave the oracle column empty and report the residual over 32 sampled pairs.
inline int cmd_bench(const BenchFlags& flags, std::ostream& out, std::ostream& err) {
  const std::string case_name = detail::normalize_case_name(flags.case_name);
  if (case_name.empty()) {
    err << "unknown case '" << flags.case_name << "'; expected one of: s1, coprime, divisor, general\n";
    return kUsage;
  }
  if (flags.m_list.empty()) {
    err << "--m-list is empty\n";
    return kUsage;
  }
  for (std::size_t m : flags.m_list) {
    if (m < 2) {
      err << "m values must be >= 2 (got " << m << ")\n";
      return kUsage;
    }
  }
  if (flags.coefficients == 0) {
    err << "at least one coefficient is required\n";
    return kUsage;
  }
  using clock = std::chrono::steady_clock;
  auto micros = [](clock::duration d) { return std::chrono::duration_cast<std::chrono::microseconds>(d).count(); };

  out << kBenchHeader << '\n';
  for (std::size_t m : flags.m_list) {
    for (std::size_t trial = 0; trial < flags.trials; ++trial) {
      // Each row has its own stream so rows do not depend on each other.
      std::seed_seq seq{flags.seed, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(trial)};
      std::mt19937_64 rng(seq);
      const auto s = detail::pick_shift(case_name, m, rng);
      if (!s) {
        err << "no shift of case '" << case_name << "' exists for m=" << m << '\n';
        return kUsage;
      }
      const CirculantSpec spec = detail::random_spec(m, *s, flags.coefficients, rng);

      const auto start = clock::now();
      const SpectralDecomposition decomp = decompose(spec);
      const auto closed_micros = micros(clock::now() - start);

      std::string oracle_column;
      double max_residual = 0.0;
      if (m <= flags.oracle_cap) {
        const auto oracle_start = clock::now();
        const DenseMatrix dense = to_dense(spec);
        const ResidualFragment residual = residual_check(dense, decomp, 1e-9);
        const DiagonalizationResult diag = diagonalization_check(dense, decomp.eigenvector_matrix(), 1e-10);
        oracle_column = std::to_string(micros(clock::now() - oracle_start));
        max_residual = residual.max_relative_residual;
        if (!diag.full_rank) max_residual = std::numeric_limits<double>::infinity();
      } else {
        const FoldedSpec folded = fold(spec);
        const double c_norm = folded.frobenius_norm();
        std::uniform_int_distribution<std::size_t> pick(0, decomp.pairs.size() - 1);
        for (int k = 0; k < 32; ++k) {
          max_residual = std::max(max_residual, sparse_relative_residual(folded, c_norm, decomp.pairs[pick(rng)]));
        }
      }
      char residual_text[32];
      std::snprintf(residual_text, sizeof residual_text, "%.3e", max_residual);
      out << m << ',' << to_string(decomp.case_tag) << ',' << closed_micros << ',' << oracle_column << ','
          << residual_text << '\n';
    }
  }
  return kOk;
}

}  // namespace gencirc::cli
