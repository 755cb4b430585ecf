// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gencirc/circulant.hpp"
#include "gencirc/core.hpp"
#include "gencirc/genperm_matrix.hpp"
#include "gencirc/spectral.hpp"

namespace gencirc {

/// Malformed or inconsistent input document.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// On-disk instance: JSON object with lowercase fields m, s, u, coeffs and an
/// optional integer seed. Complex numbers are two-element arrays [re, im].
struct InstanceDocument {
  std::size_t m = 0;
  std::size_t s = 0;
  CVector u;
  CVector coeffs;
  std::optional<std::int64_t> seed;

  [[nodiscard]] CirculantSpec to_spec() const { return {GenPermMatrix(m, s, u), coeffs}; }

  friend bool operator==(const InstanceDocument&, const InstanceDocument&) = default;
};

namespace io {

/// %.17g: enough digits for a lossless double round trip.
inline std::string format_real(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_complex(Complex z) { return "[" + format_real(z.real()) + ", " + format_real(z.imag()) + "]"; }

inline std::string format_vector(const CVector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != 0) out += ", ";
    out += format_complex(v[i]);
  }
  return out + "]";
}

inline std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

inline Complex parse_complex(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(where + ": complex values are encoded as [re, im]");
  }
  const double re = j[0].get<double>();
  const double im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) throw ParseError(where + ": non-finite component");
  return {re, im};
}

inline CVector parse_complex_list(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of [re, im] pairs");
  CVector out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_complex(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::size_t parse_count(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  const auto& v = doc.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ParseError(std::string("field '") + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

inline nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace io

namespace detail {

inline InstanceDocument parse_instance_unchecked(const std::string& text) {
  const nlohmann::json doc = io::parse_json(text);
  if (!doc.is_object()) throw ParseError("instance document must be a JSON object");
  InstanceDocument out;
  out.m = io::parse_count(doc, "m");
  out.s = io::parse_count(doc, "s");
  if (out.m == 0) throw ParseError("m must be positive");
  // s = m names the same permutation as s = 0 and is accepted.
  if (out.s > out.m) throw ParseError("s=" + std::to_string(out.s) + " outside [0, m)");
  if (!doc.contains("u")) throw ParseError("missing field 'u'");
  if (!doc.contains("coeffs")) throw ParseError("missing field 'coeffs'");
  out.u = io::parse_complex_list(doc.at("u"), "u");
  out.coeffs = io::parse_complex_list(doc.at("coeffs"), "coeffs");
  if (out.u.size() != out.m) {
    throw ParseError("u has " + std::to_string(out.u.size()) + " entries, expected m=" + std::to_string(out.m));
  }
  if (out.coeffs.empty()) throw ParseError("coeffs must hold at least c_0");
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_integer()) throw ParseError("seed must be an integer");
    out.seed = doc.at("seed").get<std::int64_t>();
  }
  return out;
}

}  // namespace detail

inline InstanceDocument parse_instance(const std::string& text) {
  try {
    return detail::parse_instance_unchecked(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed instance: ") + e.what());
  }
}

inline std::string emit_instance(const InstanceDocument& doc) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"m\": " << doc.m << ",\n";
  out << "  \"s\": " << doc.s << ",\n";
  out << "  \"u\": " << io::format_vector(doc.u) << ",\n";
  out << "  \"coeffs\": " << io::format_vector(doc.coeffs);
  if (doc.seed) out << ",\n  \"seed\": " << *doc.seed;
  out << "\n}\n";
  return out.str();
}

/// Spectrum document: case tag, omega and the m records in (t, p) order.
inline std::string emit_spectrum(const SpectralDecomposition& decomp, std::size_t m, std::size_t s) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"case\": " << io::quote(std::string(to_string(decomp.case_tag))) << ",\n";
  out << "  \"m\": " << m << ",\n";
  out << "  \"s\": " << s << ",\n";
  out << "  \"omega\": " << io::format_complex(decomp.omega) << ",\n";
  out << "  \"pairs\": [";
  for (std::size_t k = 0; k < decomp.pairs.size(); ++k) {
    const auto& pair = decomp.pairs[k];
    out << (k == 0 ? "\n" : ",\n");
    out << "    {\"t\": " << pair.t << ", \"p\": " << pair.p << ", \"eigenvalue\": " << io::format_complex(pair.eigenvalue)
        << ", \"eigenvector\": " << io::format_vector(pair.eigenvector) << "}";
  }
  out << (decomp.pairs.empty() ? "]" : "\n  ]");
  if (decomp.degenerate) {
    const auto& info = *decomp.degenerate;
    out << ",\n  \"degenerate\": {\"c0\": " << io::format_complex(info.c0)
        << ", \"algebraic_multiplicity\": " << info.algebraic_multiplicity << ", \"geometric_basis\": [";
    for (std::size_t i = 0; i < info.geometric_basis.size(); ++i) {
      out << (i == 0 ? "" : ", ") << info.geometric_basis[i];
    }
    out << "], \"nilpotent_orbits\": [";
    for (std::size_t i = 0; i < info.nilpotent_orbits.size(); ++i) {
      out << (i == 0 ? "" : ", ") << info.nilpotent_orbits[i];
    }
    out << "]}";
  }
  if (!decomp.diagnostics.empty()) {
    out << ",\n  \"diagnostics\": [";
    for (std::size_t i = 0; i < decomp.diagnostics.size(); ++i) {
      out << (i == 0 ? "" : ", ") << io::quote(decomp.diagnostics[i]);
    }
    out << "]";
  }
  out << "\n}\n";
  return out.str();
}

namespace detail {

inline SpectralDecomposition parse_spectrum_unchecked(const std::string& text) {
  const nlohmann::json doc = io::parse_json(text);
  if (!doc.is_object()) throw ParseError("spectrum document must be a JSON object");
  SpectralDecomposition out;
  if (!doc.contains("case") || !doc.at("case").is_string()) throw ParseError("missing string field 'case'");
  const auto tag = parse_case_tag(doc.at("case").get<std::string>());
  if (!tag) throw ParseError("unknown case tag '" + doc.at("case").get<std::string>() + "'");
  out.case_tag = *tag;
  if (!doc.contains("omega")) throw ParseError("missing field 'omega'");
  out.omega = io::parse_complex(doc.at("omega"), "omega");
  if (!doc.contains("pairs") || !doc.at("pairs").is_array()) throw ParseError("missing array field 'pairs'");
  for (std::size_t k = 0; k < doc.at("pairs").size(); ++k) {
    const auto& rec = doc.at("pairs")[k];
    const std::string where = "pairs[" + std::to_string(k) + "]";
    if (!rec.is_object()) throw ParseError(where + ": expected an object");
    EigenPair pair;
    pair.t = io::parse_count(rec, "t");
    pair.p = io::parse_count(rec, "p");
    if (!rec.contains("eigenvalue") || !rec.contains("eigenvector")) throw ParseError(where + ": incomplete record");
    pair.eigenvalue = io::parse_complex(rec.at("eigenvalue"), where + ".eigenvalue");
    pair.eigenvector = io::parse_complex_list(rec.at("eigenvector"), where + ".eigenvector");
    out.pairs.push_back(std::move(pair));
  }
  if (doc.contains("degenerate")) {
    const auto& d = doc.at("degenerate");
    DegenerateInfo info;
    info.c0 = io::parse_complex(d.at("c0"), "degenerate.c0");
    info.algebraic_multiplicity = io::parse_count(d, "algebraic_multiplicity");
    info.geometric_basis = d.at("geometric_basis").get<std::vector<std::size_t>>();
    info.nilpotent_orbits = d.at("nilpotent_orbits").get<std::vector<std::size_t>>();
    out.degenerate = std::move(info);
  }
  if (doc.contains("diagnostics")) out.diagnostics = doc.at("diagnostics").get<std::vector<std::string>>();
  return out;
}

}  // namespace detail

inline SpectralDecomposition parse_spectrum(const std::string& text) {
  try {
    return detail::parse_spectrum_unchecked(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed spectrum: ") + e.what());
  }
}

}  // namespace gencirc
