// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "gencirc/core.hpp"

namespace gencirc {

/// One cycle of a shift permutation. `members` starts at the representative
/// (the smallest index of the cycle) and lists rep, rep+s, rep+2s, ... mod m.
struct Orbit {
  std::size_t representative = 0;
  std::vector<std::size_t> members;

  friend bool operator==(const Orbit&, const Orbit&) = default;
};

/// The cyclic shift x -> (x + s) mod m on {0, ..., m-1}.
///
/// All indices are 0-based. A shift of 0 (or of m, which is the same map) is
/// the identity; its gcd is taken to be m so that order() * gcd() == m holds
/// for every shift.
class ShiftPermutation {
public:
  ShiftPermutation(std::size_t m, std::size_t s) : m_(m) {
    detail::require(m >= 1, "shift permutation needs m >= 1");
    detail::require(s <= m, "shift s=" + std::to_string(s) + " outside [0, m]");
    s_ = s % m;
    g_ = s_ == 0 ? m_ : std::gcd(m_, s_);
    d_ = m_ / g_;
  }

  [[nodiscard]] std::size_t modulus() const noexcept { return m_; }
  [[nodiscard]] std::size_t shift() const noexcept { return s_; }
  /// Order d: smallest d >= 1 with the d-th power equal to the identity.
  [[nodiscard]] std::size_t order() const noexcept { return d_; }
  /// g = gcd(m, s), the number of orbits.
  [[nodiscard]] std::size_t gcd() const noexcept { return g_; }
  [[nodiscard]] bool is_identity() const noexcept { return s_ == 0; }

  [[nodiscard]] std::size_t apply(std::size_t x) const {
    detail::require(x < m_, "index " + std::to_string(x) + " outside [0, " + std::to_string(m_) + ")");
    return step(x);
  }

  /// Unchecked application for inner loops.
  [[nodiscard]] std::size_t step(std::size_t x) const noexcept {
    const std::size_t y = x + s_;
    return y >= m_ ? y - m_ : y;
  }

  /// pi_s^k = pi_{k s}; negative k gives the inverse powers.
  [[nodiscard]] ShiftPermutation power(std::int64_t k) const {
    const auto m = static_cast<std::int64_t>(m_);
    std::int64_t kr = k % m;
    if (kr < 0) kr += m;
    return ShiftPermutation(m_, mul_mod(static_cast<std::size_t>(kr), s_, m_));
  }

  [[nodiscard]] ShiftPermutation inverse() const { return power(-1); }

  /// The g orbits, representatives 0..g-1 in increasing order.
  [[nodiscard]] std::vector<Orbit> orbits() const {
    std::vector<Orbit> result(g_);
    for (std::size_t t = 0; t < g_; ++t) {
      result[t].representative = t;
      result[t].members.reserve(d_);
      std::size_t x = t;
      for (std::size_t j = 0; j < d_; ++j) {
        result[t].members.push_back(x);
        x = step(x);
      }
    }
    return result;
  }

  /// Representative of the orbit containing x. Orbits are residue classes mod g.
  [[nodiscard]] std::size_t orbit_of(std::size_t x) const {
    detail::require(x < m_, "index outside [0, m)");
    return x % g_;
  }

  friend bool operator==(const ShiftPermutation& a, const ShiftPermutation& b) noexcept {
    return a.m_ == b.m_ && a.s_ == b.s_;
  }

private:
  // a * b mod m for a, b < m without overflow (shift-and-add).
  static std::size_t mul_mod(std::size_t a, std::size_t b, std::size_t m) noexcept {
    std::size_t result = 0;
    while (b != 0) {
      if (b & 1U) result = result >= m - a ? result - (m - a) : result + a;
      a = a >= m - a ? a - (m - a) : a + a;
      b >>= 1U;
    }
    return result;
  }

  std::size_t m_;
  std::size_t s_ = 0;
  std::size_t g_ = 1;
  std::size_t d_ = 1;
};

}  // namespace gencirc
