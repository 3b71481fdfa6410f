#pragma once

// Ordinals below omega^2, written omega*m + n.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace talab {

struct Ordinal {
  std::uint64_t omega = 0;
  std::uint64_t finite = 0;

  constexpr Ordinal() = default;
  constexpr Ordinal(std::uint64_t n) : finite(n) {}  // NOLINT
  constexpr Ordinal(std::uint64_t m, std::uint64_t n) : omega(m), finite(n) {}

  static constexpr Ordinal omega_times(std::uint64_t m) { return {m, 0}; }

  constexpr bool is_zero() const { return omega == 0 && finite == 0; }
  constexpr bool is_limit() const { return omega > 0 && finite == 0; }
  constexpr bool is_successor() const { return finite > 0; }
  constexpr bool is_finite() const { return omega == 0; }

  constexpr auto operator<=>(const Ordinal&) const = default;

  /// "w*2+5", "w+3", "w*4", "7".
  std::string text() const;
  static Ordinal parse(std::string_view text);
};

inline constexpr Ordinal kOmega{1, 0};

Ordinal ord_succ(const Ordinal& a);
Ordinal ord_add_finite(const Ordinal& a, std::uint64_t k);
/// Predecessor of a successor ordinal.
Ordinal ord_pred(const Ordinal& a);

/// e_lambda(n) = omega*(n mod m) + n div m for lambda = omega*m.
Ordinal e_lambda(const Ordinal& lambda, std::uint64_t n);
std::uint64_t e_lambda_inverse(const Ordinal& lambda, const Ordinal& alpha);

/// Bijection of omega onto an infinite ordinal alpha = omega*m + j: the first
/// j values enumerate the finite tail omega*m + i, the rest follow e_{omega*m}.
Ordinal e_alpha(const Ordinal& alpha, std::uint64_t n);
std::uint64_t e_alpha_inverse(const Ordinal& alpha, const Ordinal& beta);

/// Enumeration of the successor ordinals below lambda, obtained by filtering
/// e_lambda. Position n of the filtered stream.
Ordinal e_successor(const Ordinal& lambda, std::uint64_t n);
std::uint64_t e_successor_inverse(const Ordinal& lambda, const Ordinal& alpha);

struct OrdBijection {
  Ordinal lambda;

  Ordinal forward(std::uint64_t n) const { return e_lambda(lambda, n); }
  std::uint64_t backward(const Ordinal& a) const { return e_lambda_inverse(lambda, a); }
};

}  // namespace talab
