#include "talab/ordinals.hpp"

#include <cctype>
#include <charconv>

#include "talab/omega_sets.hpp"

namespace talab {

std::string Ordinal::text() const {
  if (omega == 0) return std::to_string(finite);
  std::string s = "w";
  if (omega > 1) s += "*" + std::to_string(omega);
  if (finite > 0) s += "+" + std::to_string(finite);
  return s;
}

namespace {

std::uint64_t parse_number(std::string_view& rest, std::string_view whole) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
  if (ec != std::errc{} || ptr == rest.data())
    throw Error("malformed ordinal '" + std::string(whole) + "' at column " +
                std::to_string(rest.data() - whole.data() + 1));
  rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
  return v;
}

}  // namespace

Ordinal Ordinal::parse(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  std::string_view rest = compact;
  const std::string_view whole = rest;
  auto fail = [&] {
    throw Error("malformed ordinal '" + std::string(text) + "' at column " +
                std::to_string(rest.data() - whole.data() + 1));
  };
  if (rest.empty()) fail();
  Ordinal out;
  if (rest.front() == 'w') {
    rest.remove_prefix(1);
    out.omega = 1;
    if (!rest.empty() && rest.front() == '*') {
      rest.remove_prefix(1);
      out.omega = parse_number(rest, whole);
      if (out.omega == 0) fail();
    }
    if (rest.empty()) return out;
    if (rest.front() != '+') fail();
    rest.remove_prefix(1);
  }
  out.finite = parse_number(rest, whole);
  if (!rest.empty()) fail();
  return out;
}

Ordinal ord_succ(const Ordinal& a) { return {a.omega, a.finite + 1}; }

Ordinal ord_add_finite(const Ordinal& a, std::uint64_t k) { return {a.omega, a.finite + k}; }

Ordinal ord_pred(const Ordinal& a) {
  if (!a.is_successor()) throw Error("ordinal " + a.text() + " has no predecessor");
  return {a.omega, a.finite - 1};
}

Ordinal e_lambda(const Ordinal& lambda, std::uint64_t n) {
  if (!lambda.is_limit()) throw Error("e_lambda needs a nonzero limit, got " + lambda.text());
  return {n % lambda.omega, n / lambda.omega};
}

std::uint64_t e_lambda_inverse(const Ordinal& lambda, const Ordinal& alpha) {
  if (!lambda.is_limit()) throw Error("e_lambda needs a nonzero limit, got " + lambda.text());
  if (alpha >= lambda) throw Error(alpha.text() + " is not below " + lambda.text());
  return alpha.finite * lambda.omega + alpha.omega;
}

Ordinal e_alpha(const Ordinal& alpha, std::uint64_t n) {
  if (alpha.is_finite()) throw Error("e_alpha needs an infinite ordinal, got " + alpha.text());
  if (n < alpha.finite) return {alpha.omega, n};
  return e_lambda(Ordinal::omega_times(alpha.omega), n - alpha.finite);
}

std::uint64_t e_alpha_inverse(const Ordinal& alpha, const Ordinal& beta) {
  if (alpha.is_finite()) throw Error("e_alpha needs an infinite ordinal, got " + alpha.text());
  if (beta >= alpha) throw Error(beta.text() + " is not below " + alpha.text());
  if (beta.omega == alpha.omega) return beta.finite;
  return alpha.finite + e_lambda_inverse(Ordinal::omega_times(alpha.omega), beta);
}

// e_lambda(n) is a successor exactly when n >= m.
Ordinal e_successor(const Ordinal& lambda, std::uint64_t n) { return e_lambda(lambda, n + lambda.omega); }

std::uint64_t e_successor_inverse(const Ordinal& lambda, const Ordinal& alpha) {
  if (!alpha.is_successor()) throw Error(alpha.text() + " is not a successor");
  return e_lambda_inverse(lambda, alpha) - lambda.omega;
}

}  // namespace talab
