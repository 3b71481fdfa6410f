#pragma once

// Test-only brute-force oracles. Nothing here calls into the library's
// set algebra; node strings are produced by explicit level-order listing.

#include <bitset>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "talab/omega_sets.hpp"

namespace oracle {

inline constexpr std::size_t kUniverse = 4096;
using Bits = std::bitset<kUniverse>;

/// 2^{<omega} listed by length, then lexicographically, until `count` strings.
inline std::vector<std::string> level_order(std::size_t count) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; out.size() < count; ++i) {
    out.push_back(out[i] + "0");
    out.push_back(out[i] + "1");
  }
  out.resize(count);
  return out;
}

inline const std::vector<std::string>& strings() {
  static const auto s = level_order(1 << 17);
  return s;
}

inline bool has_prefix(const std::string& s, const std::string& p) { return s.compare(0, p.size(), p) == 0; }

inline Bits cylinder(const std::string& root) {
  Bits b;
  for (std::size_t k = 0; k < kUniverse; ++k)
    if (has_prefix(strings()[k], root)) b.set(k);
  return b;
}

inline Bits points(const std::vector<std::uint64_t>& pts) {
  Bits b;
  for (auto p : pts)
    if (p < kUniverse) b.set(p);
  return b;
}

inline Bits of(const talab::EvaluableSet& s) {
  Bits b;
  for (std::size_t k = 0; k < kUniverse; ++k)
    if (s.contains(k)) b.set(k);
  return b;
}

/// Random cylinder-algebra expression evaluated both ways.
struct Expr {
  talab::CylinderSet set;
  Bits bits;
  std::string text;
};

inline std::string random_bits(std::mt19937_64& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::string s;
  for (std::size_t i = 0, n = len(rng); i < n; ++i) s.push_back((rng() & 1U) ? '1' : '0');
  return s;
}

inline Expr random_leaf(std::mt19937_64& rng) {
  if (rng() % 4 == 0) {
    std::vector<std::uint64_t> pts;
    for (int i = 0, n = static_cast<int>(rng() % 4); i < n; ++i) pts.push_back(rng() % 64);
    return {talab::CylinderSet::finite(pts), points(pts), "finite"};
  }
  const auto root = random_bits(rng, 6);
  return {talab::CylinderSet::cylinder(talab::BitString::from_text(root)), cylinder(root), "cyl(" + root + ")"};
}

inline Expr random_expr(std::mt19937_64& rng, int depth) {
  if (depth == 0 || rng() % 3 == 0) return random_leaf(rng);
  switch (rng() % 4) {
    case 0: {
      auto a = random_expr(rng, depth - 1);
      return {complement(a.set), ~a.bits, "~" + a.text};
    }
    case 1: {
      auto a = random_expr(rng, depth - 1);
      auto b = random_expr(rng, depth - 1);
      return {unite(a.set, b.set), a.bits | b.bits, "(" + a.text + "+" + b.text + ")"};
    }
    case 2: {
      auto a = random_expr(rng, depth - 1);
      auto b = random_expr(rng, depth - 1);
      return {intersect(a.set, b.set), a.bits & b.bits, "(" + a.text + "&" + b.text + ")"};
    }
    default: {
      auto a = random_expr(rng, depth - 1);
      auto b = random_expr(rng, depth - 1);
      return {subtract(a.set, b.set), a.bits & ~b.bits, "(" + a.text + "-" + b.text + ")"};
    }
  }
}

}  // namespace oracle
