#include <doctest.h>

#include <set>

#include "talab/omega_sets.hpp"
#include "talab/ordinals.hpp"

using namespace talab;

TEST_CASE("ordinal arithmetic and order") {
  CHECK(ord_succ(kOmega) == Ordinal(1, 1));
  CHECK(Ordinal(1, 7) < Ordinal::omega_times(2));
  CHECK(ord_add_finite(Ordinal(2, 1), 4) == Ordinal(2, 5));
  CHECK(Ordinal::omega_times(3).is_limit());
  CHECK_FALSE(Ordinal(0).is_limit());
  CHECK(Ordinal(5).is_successor());
  CHECK_THROWS_AS(ord_pred(kOmega), Error);
}

TEST_CASE("ordinal text round trip") {
  for (const char* s : {"0", "7", "w", "w+3", "w*2", "w*2+5"}) CHECK(Ordinal::parse(s).text() == s);
  CHECK(Ordinal::parse("w * 2 + 5") == Ordinal(2, 5));
  CHECK_THROWS_AS(Ordinal::parse("w*"), Error);
  CHECK_THROWS_AS(Ordinal::parse("w*0"), Error);
  CHECK_THROWS_AS(Ordinal::parse("x"), Error);
  CHECK_THROWS_AS(Ordinal::parse(""), Error);
}

TEST_CASE("e_lambda examples") {
  CHECK(e_lambda(kOmega, 5) == Ordinal(5));
  CHECK(e_lambda(Ordinal::omega_times(2), 3) == Ordinal(1, 1));
  CHECK(e_lambda(Ordinal::omega_times(3), 0) == Ordinal(0));
  CHECK_THROWS_AS(e_lambda(Ordinal(4), 1), Error);
  CHECK_THROWS_AS(e_lambda(Ordinal(0), 1), Error);
}

TEST_CASE("e_lambda is a gapless bijection") {
  for (std::uint64_t m = 1; m <= 4; ++m) {
    const auto lambda = Ordinal::omega_times(m);
    // Brute force: image of n < 1000 is injective and each omega-copy is an initial run.
    std::set<Ordinal> image;
    for (std::uint64_t n = 0; n < 1000; ++n) {
      const auto a = e_lambda(lambda, n);
      REQUIRE(a < lambda);
      REQUIRE(image.insert(a).second);
    }
    for (std::uint64_t i = 0; i < m; ++i) {
      std::uint64_t count = 0;
      for (const auto& a : image) count += a.omega == i;
      for (std::uint64_t j = 0; j < count; ++j) REQUIRE(image.count(Ordinal(i, j)) == 1);
    }
    const OrdBijection e{lambda};
    for (std::uint64_t n = 0; n < 10000; ++n) REQUIRE(e.backward(e.forward(n)) == n);
  }
}

TEST_CASE("e_alpha and the successor enumeration") {
  const Ordinal alpha(2, 3);
  std::set<Ordinal> seen;
  for (std::uint64_t n = 0; n < 500; ++n) {
    const auto b = e_alpha(alpha, n);
    REQUIRE(b < alpha);
    REQUIRE(seen.insert(b).second);
    REQUIRE(e_alpha_inverse(alpha, b) == n);
  }
  CHECK(e_alpha(alpha, 0) == Ordinal(2, 0));
  CHECK(e_alpha(alpha, 3) == Ordinal(0));

  const auto lambda = Ordinal::omega_times(3);
  for (std::uint64_t n = 0; n < 500; ++n) {
    const auto s = e_successor(lambda, n);
    REQUIRE(s.is_successor());
    REQUIRE(e_successor_inverse(lambda, s) == n);
  }
  // Every successor below omega*3 with finite part <= 10 is hit early.
  std::set<Ordinal> hit;
  for (std::uint64_t n = 0; n < 30; ++n) hit.insert(e_successor(lambda, n));
  for (std::uint64_t i = 0; i < 3; ++i)
    for (std::uint64_t j = 1; j <= 10; ++j) CHECK(hit.count(Ordinal(i, j)) == 1);
}
