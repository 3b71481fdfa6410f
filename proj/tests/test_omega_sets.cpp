#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "talab/omega_sets.hpp"
#include "talab/set_literal.hpp"

using namespace talab;

namespace {
CylinderSet cyl(const char* bits) { return CylinderSet::cylinder(BitString::from_text(bits)); }
}  // namespace

TEST_CASE("enumerate_node follows length-then-lex order") {
  CHECK(enumerate_node(0).text().empty());
  CHECK(enumerate_node(1).text() == "0");
  CHECK(enumerate_node(2).text() == "1");
  CHECK(enumerate_node(6).text() == "11");

  const auto& listing = oracle::strings();
  for (std::uint64_t k = 0; k < listing.size(); ++k) {
    REQUIRE(enumerate_node(k).text() == listing[k]);
    REQUIRE(node_index(BitString::from_text(listing[k])) == k);
  }
}

TEST_CASE("enumerate_node is injective below 2^16") {
  std::vector<bool> seen(1 << 17);
  for (std::uint64_t k = 0; k < (1U << 16); ++k) {
    const auto s = enumerate_node(k);
    REQUIRE(node_index(s) == k);
    REQUIRE_FALSE(seen[s.code()]);
    seen[s.code()] = true;
  }
}

TEST_CASE("bit string prefix and dagger") {
  const auto s = BitString::from_text("0110");
  CHECK(s.prefix(2).text() == "01");
  CHECK(s.flip_last().text() == "0111");
  CHECK(BitString::from_text("01").is_prefix_of(s));
  CHECK_FALSE(BitString::from_text("1").is_prefix_of(s));
  CHECK(BitString{}.flip_last().empty());
  CHECK_THROWS_AS(BitString::from_text("012"), Error);
}

TEST_CASE("boolean operation examples") {
  CHECK(intersect(complement(cyl("1")), cyl("1")).is_empty());
  CHECK(intersect(cyl("01"), cyl("1")).is_empty());

  const auto u = unite(cyl("10"), cyl("11"));
  CHECK(u == subtract(cyl("1"), CylinderSet::finite({2})));
  CHECK(u.roots() == std::vector{BitString::from_text("1")});
  CHECK(u.minus() == std::vector<std::uint64_t>{2});
  CHECK(oracle::of(u) == (oracle::cylinder("10") | oracle::cylinder("11")));
}

TEST_CASE("cylinder algebra agrees with brute-force bitsets") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const auto e = oracle::random_expr(rng, 4);
    INFO(e.text);
    REQUIRE(oracle::of(e.set) == e.bits);
  }
}

TEST_CASE("normalization is idempotent and canonical") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto a = oracle::random_expr(rng, 3);
    const auto renorm = CylinderSet::from_parts(a.set.roots(), {}, a.set.plus(), a.set.minus());
    REQUIRE(renorm == a.set);
    // Same denotation reached by a different route.
    const auto b = complement(complement(unite(a.set, CylinderSet{})));
    REQUIRE(b == a.set);
    // Normal form invariants.
    const auto& roots = a.set.roots();
    for (std::size_t x = 0; x < roots.size(); ++x)
      for (std::size_t y = 0; y < roots.size(); ++y)
        if (x != y) {
          REQUIRE_FALSE(roots[x].is_prefix_of(roots[y]));
          REQUIRE_FALSE(roots[x].flip_last() == roots[y]);
        }
  }
}

TEST_CASE("finite/infinite classification matches count growth") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto e = oracle::random_expr(rng, 3);
    std::size_t small = 0;
    std::size_t large = 0;
    for (std::uint64_t k = 0; k < (1U << 12); ++k)
      if (e.set.contains(k)) (k < (1U << 10) ? small : large)++;
    REQUIRE(e.set.is_finite() == (large == 0));
  }
}

TEST_CASE("next_member walks the set in order") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto e = oracle::random_expr(rng, 3);
    std::uint64_t from = 0;
    for (std::uint64_t k = 0; k < 2000; ++k) {
      if (!e.bits[k]) continue;
      const auto v = e.set.next_member(from);
      REQUIRE(v.has_value());
      REQUIRE(*v == k);
      from = k + 1;
    }
  }
}

TEST_CASE("almost_subset examples") {
  CHECK(almost_subset(cyl("11"), cyl("1")).is_verified());
  const auto r = almost_subset(cyl("1"), cyl("11"));
  CHECK(r.is_refuted());
  for (auto k : r.evidence) CHECK((oracle::cylinder("1") & ~oracle::cylinder("11"))[k]);

  const EvaluableSet a = cyl("0");
  CHECK(almost_subset(a, unite(a, EvaluableSet(CylinderSet::finite({5})))).is_verified());
  CHECK(almost_subset(unite(a, EvaluableSet(CylinderSet::finite({5}))), a).is_verified());
}

TEST_CASE("splits examples") {
  CHECK(splits(evens(), CylinderSet::omega()).is_verified());
  CHECK(splits(cyl("1"), cyl("11")).is_refuted());
  // Every power of two from 4 on has bit 1 clear, so only 2 is left outside.
  const auto v = splits(digit_set(1), powers_of_two());
  CHECK_FALSE(v.is_verified());
  CHECK(v.is_unknown());
  CHECK_THROWS_AS(splits(evens(), CylinderSet::finite({1, 2})), Error);
}

TEST_CASE("digit sets split infinite cylinder sets exactly") {
  std::mt19937_64 rng(19);
  int tested = 0;
  while (tested < 100) {
    const auto e = oracle::random_expr(rng, 3);
    if (e.set.is_finite()) continue;
    ++tested;
    for (unsigned i = 0; i < 4; ++i) {
      const auto v = splits(digit_set(i), e.set);
      REQUIRE(v.is_verified());
      REQUIRE(v.horizon == 0);
    }
  }
}

TEST_CASE("residue certificates propagate through boolean operations") {
  const EvaluableSet all = unite(EvaluableSet(evens()), EvaluableSet(odds()));
  REQUIRE(all.residue());
  CHECK(all.residue()->full());
  const auto none = subtract(EvaluableSet(primes()), all);
  CHECK(exact_is_empty(none) == true);
  CHECK(exact_is_empty(intersect(EvaluableSet(residue_set(4, {0})), EvaluableSet(residue_set(4, {1})))) == true);
  CHECK(exact_is_empty(EvaluableSet(primes())) == std::nullopt);
}

TEST_CASE("lazy witnesses are sound") {
  const std::vector<LazySet> sets{evens(), odds(), primes(), powers_of_two(), digit_set(2), residue_set(6, {1, 4}),
                                  EvaluableSet(cyl("10")).as_lazy()};
  for (const auto& s : sets) {
    INFO(s.name);
    REQUIRE(s.inf_witness);
    std::uint64_t from = 0;
    for (int i = 0; i < 50; ++i) {
      const auto v = s.inf_witness(from);
      REQUIRE(v);
      REQUIRE(*v >= from);
      REQUIRE(s.member(*v));
      from = *v + 1;
    }
    if (s.coinf_witness) {
      from = 0;
      for (int i = 0; i < 100; ++i) {
        const auto v = s.coinf_witness(from);
        REQUIRE(v);
        REQUIRE_FALSE(s.member(*v));
        from = *v + 1;
      }
    }
  }
}

TEST_CASE("set literals") {
  const auto s = parse_set_literal(R"(cyl("1") - cyl("101") + {3,7} - {2})");
  REQUIRE(s.is_exact());
  const auto expected = (oracle::cylinder("1") & ~oracle::cylinder("101")) | oracle::points({3, 7});
  auto bits = expected;
  bits.reset(2);
  CHECK(oracle::of(s) == bits);
  CHECK(parse_set_literal(s.cylinder()->to_literal()).cylinder()->operator==(*s.cylinder()));

  const auto lazy = parse_set_literal("(evens & ~digit(1)) + residue(4; 1,3)");
  for (std::uint64_t k = 0; k < 64; ++k) CHECK(lazy.contains(k) == ((k % 4 == 2) || (k % 2 == 1)));

  CHECK_THROWS_AS(parse_set_literal("cyl(\"12\")"), Error);
  CHECK_THROWS_AS(parse_set_literal("{1,2"), Error);
  CHECK_THROWS_AS(parse_set_literal("nosuch"), Error);
}
