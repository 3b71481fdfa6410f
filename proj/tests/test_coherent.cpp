#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "talab/coherent.hpp"

using namespace talab;

namespace {

ExplicitSequence disjoint_classes() {
  return ExplicitSequence({residue_set(4, {0}), residue_set(4, {1}), residue_set(4, {2})});
}

// Brute-force re-check of a witness below the oracle universe.
bool brute_holds(const CoherentSequence& seq, const Ordinal& a, const Ordinal& b, const CoherenceWitness& w) {
  oracle::Bits aF;
  for (const auto& g : w.F) aF |= oracle::of(seq.entry(g));
  const auto A = oracle::of(seq.entry(a));
  const auto B = oracle::of(seq.entry(b));
  if (w.kind == WitnessKind::cap_below) return ((A & B) & ~aF).none();
  return (A & ~(B | aF)).none();
}

}  // namespace

TEST_CASE("check_coherent examples") {
  const auto seq = disjoint_classes();
  const auto r = check_coherent(seq, seq.length());
  CHECK(r.verdict.is_verified());
  CHECK(r.verdict.horizon == 0);
  REQUIRE(r.rows.size() == 3);
  for (const auto& row : r.rows) {
    REQUIRE(row.witness);
    CHECK(row.witness->kind == WitnessKind::cap_below);
    CHECK(row.witness->F.empty());
  }

  const ExplicitSequence nested({evens(), residue_set(4, {0})});
  const auto bad = check_coherent(nested, nested.length());
  CHECK(bad.verdict.is_refuted());

  const ExplicitSequence single({evens()});
  CHECK(check_coherent(single, single.length()).verdict.is_verified());
}

TEST_CASE("check_proper examples") {
  const auto seq = disjoint_classes();
  CHECK(check_proper(seq, seq.length()).is_verified());
  const ExplicitSequence covered({evens(), odds(), primes()});
  const auto v = check_proper(covered, covered.length());
  CHECK(v.is_refuted());
  CHECK(v.detail.find("beta = 2") != std::string::npos);
  CHECK(check_proper(ExplicitSequence({primes()}), Ordinal(1)).is_verified());
}

TEST_CASE("hat examples") {
  const auto seq = disjoint_classes();
  const std::vector<Ordinal> pts{0, 1, 2};
  for (std::uint64_t b = 0; b < 3; ++b) CHECK(hat(seq, b).materialize(pts) == std::vector<Ordinal>{b});
  CHECK_THROWS_AS(hat(seq, 3), Error);

  // Nested pair: a_0 <= a_1 puts 0 in hat(1).
  const ExplicitSequence nested({residue_set(4, {0}), evens()});
  CHECK(hat(nested, 1).materialize({0, 1}) == std::vector<Ordinal>{0, 1});
}

TEST_CASE("is_cover examples") {
  const auto seq = disjoint_classes();
  CHECK(is_cover(seq, {0, 1, 2}, {}, {0, 1, 2, 3}).is_refuted());
  CHECK(is_cover(seq, {0, 1, 2}, {}, {0, 1, 2}).is_verified());
  CHECK(is_cover(seq, {0}, {}, {0, 1}).is_refuted());
}

TEST_CASE("witnesses found by search re-check by brute force") {
  std::mt19937_64 rng(23);
  int verified = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<EvaluableSet> entries;
    for (int i = 0; i < 4; ++i) entries.emplace_back(oracle::random_expr(rng, 2).set);
    const ExplicitSequence seq(entries);
    const auto r = check_coherent(seq, seq.length());
    for (const auto& row : r.rows) {
      if (!row.verdict.is_verified()) continue;
      ++verified;
      REQUIRE(row.witness);
      REQUIRE(brute_holds(seq, row.alpha, row.beta, *row.witness));
    }
    // Initial segments of a verified sequence verify too.
    if (r.verdict.is_verified()) {
      for (std::uint64_t k = 1; k < 4; ++k) CHECK(check_coherent(seq, Ordinal(k)).verdict.is_verified());
    }
  }
  CHECK(verified > 50);
}

TEST_CASE("hat membership matches the definition by brute force") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<EvaluableSet> entries;
    for (int i = 0; i < 4; ++i) entries.emplace_back(oracle::random_expr(rng, 2).set);
    const ExplicitSequence seq(entries);
    for (std::uint64_t b = 0; b < 4; ++b)
      for (std::uint64_t a = 0; a < b; ++a) {
        oracle::Bits below;
        for (std::uint64_t g = 0; g < a; ++g) below |= oracle::of(entries[g]);
        const auto diff = oracle::of(entries[a]) & ~oracle::of(entries[b]);
        const auto m = seq.hat_member(a, b, {});
        REQUIRE(m);
        // All sets here are determined below the universe size.
        REQUIRE(*m == (diff & ~below).none());
      }
  }
}
