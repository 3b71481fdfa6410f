#include <doctest.h>

#include <random>

#include "talab/stone_topology.hpp"

using namespace talab;

namespace {

ExplicitSequence disjoint_classes() {
  return ExplicitSequence({residue_set(4, {0}), residue_set(4, {1}), residue_set(4, {2})});
}

// a_n = [0^n 1]: pairwise disjoint cylinders along the all-zero branch.
class SpineSequence : public CoherentSequence {
 public:
  Ordinal length() const override { return kOmega; }
  EvaluableSet entry(const Ordinal& a) const override {
    return CylinderSet::cylinder(BitString::from_text(std::string(a.finite, '0') + "1"));
  }
  std::optional<CoherenceWitness> witness(const Ordinal&, const Ordinal&) const override {
    return CoherenceWitness{WitnessKind::cap_below, {}, true};
  }
};

bool covers_all(const OrdinalSpace& space, const std::vector<SubbaseElement>& els) {
  for (const auto& p : space.points()) {
    bool hit = false;
    for (const auto& e : els) {
      // Brute force from the hat definition on this space: hats are singletons.
      const bool in_hat = p == e.index;
      hit = hit || (e.kind == SubbaseElement::Kind::hat ? in_hat : !in_hat);
    }
    if (!hit) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("finite subcover on the disjoint-classes space") {
  const auto seq = disjoint_classes();
  const OrdinalSpace space(seq, 10);
  REQUIRE(space.points() == std::vector<Ordinal>{0, 1, 2, 3});
  const auto r = finite_subcover(space, {{0, 1, 2}, {0}});
  REQUIRE(r.verdict.is_verified());
  CHECK(r.elements.size() <= 4);
  CHECK(covers_all(space, r.elements));

  const auto missing = finite_subcover(space, {{0, 1, 2}, {}});
  CHECK(missing.verdict.is_refuted());
}

TEST_CASE("finite subcover on the spine space") {
  const SpineSequence seq;
  const OrdinalSpace space(seq, 20);
  SubbasicCover cover;
  for (std::uint64_t g = 0; g < 20; g += 2) cover.hats.emplace_back(g);
  cover.cohats.emplace_back(0);
  const auto r = finite_subcover(space, cover);
  REQUIRE(r.verdict.is_verified());
  CHECK(r.elements.size() <= 21);
  CHECK(covers_all(space, r.elements));
}

TEST_CASE("finite subcover on random covers") {
  const SpineSequence spine;
  const auto classes = disjoint_classes();
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const CoherentSequence& seq = trial % 2 ? static_cast<const CoherentSequence&>(spine) : classes;
    const OrdinalSpace space(seq, 30);
    const auto lower = space.lower_points();
    SubbasicCover cover;
    for (const auto& p : lower)
      if (rng() % 3 == 0) cover.hats.push_back(p);
    cover.cohats.push_back(lower[rng() % lower.size()]);
    // Make it a cover: the cohat misses exactly its own index.
    cover.hats.push_back(cover.cohats.back());
    const auto r = finite_subcover(space, cover);
    REQUIRE(r.verdict.is_verified());
    REQUIRE(r.elements.size() <= space.points().size());
    REQUIRE(covers_all(space, r.elements));
  }
}

TEST_CASE("neighborhood bases") {
  const auto seq = disjoint_classes();
  const OrdinalSpace space(seq, 10);
  const auto nb = neighborhood_base(space, 1, 2);
  REQUIRE(nb.size() == 2);
  CHECK(nb[0].F.empty());
  CHECK(nb[1].F == std::vector<Ordinal>{0});
  for (const auto& n : nb) CHECK(n.members == std::vector<Ordinal>{1});
  for (const auto& n : neighborhood_base(space, 0, 3)) CHECK(n.members == std::vector<Ordinal>{0});

  const SpineSequence spine;
  const OrdinalSpace s2(spine, 10);
  const auto top = neighborhood_base(s2, kOmega, 3);
  CHECK(top[0].F.empty());
  CHECK(top[1].F == std::vector<Ordinal>{0});
  CHECK(top[2].F == std::vector<Ordinal>{0, 1});
  CHECK(top[2].members.front() == Ordinal(2));
}

TEST_CASE("convergence verdicts") {
  const auto seq = disjoint_classes();
  const OrdinalSpace space(seq, 10);
  CHECK(converges(space, {"const 2", [](std::uint64_t) { return Ordinal(2); }}, 2, 4).is_verified());
  CHECK(converges(space, {"zeros", [](std::uint64_t) { return Ordinal(0); }}, 1, 4).is_refuted());
  // Point 0 is isolated, and the sequence returns to it forever.
  const PointSequence cycle{"0,1,2,...", [](std::uint64_t n) { return Ordinal(n % 3); }};
  CHECK(converges(space, cycle, 3, 4).is_refuted());

  const SpineSequence spine;
  const OrdinalSpace s2(spine, 20);
  const PointSequence up{"n", [](std::uint64_t n) { return Ordinal(n); }};
  CHECK(converges(s2, up, kOmega, 12).is_verified());
  for (std::uint64_t t = 0; t < 5; ++t) CHECK(converges(s2, up, t, 12).is_refuted());
}

TEST_CASE("Cantor-Bendixson ranks") {
  const auto seq = disjoint_classes();
  const auto ranks = cantor_bendixson(OrdinalSpace(seq, 10));
  REQUIRE(ranks.verdict.is_verified());
  // A finite Hausdorff space is discrete.
  for (std::uint64_t p = 0; p <= 3; ++p) CHECK(ranks.rank.at(p) == 0);

  const ExplicitSequence empty({});
  const auto single = cantor_bendixson(OrdinalSpace(empty, 5));
  CHECK(single.rank.at(0) == 0);

  const SpineSequence spine;
  const auto r2 = cantor_bendixson(OrdinalSpace(spine, 10));
  REQUIRE(r2.verdict.is_verified());
  for (std::uint64_t p = 0; p < 10; ++p) CHECK(r2.rank.at(p) == 0);
  CHECK(r2.rank.at(kOmega) == 1);
}

TEST_CASE("Hausdorff separation by hats") {
  const SpineSequence spine;
  const OrdinalSpace space(spine, 20);
  const auto& pts = space.points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i] == space.top()) continue;
      CHECK(space.in_hat(pts[i], pts[i]) == true);
      CHECK(space.in_hat(pts[j], pts[i]) == false);
    }
}
