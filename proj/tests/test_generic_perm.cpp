#include <doctest.h>

#include <set>
#include <thread>

#include "talab/generic_perm.hpp"

using namespace talab;

namespace {

DenseRequirement fixed(std::uint64_t k, std::uint64_t v) {
  return {"pi(" + std::to_string(k) + ") = " + std::to_string(v),
          [k, v](const PermCondition& c) { return c.defined(k) && c.at(k) == v; },
          [k, v](const PermCondition& c) {
            auto n = c;
            n.assign(k, v);
            return n;
          }};
}

}  // namespace

TEST_CASE("conditions stay injective") {
  PermCondition c{{0, 3}};
  CHECK_THROWS_AS(c.assign(0, 4), Error);
  CHECK_THROWS_AS(c.assign(1, 3), Error);
  c.assign(1, 0);
  CHECK(c.extends(PermCondition{{0, 3}}));
  CHECK_FALSE(PermCondition{{0, 3}}.extends(c));
}

TEST_CASE("empty schedule completes to the identity") {
  const auto pi = schedule_requirements({});
  CHECK(pi->at(5) == 5);
  for (std::uint64_t k = 0; k < 100; ++k) CHECK(pi->at(k) == k);
}

TEST_CASE("a fixed assignment is respected and later values avoid it") {
  const auto pi = schedule_requirements({fixed(0, 3)});
  CHECK(pi->at(0) == 3);
  std::set<std::uint64_t> seen{3};
  for (std::uint64_t k = 1; k < 200; ++k) {
    const auto v = pi->at(k);
    CHECK(v != 3);
    CHECK(seen.insert(v).second);
  }
}

TEST_CASE("hitting requirement examples") {
  auto reqs = hitting_requirements(CylinderSet::omega(), 2);
  CHECK(reqs.size() == 7);
  const auto& one = reqs[2];
  REQUIRE(one.name == "hit <1>");
  const auto c = one.extend(PermCondition{});
  CHECK(c == PermCondition{{0, 2}});
  CHECK(one.extend(c) == PermCondition{{0, 2}, {1, 5}});
  CHECK(one.meets(c));
  const auto& zero_one = reqs[4];
  REQUIRE(zero_one.name == "hit <01>");
  CHECK(zero_one.extend(PermCondition{}).at(0) == 4);
}

TEST_CASE("hitting requirements to depth 6 are all met") {
  const auto reqs = hitting_requirements(CylinderSet::omega(), 6);
  const auto pi = schedule_requirements(reqs);
  for (const auto& r : reqs) CHECK(r.meets(pi->scheduled()));
  CHECK(pi->log().size() == reqs.size());
  // Validity: every sigma of length 6 has some k with sigma_{pi(k)} extending it.
  std::set<std::uint64_t> prefixes;
  for (std::uint64_t k = 0; k < 200; ++k) {
    const auto s = BitString::from_index(pi->at(k));
    if (s.size() >= 6) prefixes.insert(s.prefix(6).code());
  }
  CHECK(prefixes.size() == 64);
}

TEST_CASE("completion is deterministic, injective and surjective") {
  const auto reqs = hitting_requirements(CylinderSet::omega(), 4);
  const auto a = schedule_requirements(reqs);
  const auto b = schedule_requirements(reqs);
  // Different query orders.
  std::vector<std::uint64_t> va(300);
  for (std::uint64_t k = 0; k < 300; ++k) va[k] = a->at(k);
  for (std::uint64_t k = 300; k-- > 0;) CHECK(b->at(k) == va[k]);
  std::set<std::uint64_t> image(va.begin(), va.end());
  CHECK(image.size() == 300);
  for (std::uint64_t v = 0; v < 200; ++v) CHECK(a->at(a->inverse(v)) == v);
}

TEST_CASE("concurrent queries agree") {
  const auto pi = schedule_requirements(hitting_requirements(CylinderSet::omega(), 3));
  std::vector<std::uint64_t> first(500), second(500);
  std::thread t1([&] {
    for (std::uint64_t k = 0; k < 500; ++k) first[k] = pi->at(k);
  });
  std::thread t2([&] {
    for (std::uint64_t k = 500; k-- > 0;) second[k] = pi->at(k);
  });
  t1.join();
  t2.join();
  CHECK(first == second);
}

TEST_CASE("bad requirements are rejected at registration") {
  DenseRequirement clobber{"clobber", [](const PermCondition&) { return false; },
                           [](const PermCondition&) { return PermCondition{}; }};
  CHECK_THROWS_AS(schedule_requirements({clobber}), Error);
}

TEST_CASE("kill requirements") {
  const auto inside = CylinderSet::cylinder(BitString::from_text("1"));
  CHECK(kill_requirements({1, 2, 3}, inside, 0).empty());
  CHECK_THROWS_AS(kill_requirements({1, 2, 3}, inside, 2), Error);

  std::vector<std::uint64_t> relevant;
  for (std::uint64_t n = 0; n < 60; ++n) relevant.push_back(3 * n);
  const auto reqs = kill_requirements(relevant, inside, 20);
  const auto pi = schedule_requirements(reqs);
  std::size_t in = 0, out = 0;
  for (auto k : relevant) (inside.contains(pi->at(k)) ? in : out)++;
  CHECK(in >= 20);
  CHECK(out >= 20);
}
