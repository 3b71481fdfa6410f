#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "talab/talgebra.hpp"

using namespace talab;

namespace {

const std::string& s(std::uint64_t m) { return oracle::strings()[m]; }

// m in a_tau of the plain tree 2^{<omega} with L = omega.
bool base_member(const std::string& tau, std::uint64_t m) {
  const auto rho = tau.substr(0, tau.size() - 1);
  const bool zero = oracle::has_prefix(s(m), rho + "1");
  return zero != (tau.back() == '1');
}

std::string prefix_of(const Pattern& p, std::size_t n) {
  std::string out;
  for (std::size_t j = 0; j < n; ++j) out.push_back(p.bit(j) ? '1' : '0');
  return out;
}

TTree plain() { return TTree::base(std::make_shared<IdentityPermutation>(), CylinderSet::omega()); }

std::vector<std::string> all_strings(std::size_t max_len) {
  return oracle::level_order((std::size_t{2} << max_len) - 1);
}

Branch random_branch(std::mt19937_64& rng) {
  return Branch{{Pattern(oracle::random_bits(rng, 5), oracle::random_bits(rng, 2) + (rng() & 1U ? "1" : "0"))}};
}

// Ultrafilter of a length-omega branch y of the plain tree, decided on a
// sample: Z = points of the first K co-generators along y with long strings.
std::optional<bool> brute_ultrafilter(const Branch& y, const std::string& sigma) {
  constexpr std::size_t K = 8;
  const auto yk = prefix_of(y.segments[0], K);
  int in = 0, out = 0;
  for (std::uint64_t m = 0; m < oracle::kUniverse; ++m) {
    if (s(m).size() < K) continue;
    bool outside_all = true;
    for (std::size_t k = 0; k < K && outside_all; ++k) outside_all = !base_member(yk.substr(0, k + 1), m);
    if (!outside_all) continue;
    (base_member(sigma, m) ? in : out)++;
  }
  if (in > 0 && out == 0) return true;
  if (out > 0 && in == 0) return false;
  return std::nullopt;
}

}  // namespace

TEST_CASE("pattern normal form") {
  CHECK(Pattern("0101", "01") == Pattern("", "01"));
  CHECK(Pattern("000", "00") == Pattern::constant(false));
  CHECK(Pattern("1", "0101") == Pattern("1", "01"));
  const auto p = Pattern::parse("00(1)");
  CHECK(p.head() == "00");
  CHECK(p.cycle() == "1");
  CHECK(p.text() == "00(1)");
  CHECK(p.prefix(5).text() == "00111");
  CHECK(p.next_one(0) == 2u);
  CHECK(Pattern::constant(false).next_one(0) == std::nullopt);
  CHECK(p.first_difference(Pattern::constant(false)) == 2u);
  CHECK(p.first_difference(Pattern("001", "1")) == std::nullopt);
  CHECK_THROWS_AS(Pattern::parse("001"), Error);
}

TEST_CASE("node and branch text round trip") {
  for (const std::string t : {"<>", "0", "0110", "(0)|<>", "(0)|01", "1(0)|0(01)|1"}) CHECK(Node::parse(t).text() == t);
  for (const std::string t : {"(0)", "0(1)", "(0)|1(0)"}) CHECK(Branch::parse(t).text() == t);
  const auto x = Branch::parse("(0)|1(0)");
  CHECK(x.length() == Ordinal::omega_times(2));
  CHECK(x.at(Ordinal(1, 0)).text() == "(0)|1");
  CHECK(x.restrict(Ordinal(1, 0)).text() == "(0)|<>");
  CHECK(x.at(Ordinal(0, 2)).text() == "000");
}

TEST_CASE("plain tree generators") {
  const auto t = plain();
  CHECK(exact_is_empty(t.generator(Node{})) == true);
  const auto a0 = t.generator(Node::parse("0"));
  REQUIRE(a0.is_exact());
  CHECK(*a0.cylinder() == CylinderSet::cylinder(BitString::from_text("1")));
  std::vector<std::uint64_t> first;
  for (std::uint64_t m = 0; first.size() < 7; ++m)
    if (a0.contains(m)) first.push_back(m);
  CHECK(first == std::vector<std::uint64_t>{2, 5, 6, 11, 12, 13, 14});
  for (const auto& tau : all_strings(6)) {
    if (tau.empty()) continue;
    const auto node = Node::parse(tau);
    CHECK(oracle::of(t.generator(node)) == ([&] {
            oracle::Bits b;
            for (std::uint64_t m = 0; m < oracle::kUniverse; ++m) b[m] = base_member(tau, m);
            return b;
          })());
  }
}

TEST_CASE("locate along the zero branch") {
  const auto t = plain();
  const auto x = Branch::parse("(0)");
  for (std::uint64_t m = 0; m < oracle::kUniverse; ++m) {
    const auto pos = s(m).find('1');
    const auto got = t.locate(x.segments, m);
    if (pos == std::string::npos) {
      CHECK(got == std::nullopt);
    } else {
      CHECK(got == pos);
    }
  }
}

TEST_CASE("permutation stage membership goes through the block proxy") {
  const auto pi = schedule_requirements(hitting_requirements(CylinderSet::omega(), 4));
  const auto x = Branch::parse("(0)");
  const auto t = plain().with_stage({Stage::Kind::permutation, {x}, pi, {}, {}});
  CHECK(t.stage_count() == 1);
  for (const std::string tau : {"0", "1", "01", "110", "0001"}) {
    const auto node = Node::parse("(0)|" + tau);
    const auto rho = tau.substr(0, tau.size() - 1);
    for (std::uint64_t m = 0; m < oracle::kUniverse; ++m) {
      const auto pos = s(m).find('1');
      const bool zero = pos != std::string::npos && oracle::has_prefix(s(pi->at(pos)), rho + "1");
      CHECK(t.member(node, m) == (zero != (tau.back() == '1')));
    }
  }
  CHECK_FALSE(t.contains(Node::parse("(1)|0")));
  CHECK(t.is_path(Branch::parse("(0)|01(1)")));
  CHECK_FALSE(t.is_path(Branch::parse("(1)|(0)")));
  CHECK(t.is_maximal(Branch::parse("(1)")));
  CHECK_FALSE(t.is_maximal(x));
}

TEST_CASE("witnesses are sound on a sample") {
  const auto pi = schedule_requirements(hitting_requirements(CylinderSet::omega(), 3));
  const auto t = plain().with_stage({Stage::Kind::permutation, {Branch::parse("(0)")}, pi, {}, {}});
  for (const std::string xs : {"(0)|(1)", "(0)|01(0)", "(0)|(10)"}) {
    const auto x = Branch::parse(xs);
    std::vector<Ordinal> levels;
    for (std::uint64_t n = 0; n < 5; ++n) levels.push_back(Ordinal(n));
    for (std::uint64_t n = 0; n < 5; ++n) levels.push_back(Ordinal(1, n));
    for (std::size_t j = 0; j < levels.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        const auto top = x.at(levels[j]);
        const auto w = t.witness(top, levels[i]);
        REQUIRE(w);
        if (!w->certified) continue;
        const auto lower = x.at(levels[i]);
        for (std::uint64_t m = 0; m < oracle::kUniverse; ++m) {
          bool in_f = false;
          for (const auto& g : w->F) in_f = in_f || t.member(x.at(g), m);
          if (in_f) continue;
          const bool a = t.member(lower, m);
          const bool b = t.member(top, m);
          if (w->kind == WitnessKind::subset_below) CHECK((!a || b));
          else CHECK((!a || !b));
        }
      }
    }
  }
}

TEST_CASE("validate accepts the plain and staged trees") {
  const auto r = validate(plain(), 6, {Branch::parse("(0)"), Branch::parse("01(1)")});
  CHECK(r.verdict.is_verified());
  CHECK(r.checks.size() == 8);
  const auto pi = schedule_requirements(hitting_requirements(CylinderSet::omega(), 3));
  const auto t = plain().with_stage({Stage::Kind::permutation, {Branch::parse("(0)")}, pi, {}, {}});
  const auto r2 = validate(t, 5, {Branch::parse("(0)|(1)"), Branch::parse("(1)")});
  for (const auto& [name, v] : r2.checks) CHECK_MESSAGE(!v.is_refuted(), name << ": " << v.detail);
}

TEST_CASE("a bad override is refuted") {
  const auto t = plain().with_override(Node::parse("0"), CylinderSet::cylinder(BitString::from_text("11")));
  const auto r = validate(t, 4, {Branch::parse("(0)")});
  CHECK(r.verdict.is_refuted());
  bool complement_refuted = false;
  for (const auto& [name, v] : r.checks)
    if (name == "(4) complement law") complement_refuted = v.is_refuted();
  CHECK(complement_refuted);
  CHECK_THROWS_AS(t.member(Node::parse("(0)|0"), 1), Error);
}

TEST_CASE("phi") {
  CHECK(phi(Branch::parse("(0)"), Branch::parse("001(1)")) == Ordinal(2));
  CHECK(phi(Branch::parse("(0)|(1)"), Branch::parse("(0)|1(0)")) == Ordinal(1, 1));
  CHECK(phi(Branch::parse("(0)"), Branch::parse("(0)")) == Ordinal::omega_times(1));
  CHECK(phi(Branch::parse("(0)"), Branch::parse("(0)|(1)")) == Ordinal::omega_times(1));
  CHECK_THROWS_AS(phi(Branch::parse("(0)|(0)"), Branch::parse("(0)")), Error);
}

TEST_CASE("ultrafilter examples") {
  const auto t = plain();
  CHECK(ultrafilter_decide(t, Branch::parse("(0)"), Node::parse("1")).in == true);
  CHECK(ultrafilter_decide(t, Branch::parse("00(1)"), Node::parse("000")).in == true);
  CHECK(ultrafilter_decide(t, Branch::parse("00(1)"), Node::parse("001")).in == false);
  CHECK(ultrafilter_decide(t, Branch::parse("00(1)"), Node::parse("00")).in == false);
  CHECK_THROWS_AS(ultrafilter_decide(t, Branch::parse("(0)"), Node{}), Error);
}

TEST_CASE("ultrafilter decisions agree with the sampled filter") {
  const auto t = plain();
  std::mt19937_64 rng(7);
  const auto sigmas = all_strings(5);
  for (int it = 0; it < 30; ++it) {
    const auto y = random_branch(rng);
    for (const auto& sigma : sigmas) {
      if (sigma.empty()) continue;
      const auto expect = brute_ultrafilter(y, sigma);
      REQUIRE_MESSAGE(expect, y.text() << " " << sigma);
      const auto node = Node::parse(sigma);
      const auto d = ultrafilter_decide(t, y, node);
      CHECK_MESSAGE(d.in == expect, y.text() << " " << sigma);
      CHECK(ultrafilter_decide(t, y, node.dagger()).in == !*d.in);
    }
  }
}

TEST_CASE("branch recovered from its ultrafilter") {
  const auto pi = schedule_requirements(hitting_requirements(CylinderSet::omega(), 3));
  const auto t = plain().with_stage({Stage::Kind::permutation, {Branch::parse("(0)")}, pi, {}, {}});
  std::mt19937_64 rng(11);
  for (int it = 0; it < 20; ++it) {
    auto y = random_branch(rng);
    if (y == Branch::parse("(0)")) y = y.extended(Pattern("01", "1"));
    const auto oracle = [&](const Node& n) { return *ultrafilter_decide(t, y, n).in; };
    if (y.segments.size() == 1) {
      CHECK(branch_from_oracle(t, oracle, 12) == y.segments[0].prefix(12));
    } else {
      CHECK(branch_from_oracle(t, oracle, 12, Node::parse("(0)|<>")) == y.segments[1].prefix(12));
    }
  }
  const auto principal = [&](const Node& n) { return t.member(n, 2); };
  CHECK(branch_from_oracle(plain(), principal, 4).text() == "1000");
  CHECK(branch_from_oracle(plain(), principal, 0).empty());
  const auto liar = [](const Node&) { return true; };
  CHECK_THROWS_AS(branch_from_oracle(t, liar, 3), Error);
}

TEST_CASE("hats of twins are disjoint") {
  const auto pi = schedule_requirements(hitting_requirements(CylinderSet::omega(), 3));
  const auto t = plain().with_stage({Stage::Kind::permutation, {Branch::parse("(0)")}, pi, {}, {}});
  const auto x = Branch::parse("(0)|1(0)");
  for (const auto& alpha : {Ordinal(3), Ordinal(1, 0), Ordinal(1, 4)}) CHECK(hats_disjoint(t, x, alpha).is_verified());
  CHECK_THROWS_AS(hats_disjoint(t, Branch::parse("(0)"), Ordinal(1, 0)), Error);
}

TEST_CASE("spine sequences converge in the plain tree") {
  const auto x = Branch::parse("(0)");
  const auto spine = spine_sequence(x);
  CHECK(spine.at(0).text() == "(1)");
  CHECK(spine.at(3).text() == "000(1)");
  Limits limits;
  limits.horizon = 512;
  const auto c = converges_in_stone(plain(), spine, x, 8, limits);
  CHECK(c.verdict.is_verified());
  const auto k = kill_indices(plain(), x, spine, 10);
  CHECK(k == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
}

TEST_CASE("splitting stage satisfies the axioms") {
  const auto t = plain().with_stage({Stage::Kind::splitting, {Branch::parse("(0)")}, nullptr, evens(), "evens"});
  const auto r = validate(t, 5, {Branch::parse("(0)|(1)"), Branch::parse("(0)|0(1)")});
  for (const auto& [name, v] : r.checks) CHECK_MESSAGE(!v.is_refuted(), name << ": " << v.detail);
  CHECK(to_dot(t, 2).find("digraph") == 0);
}
