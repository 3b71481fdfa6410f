#include "talab/construct.hpp"

#include <algorithm>
#include <set>

namespace talab {

namespace {

constexpr std::size_t kMaxCheckDepth = 20;
// Symbolic blocks need nodes x|(n+1) with representable tails.
constexpr std::uint64_t kExactBlocks = 60;

// Stage 0 over the identity: c_n contains [x|n, 1 - x_n] n L.
std::optional<Verdict> symbolic_nonempty(const TTree& tree, const Branch& x, std::uint64_t n) {
  if (x.segments.size() != 1 || !tree.overrides().empty()) return std::nullopt;
  if (!dynamic_cast<const IdentityPermutation*>(&tree.base_permutation()) || !tree.base_index_set().is_exact())
    return std::nullopt;
  const auto& p = x.segments[0];
  auto tau = [&](std::uint64_t j) { return j < n ? p.bit(j) : !p.bit(n); };
  for (const auto& r : tree.base_index_set().cylinder()->roots()) {
    bool comparable = true;
    for (std::uint64_t j = 0; j < std::min<std::uint64_t>(r.size(), n + 1) && comparable; ++j)
      comparable = r.bit(j) == tau(j);
    if (comparable)
      return Verdict::verified("c" + std::to_string(n) + " contains the cylinder where x|" + std::to_string(n) +
                               " turns, which meets L");
  }
  return std::nullopt;
}

// Collects length-`depth` prefixes of sigma_{pi(k)} over admissible k.
Verdict prefix_search(const Permutation& pi, std::size_t depth, std::uint64_t bound,
                      const std::function<bool(std::uint64_t)>& admissible, const std::string& what) {
  if (depth > kMaxCheckDepth) throw Error(what + " depth above " + std::to_string(kMaxCheckDepth));
  const std::uint64_t need = std::uint64_t{1} << depth;
  std::set<std::uint64_t> seen;
  std::uint64_t misses = 0;
  for (std::uint64_t k = 0; k < bound && seen.size() < need && misses < 64 * need; ++k) {
    const auto s = BitString::from_index(pi.at(k));
    if (s.size() < depth) continue;
    const auto code = s.prefix(depth).code();
    if (seen.count(code)) continue;
    if (admissible(k)) seen.insert(code);
    else ++misses;
  }
  if (seen.size() == need) return Verdict::verified(what + " holds to depth " + std::to_string(depth));
  for (std::uint64_t code = need; code < 2 * need; ++code)
    if (!seen.count(code))
      return Verdict::unknown(what + ": no witness for <" + BitString::from_code(code).text() + "> below " +
                                  std::to_string(bound),
                              bound);
  return Verdict::unknown(what, bound);
}

std::uint64_t search_bound(const Limits& limits) { return std::min(limits.budget, limits.horizon << 6); }

void gate(const Verdict& v, bool allow_unknown, const std::string& what) {
  if (v.is_refuted()) throw GateFailure(what + " refuted: " + v.detail, v.status);
  if (v.is_unknown() && !allow_unknown) throw GateFailure(what + " not established: " + v.detail, v.status);
}

}  // namespace

Verdict hitting_check(const Permutation& pi, const EvaluableSet& L, std::size_t depth, const Limits& limits) {
  if (depth > kMaxCheckDepth) throw Error("hitting depth above " + std::to_string(kMaxCheckDepth));
  if (dynamic_cast<const IdentityPermutation*>(&pi) && L.is_exact()) {
    for (std::uint64_t code = std::uint64_t{1} << depth; code < (std::uint64_t{2} << depth); ++code) {
      const auto sigma = BitString::from_code(code);
      if (intersect(CylinderSet::cylinder(sigma), *L.cylinder()).is_empty())
        return Verdict::refuted("[" + sigma.text() + "] misses L", {code - 1});
    }
    return Verdict::verified("hitting condition holds to depth " + std::to_string(depth));
  }
  return prefix_search(pi, depth, search_bound(limits), [&](std::uint64_t k) { return L.contains(k); },
                       "hitting condition");
}

Built base_algebra(std::shared_ptr<const Permutation> pi, EvaluableSet L, std::size_t depth, const Limits& limits,
                   bool allow_unknown) {
  if (!pi) throw Error("base algebra needs a permutation");
  auto v = hitting_check(*pi, L, depth, limits);
  gate(v, allow_unknown, "hitting condition");
  return {TTree::base(std::move(pi), std::move(L)), {{"hitting condition", std::move(v)}}};
}

BlockTable::BlockTable(TTree tree, Branch x) : tree_(std::move(tree)), x_(std::move(x)) {
  if (!tree_.is_path(x_)) throw Error("branch " + x_.text() + " is not in the tree");
  exact_ = x_.segments.size() == 1 && tree_.overrides().empty() && tree_.generator(x_.at(Ordinal(0))).is_exact();
}

EvaluableSet BlockTable::prefix_union(std::uint64_t n) const {
  if (exact_ && n <= kExactBlocks) {
    CylinderSet u;
    for (std::uint64_t k = 0; k < n; ++k) u = unite(u, *tree_.generator(x_.at(Ordinal(k))).cylinder());
    return u;
  }
  LazySet s;
  s.name = "blocks<" + std::to_string(n) + "[" + x_.text() + "]";
  s.member = [tree = tree_, chain = x_.segments, n](std::uint64_t m) {
    const auto k = tree.locate(chain, m);
    return k && *k < n;
  };
  return s;
}

EvaluableSet BlockTable::block(std::uint64_t n) const {
  if (exact_ && n <= kExactBlocks) {
    const auto a = *tree_.generator(x_.at(Ordinal(n))).cylinder();
    return subtract(a, *prefix_union(n).cylinder());
  }
  LazySet s;
  s.name = "c" + std::to_string(n) + "[" + x_.text() + "]";
  s.member = [tree = tree_, chain = x_.segments, n](std::uint64_t m) { return tree.locate(chain, m) == n; };
  return s;
}

Verdict BlockTable::nonempty(std::uint64_t n, const Limits& limits) const {
  const std::pair key{n, limits.horizon};
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->nonempty.find(key); it != cache_->nonempty.end()) return it->second;
  }
  const std::string name = "c" + std::to_string(n);
  auto v = [&] {
    if (auto s = symbolic_nonempty(tree_, x_, n)) return *s;
    const auto c = block(n);
    if (const auto e = exact_is_empty(c))
      return *e ? Verdict::refuted(name + " is empty") : Verdict::verified(name + " is nonempty");
    if (const auto m = find_member(c, limits.horizon)) return Verdict::verified(name + " is nonempty", {*m});
    return Verdict::unknown(name + " has no member below the horizon", limits.horizon);
  }();
  std::lock_guard lock(cache_->mutex);
  return cache_->nonempty.emplace(key, std::move(v)).first->second;
}

EvaluableSet BlockTable::index_set(const Limits& limits) const {
  LazySet s;
  s.name = "L[" + x_.text() + "]";
  s.member = [table = *this, limits](std::uint64_t n) { return table.nonempty(n, limits).is_verified(); };
  return s;
}

Verdict validity_check(const BlockTable& blocks, const Permutation& pi, std::size_t depth, const Limits& limits) {
  return prefix_search(pi, depth, search_bound(limits),
                       [&](std::uint64_t k) { return blocks.nonempty(k, limits).is_verified(); },
                       "validity over " + blocks.branch().text());
}

Built extend(const TTree& tree, std::shared_ptr<const Permutation> pi, const std::vector<Branch>& Y,
             std::size_t depth, const Limits& limits, bool allow_unknown) {
  if (!pi) throw Error("extend needs a permutation");
  NamedVerdicts checks;
  for (const auto& y : Y) {
    auto v = validity_check(BlockTable(tree, y), *pi, depth, limits);
    gate(v, allow_unknown, "validity over " + y.text());
    checks.emplace_back("validity over " + y.text(), std::move(v));
  }
  Stage st;
  st.kind = Stage::Kind::permutation;
  st.grafted = Y;
  st.pi = std::move(pi);
  return {tree.with_stage(std::move(st)), std::move(checks)};
}

SplitResult splitting_extend(const TTree& tree, const SplitterContext& ctx, std::size_t stage,
                             const std::vector<Branch>& Y, const Limits& limits) {
  if (stage >= ctx.stages.size()) throw Error("splitter stage " + std::to_string(stage) + " is not listed");
  if (!ctx.splitter) throw Error("splitting context has no splitter");
  const auto splitter = ctx.splitter(stage);
  SplitResult out{Verdict::verified("splitter splits every listed set"), tree, {}};
  for (const auto& y : Y) {
    for (const auto& [name, set] : ctx.stages[stage].sets) {
      auto v = splits(splitter, set, limits);
      out.verdict = worst(out.verdict, v);
      out.certificates.push_back({y, name, std::move(v)});
    }
  }
  if (!out.verdict.is_verified()) return out;
  Stage st;
  st.kind = Stage::Kind::splitting;
  st.grafted = Y;
  st.splitter = splitter;
  st.splitter_name = ctx.splitter_name ? ctx.splitter_name(stage) : splitter.describe();
  out.tree = tree.with_stage(std::move(st));
  return out;
}

KernelResult no_convergence_kernel(const TTree& tree, const Branch& x, const BranchSequenceDescriptor& points,
                                   const Limits& limits) {
  KernelResult out{{}, Node{x.segments, BitString::from_text("0")}, {}, {}};
  for (std::uint64_t n = 0; n < limits.horizon; ++n) {
    if (out.in.size() >= limits.min_witnesses && out.out.size() >= limits.min_witnesses) break;
    const auto d = ultrafilter_decide(tree, points.at(n), out.separator);
    if (!d.in) continue;
    auto& side = *d.in ? out.in : out.out;
    if (side.size() < limits.min_witnesses) side.push_back(n);
  }
  const std::string counts = std::to_string(out.in.size()) + " in, " + std::to_string(out.out.size()) + " out";
  if (out.in.size() >= limits.min_witnesses && out.out.size() >= limits.min_witnesses) {
    out.verdict = Verdict::verified("a at " + out.separator.text() + " splits " + points.name + ": " + counts);
    out.verdict.horizon = limits.horizon;
  } else {
    out.verdict = Verdict::unknown("a at " + out.separator.text() + ": only " + counts, limits.horizon);
  }
  return out;
}

PipelineResult staged_pipeline(std::shared_ptr<const Permutation> pi0, EvaluableSet L,
                               const std::vector<StageSpec>& stages, const std::vector<Branch>& branches,
                               std::size_t depth, const Limits& limits) {
  auto fitting = [&](const TTree& t) {
    std::vector<Branch> out;
    for (const auto& b : branches)
      if (t.is_path(b)) out.push_back(b);
    return out;
  };
  auto validated = [&](const TTree& t, NamedVerdicts checks) {
    for (auto& c : validate(t, depth, fitting(t), limits).checks) checks.push_back(std::move(c));
    return checks;
  };

  PipelineResult result{TTree::base(std::make_shared<IdentityPermutation>(), CylinderSet::omega()), {}, {}};
  try {
    auto base = base_algebra(std::move(pi0), std::move(L), depth, limits);
    result.tree = base.tree;
    result.stages.push_back(validated(result.tree, std::move(base.checks)));
  } catch (const GateFailure& e) {
    throw GateFailure("stage 0: " + std::string(e.what()), e.status());
  } catch (const Error& e) {
    throw Error("stage 0: " + std::string(e.what()));
  }
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const auto& spec = stages[i];
    try {
      NamedVerdicts checks;
      if (spec.kind == Stage::Kind::permutation) {
        auto pi = spec.pi ? spec.pi : spec.pi_source ? spec.pi_source(result.tree) : nullptr;
        auto built = extend(result.tree, std::move(pi), spec.grafts, depth, limits, spec.allow_unknown);
        result.tree = built.tree;
        checks = std::move(built.checks);
      } else {
        SplitterContext ctx{{{"stage " + std::to_string(i + 1), spec.tests}},
                            [&](std::size_t) { return spec.splitter; },
                            [&](std::size_t) { return spec.splitter_name; }};
        auto split = splitting_extend(result.tree, ctx, 0, spec.grafts, limits);
        if (!split.verdict.is_verified())
          throw GateFailure("splitter " + spec.splitter_name + ": " + split.verdict.detail, split.verdict.status);
        result.tree = split.tree;
        for (auto& c : split.certificates) {
          checks.emplace_back("splits " + c.set + " over " + c.x.text(), c.verdict);
          result.certificates.push_back(std::move(c));
        }
      }
      result.stages.push_back(validated(result.tree, std::move(checks)));
    } catch (const GateFailure& e) {
      throw GateFailure("stage " + std::to_string(i + 1) + ": " + e.what(), e.status());
    } catch (const Error& e) {
      throw Error("stage " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return result;
}

KillDemo kill_demo(std::size_t m, std::size_t depth, const Limits& limits) {
  KillDemo demo;
  demo.x = Branch::parse("(0)");
  demo.after_target = Branch::parse("(0)|(0)");
  const auto points = spine_sequence(demo.x);
  const auto base = base_algebra(std::make_shared<IdentityPermutation>(), CylinderSet::omega(), depth, limits);
  demo.before = converges_in_stone(base.tree, points, demo.x, depth, limits);

  // Nodes x|(k+1) carry k + 1 tail bits.
  if (2 * m + 8 > kExactBlocks) throw Error("kill demo supports m up to " + std::to_string((kExactBlocks - 8) / 2));
  demo.relevant = kill_indices(base.tree, demo.x, points, 2 * m + 8);
  auto reqs = hitting_requirements(CylinderSet::omega(), std::min<std::size_t>(depth, 4));
  for (auto& r : kill_requirements(demo.relevant, CylinderSet::cylinder(BitString::from_text("1")), m))
    reqs.push_back(std::move(r));
  demo.pi = schedule_requirements(std::move(reqs));

  const auto extended = extend(base.tree, demo.pi, {demo.x}, std::min<std::size_t>(depth, 8), limits);
  demo.after = converges_in_stone(extended.tree, points, demo.after_target, depth, limits);
  return demo;
}

}  // namespace talab
