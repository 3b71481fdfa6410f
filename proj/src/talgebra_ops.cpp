#include <algorithm>
#include <sstream>

#include "talab/talgebra.hpp"

namespace talab {

BranchSequence::BranchSequence(TTree tree, Branch x) : tree_(std::move(tree)), x_(std::move(x)) {
  if (!tree_.is_path(x_)) throw Error("branch " + x_.text() + " is not in the tree");
}

EvaluableSet BranchSequence::entry(const Ordinal& alpha) const { return tree_.generator(x_.at(alpha)); }

std::optional<CoherenceWitness> BranchSequence::witness(const Ordinal& alpha, const Ordinal& beta) const {
  return tree_.witness(x_.at(beta), alpha);
}

namespace {

std::vector<std::vector<Pattern>> all_chains(const TTree& tree) {
  std::vector<std::vector<Pattern>> chains{{}};
  for (const auto& st : tree.stages())
    for (const auto& y : st.grafted) chains.push_back(y.segments);
  return chains;
}

// Nodes chain^tau with |tau| < depth and tau ending in 0.
template <typename F>
void for_each_zero_node(const std::vector<Pattern>& chain, std::size_t depth, F&& f) {
  for (std::uint64_t code = 1; code < (std::uint64_t{1} << depth); ++code) f(Node{chain, BitString::from_code(code)}.child(false));
}

Verdict pointwise_equal(const EvaluableSet& a, const EvaluableSet& b, std::uint64_t horizon, const std::string& what) {
  for (std::uint64_t m = 0; m < horizon; ++m)
    if (a.contains(m) != b.contains(m)) return Verdict::refuted(what + " fails at " + std::to_string(m), {m});
  auto v = Verdict::verified(what);
  v.horizon = horizon;
  return v;
}

}  // namespace

ValidationReport validate(const TTree& tree, std::size_t depth, const std::vector<Branch>& branches,
                          const Limits& limits) {
  ValidationReport report{Verdict::verified("all axioms hold on materialized nodes"), {}, {}};
  auto record = [&](std::string name, Verdict v) {
    if (report.verdict.is_verified() && v.is_verified())
      report.verdict.horizon = std::max(report.verdict.horizon, v.horizon);
    else
      report.verdict = worst(report.verdict, v);
    report.checks.emplace_back(std::move(name), std::move(v));
  };

  Verdict closed = Verdict::verified("every listed branch and graft is a path of the tree");
  for (const auto& x : branches)
    if (!tree.is_path(x)) closed = Verdict::refuted("branch " + x.text() + " leaves the tree");
  record("(1) downward closed", closed);
  record("(2) twinned", Verdict::verified("nodes are closed under dagger by construction"));

  const auto chains = all_chains(tree);
  Verdict empty = Verdict::verified("generators vanish at limit levels");
  for (const auto& chain : chains) {
    const Node limit{chain, {}};
    const auto g = tree.generator(limit);
    const auto e = exact_is_empty(g);
    if (e == false || (!e && find_member(g, limits.horizon)))
      empty = Verdict::refuted("a at " + limit.text() + " is not empty");
  }
  record("(3) empty at non-successor levels", empty);

  Verdict comp = Verdict::verified("sibling generators are complements");
  for (const auto& chain : chains) {
    if (!comp.is_verified()) break;
    for_each_zero_node(chain, depth + 1, [&](const Node& zero) {
      if (!comp.is_verified()) return;
      const auto one = zero.dagger();
      const auto g0 = tree.generator(zero);
      const auto g1 = tree.generator(one);
      const std::string what = "complement law at " + zero.text();
      if (g0.is_exact() && g1.is_exact()) {
        if (complement(*g0.cylinder()) != *g1.cylinder()) comp = Verdict::refuted(what + " fails");
        return;
      }
      const bool touched = tree.overrides().count(zero) || tree.overrides().count(one);
      auto v = pointwise_equal(complement(g0), g1, touched ? limits.horizon : 64, what);
      if (!v.is_verified()) comp = v;
      else if (touched) comp.horizon = limits.horizon;
    });
  }
  record("(4) complement law", comp);

  for (const auto& x : branches) {
    if (!tree.is_path(x)) continue;
    const BranchSequence seq(tree, x);
    const auto indices = materialize(seq, seq.length(), depth * x.segments.size());
    auto coh = check_coherent(seq, indices, limits);
    record("(5) coherent along " + x.text(), coh.verdict);
    record("(5) proper along " + x.text(), check_proper(seq, indices, limits));
    report.coherence.emplace_back(x, std::move(coh));
  }
  return report;
}

Ordinal phi(const Branch& x, const Branch& y) {
  const auto shared = std::min(x.segments.size(), y.segments.size());
  for (std::size_t i = 0; i < shared; ++i)
    if (const auto d = x.segments[i].first_difference(y.segments[i])) return {i, *d};
  if (y.segments.size() >= x.segments.size()) return x.length();
  throw Error("branch " + y.text() + " is a proper initial part of " + x.text());
}

Decision ultrafilter_decide(const TTree& tree, const Branch& y, const Node& sigma) {
  if (!sigma.successor()) throw Error("ultrafilter_decide needs a successor-level node, got " + sigma.text());
  const auto beta = ord_pred(sigma.level());
  const auto c = sigma.chain.size();
  std::optional<Ordinal> delta;
  for (std::size_t i = 0; i < std::min(c, y.segments.size()) && !delta; ++i)
    if (const auto d = sigma.chain[i].first_difference(y.segments[i])) delta = Ordinal(i, *d);
  if (!delta) {
    if (c >= y.segments.size()) throw Error("node " + sigma.text() + " lies above branch " + y.text());
    for (std::size_t j = 0; j < sigma.tail.size() && !delta; ++j)
      if (sigma.tail.bit(j) != y.segments[c].bit(j)) delta = Ordinal(c, j);
    if (!delta) return {false, "sigma lies along y"};
  }
  if (*delta == beta) return {true, "sigma dagger lies along y"};
  const auto kind = tree.witness_kind(sigma, *delta);
  const std::string at = "divergence at " + delta->text();
  if (!kind) return {std::nullopt, at + ": witness not certified"};
  if (*kind == WitnessKind::subset_below) return {true, at + ": SubsetBelow"};
  return {false, at + ": CapBelow"};
}

BitString branch_from_oracle(const TTree& tree, const std::function<bool(const Node&)>& oracle, std::size_t depth,
                             const Node& start) {
  if (!tree.contains(start)) throw Error("node " + start.text() + " is not in the tree");
  Node node = start;
  BitString chosen;
  for (std::size_t j = 0; j < depth; ++j) {
    const auto n0 = node.child(false);
    const auto n1 = node.child(true);
    const bool o0 = oracle(n0);
    if (o0 == oracle(n1)) throw Error("inconsistent oracle at " + n0.text() + " / " + n1.text());
    node = o0 ? n1 : n0;
    chosen = chosen.child(o0);
  }
  return chosen;
}

Verdict hats_disjoint(const TTree& tree, const Branch& x, const Ordinal& alpha, std::size_t count) {
  if (ord_succ(alpha) >= x.length())
    throw Error("hats_disjoint needs alpha + 1 below " + x.length().text() + ", got " + alpha.text());
  const auto sigma = x.at(alpha);
  const auto dagger = sigma.dagger();
  bool undecided = false;
  for (std::uint64_t n = 0; n < count; ++n) {
    if (alpha.is_finite() && n >= alpha.finite) break;
    const auto gamma = alpha.is_finite() ? Ordinal(n) : e_alpha(alpha, n);
    const auto a = tree.witness_kind(sigma, gamma);
    const auto b = tree.witness_kind(dagger, gamma);
    if (a == WitnessKind::subset_below && b == WitnessKind::subset_below)
      return Verdict::refuted(gamma.text() + " lies in both hats at " + sigma.text());
    undecided = undecided || !a || !b;
  }
  if (undecided) return Verdict::unknown("some hat memberships are uncertified", 0);
  return Verdict::verified("hats at " + sigma.text() + " and its dagger are disjoint");
}

BranchSequenceDescriptor spine_sequence(const Branch& x, std::uint64_t step, std::uint64_t offset) {
  if (x.segments.empty()) throw Error("spine sequence needs a nonempty branch");
  return {"spine(" + x.text() + ", " + std::to_string(step) + "n+" + std::to_string(offset) + ")",
          [x, step, offset](std::uint64_t n) {
            const auto j = step * n + offset;
            const auto& last = x.segments.back();
            std::string head;
            for (std::uint64_t i = 0; i < j; ++i) head.push_back(last.bit(i) ? '1' : '0');
            const char flip = last.bit(j) ? '0' : '1';
            head.push_back(flip);
            Branch y = x;
            y.segments.back() = Pattern(head, std::string(1, flip));
            return y;
          }};
}

StoneConvergence converges_in_stone(const TTree& tree, const BranchSequenceDescriptor& points, const Branch& target,
                                    std::size_t depth, const Limits& limits) {
  const auto lambda = target.length();
  const auto horizon = limits.horizon;
  std::vector<Node> nodes;
  for (std::size_t k = 0; k < depth; ++k) nodes.push_back(target.at(e_lambda(lambda, k)));

  // table[n][k]: 1 in, 0 out, -1 undecided.
  std::vector<std::vector<signed char>> table(horizon, std::vector<signed char>(depth));
  for (std::uint64_t n = 0; n < horizon; ++n) {
    const auto y = points.at(n);
    for (std::size_t k = 0; k < depth; ++k) {
      const auto d = ultrafilter_decide(tree, y, nodes[k]);
      table[n][k] = d.in ? static_cast<signed char>(*d.in) : -1;
    }
  }

  StoneConvergence out;
  for (std::size_t k = 0; k < depth; ++k) {
    std::vector<std::uint64_t> in, outside;
    std::size_t total_in = 0, total_out = 0;
    for (std::uint64_t n = 0; n < horizon; ++n) {
      if (table[n][k] == 1 && total_in++ < limits.min_witnesses) in.push_back(n);
      if (table[n][k] == 0 && total_out++ < limits.min_witnesses) outside.push_back(n);
    }
    if (total_in >= limits.min_witnesses && total_out >= limits.min_witnesses) {
      out.verdict = Verdict::refuted("generator at " + nodes[k].text() + " holds for " + std::to_string(total_in) +
                                     " and fails for " + std::to_string(total_out) + " of the first " +
                                     std::to_string(horizon) + " points, so " + points.name + " has no limit");
      out.verdict.horizon = horizon;
      out.separator = nodes[k];
      out.in = std::move(in);
      out.out = std::move(outside);
      return out;
    }
  }

  const auto half = horizon / 2;
  for (std::size_t d = 1; d <= depth; ++d) {
    std::vector<std::uint64_t> escapees;
    std::size_t late = 0;
    bool undecided = false;
    for (std::uint64_t n = 0; n < horizon; ++n) {
      bool escaped = false;
      for (std::size_t k = 0; k < d; ++k) {
        if (table[n][k] == -1) undecided = true;
        escaped = escaped || table[n][k] == 1;
      }
      if (!escaped) continue;
      if (escapees.size() < limits.min_witnesses) escapees.push_back(n);
      late += n >= half;
    }
    const std::string where = "neighborhood " + std::to_string(d) + " of " + target.text();
    if (late >= limits.min_witnesses) {
      out.verdict = Verdict::refuted(points.name + " leaves " + where + " infinitely often", escapees);
      out.verdict.horizon = horizon;
      return out;
    }
    if (late > 0 || undecided) {
      out.verdict = Verdict::unknown(points.name + ": tail in " + where + " not settled", horizon);
      return out;
    }
  }
  out.verdict = Verdict::verified(points.name + " converges to " + target.text() + " to depth " +
                                  std::to_string(depth));
  out.verdict.horizon = horizon;
  return out;
}

std::vector<std::uint64_t> kill_indices(const TTree& tree, const Branch& x, const BranchSequenceDescriptor& points,
                                        std::size_t count) {
  const auto lambda = x.length();
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 0; n < count; ++n) {
    const auto y = points.at(n);
    const auto delta = phi(x, y);
    if (delta == lambda) continue;
    const auto last = e_lambda_inverse(lambda, delta);
    for (std::uint64_t k = 0; k <= last; ++k) {
      const auto d = ultrafilter_decide(tree, y, x.at(e_lambda(lambda, k)));
      if (!d.in) break;
      if (*d.in) {
        out.push_back(k);
        break;
      }
    }
  }
  return out;
}

std::string to_dot(const TTree& tree, std::size_t depth) {
  std::ostringstream os;
  os << "digraph tree {\n  node [shape=box, fontname=monospace];\n";
  auto id = [](const Node& n) { return "\"" + n.text() + "\""; };
  for (const auto& chain : all_chains(tree)) {
    const Node root{chain, {}};
    os << "  " << id(root) << ";\n";
    for (std::uint64_t code = 2; code < (std::uint64_t{2} << depth); ++code) {
      const Node n{chain, BitString::from_code(code)};
      os << "  " << id(n.restrict(ord_pred(n.level()))) << " -> " << id(n) << ";\n";
      if (!n.tail.bit(n.tail.size() - 1))
        os << "  " << id(n) << " -> " << id(n.dagger()) << " [style=dashed, dir=none, label=\"dagger\"];\n";
    }
    if (!chain.empty()) {
      Node below{std::vector<Pattern>(chain.begin(), chain.end() - 1), chain.back().prefix(std::min<std::size_t>(depth, 8))};
      os << "  " << id(below) << " -> " << id(root) << " [style=dotted, label=\"graft\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace talab
