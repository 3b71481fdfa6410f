#include "talab/talgebra.hpp"

#include <algorithm>
#include <numeric>

namespace talab {

// ---- Pattern ----------------------------------------------------------------

namespace {

void check_bits(std::string_view s, std::string_view what) {
  for (char c : s)
    if (c != '0' && c != '1') throw Error(std::string(what) + " must be a bit string, got '" + std::string(s) + "'");
}

}  // namespace

Pattern::Pattern(std::string head, std::string cycle) : head_(std::move(head)), cycle_(std::move(cycle)) {
  check_bits(head_, "pattern head");
  check_bits(cycle_, "pattern cycle");
  if (cycle_.empty()) throw Error("pattern cycle must be nonempty");
  const auto n = cycle_.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = cycle_[i] == cycle_[i - p];
    if (periodic) {
      cycle_.resize(p);
      break;
    }
  }
  while (!head_.empty() && head_.back() == cycle_.back()) {
    cycle_ = cycle_.back() + cycle_.substr(0, cycle_.size() - 1);
    head_.pop_back();
  }
}

Pattern Pattern::parse(std::string_view text) {
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.empty() || text.back() != ')')
    throw Error("pattern '" + std::string(text) + "' needs a cycle in parentheses, e.g. 00(1)");
  return Pattern(std::string(text.substr(0, open)), std::string(text.substr(open + 1, text.size() - open - 2)));
}

bool Pattern::bit(std::uint64_t j) const {
  if (j < head_.size()) return head_[j] == '1';
  return cycle_[(j - head_.size()) % cycle_.size()] == '1';
}

BitString Pattern::prefix(std::size_t n) const {
  if (n > kMaxBitLength) throw Error("prefix longer than " + std::to_string(kMaxBitLength) + " bits");
  BitString s;
  for (std::size_t j = 0; j < n; ++j) s = s.child(bit(j));
  return s;
}

std::optional<std::uint64_t> Pattern::next_one(std::uint64_t from) const {
  for (; from < head_.size(); ++from)
    if (head_[from] == '1') return from;
  if (cycle_.find('1') == std::string::npos) return std::nullopt;
  while (!bit(from)) ++from;
  return from;
}

std::optional<std::uint64_t> Pattern::first_difference(const Pattern& other) const {
  const auto bound = std::max(head_.size(), other.head_.size()) + std::lcm(cycle_.size(), other.cycle_.size());
  for (std::uint64_t j = 0; j < bound; ++j)
    if (bit(j) != other.bit(j)) return j;
  return std::nullopt;
}

// ---- Node and Branch ----------------------------------------------------------

namespace {

std::vector<std::string_view> split_bar(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto bar = text.find('|', start);
    parts.push_back(text.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start));
    if (bar == std::string_view::npos) return parts;
    start = bar + 1;
  }
}

std::vector<Pattern> first(const std::vector<Pattern>& v, std::size_t n) { return {v.begin(), v.begin() + n}; }

}  // namespace

Node Node::restrict(const Ordinal& lvl) const {
  if (lvl > level()) throw Error("level " + lvl.text() + " is above node " + text());
  if (lvl.omega < chain.size()) return {first(chain, lvl.omega), chain[lvl.omega].prefix(lvl.finite)};
  return {chain, tail.prefix(lvl.finite)};
}

std::string Node::text() const {
  std::string s;
  for (const auto& p : chain) s += p.text() + "|";
  return s + (tail.empty() ? "<>" : tail.text());
}

Node Node::parse(std::string_view text) {
  const auto parts = split_bar(text);
  Node n;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) n.chain.push_back(Pattern::parse(parts[i]));
  const auto t = parts.back();
  if (t != "<>") n.tail = BitString::from_text(t);
  return n;
}

Node Branch::restrict(const Ordinal& lvl) const {
  if (lvl > length()) throw Error("level " + lvl.text() + " is beyond branch " + text());
  if (lvl.omega == segments.size()) return {segments, {}};
  return {first(segments, lvl.omega), segments[lvl.omega].prefix(lvl.finite)};
}

Branch Branch::extended(const Pattern& p) const {
  Branch b = *this;
  b.segments.push_back(p);
  return b;
}

std::string Branch::text() const {
  std::string s;
  for (std::size_t i = 0; i < segments.size(); ++i) s += (i ? "|" : "") + segments[i].text();
  return s;
}

Branch Branch::parse(std::string_view text) {
  Branch b;
  for (auto part : split_bar(text)) b.segments.push_back(Pattern::parse(part));
  return b;
}

// ---- TTree ------------------------------------------------------------------

struct TTree::Impl {
  std::shared_ptr<const Permutation> pi0;
  EvaluableSet L;
  std::vector<Stage> stages;
  std::map<Node, EvaluableSet> overrides;

  bool in_base(std::uint64_t m) const { return L.contains(pi0->inverse(m)); }

  bool grafted(const std::vector<Pattern>& chain) const {
    if (chain.empty()) return true;
    if (stages.size() < chain.size()) return false;
    const auto& ys = stages[chain.size() - 1].grafted;
    return std::find_if(ys.begin(), ys.end(), [&](const Branch& y) { return y.segments == chain; }) != ys.end();
  }

  const Stage& stage_over(const std::vector<Pattern>& chain) const {
    if (!grafted(chain)) throw Error("no stage grafts above " + Branch{chain}.text());
    return stages[chain.size() - 1];
  }

  static std::optional<std::uint64_t> combine(const std::vector<std::optional<std::uint64_t>>& min_j,
                                              std::size_t count) {
    std::optional<std::uint64_t> best;
    for (std::size_t i = 0; i < count; ++i)
      if (min_j[i]) {
        const auto v = count * *min_j[i] + i;
        if (!best || v < *best) best = v;
      }
    return best;
  }

  // Least j with m in the generator at pattern-prefix j+1, when membership
  // there is decided by comparing a proxy string with the pattern.
  static std::optional<std::uint64_t> closed_form(const std::optional<BitString>& proxy, const Pattern& p) {
    if (!proxy) return p.next_one(0);
    for (std::size_t d = 0; d < proxy->size(); ++d)
      if (proxy->bit(d) != p.bit(d)) return d;
    return p.next_one(proxy->size());
  }

  std::optional<std::uint64_t> splitting_scan(const Stage& st, const Pattern& p,
                                              std::optional<std::uint64_t> below) const {
    if (!below) return p.next_one(0);
    std::uint64_t limit = 1'000'000;
    if (const auto* r = st.splitter.residue()) limit = p.head().size() + std::lcm(p.cycle().size(), r->modulus);
    for (std::uint64_t j = 0; j <= limit; ++j) {
      const bool g = st.splitter.contains(j + *below);
      if (g != p.bit(j)) return j;
    }
    if (st.splitter.residue()) return std::nullopt;
    throw BudgetExhausted("splitting scan along " + p.text() + " exceeded its budget");
  }

  std::optional<std::uint64_t> locate(const std::vector<Pattern>& chain, std::uint64_t m) const {
    std::vector<std::optional<std::uint64_t>> min_j(chain.size());
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const auto& p = chain[i];
      if (i == 0) {
        min_j[i] = closed_form(in_base(m) ? std::optional(BitString::from_index(m)) : std::nullopt, p);
        continue;
      }
      const auto& st = stage_over(first(chain, i));
      const auto below = combine(min_j, i);
      if (st.kind == Stage::Kind::permutation) {
        min_j[i] = closed_form(below ? std::optional(BitString::from_index(st.pi->at(*below))) : std::nullopt, p);
      } else {
        min_j[i] = splitting_scan(st, p, below);
      }
    }
    return combine(min_j, chain.size());
  }

  std::optional<std::uint64_t> locate_node(const Node& node, std::uint64_t m) const {
    for (std::size_t n = 0; n < node.tail.size(); ++n)
      if (raw_member({node.chain, node.tail.prefix(n + 1)}, m)) return n;
    const auto below = locate(node.chain, m);
    if (!below) return std::nullopt;
    return node.tail.size() + *below;
  }

  // m in a_{chain tau 0}.
  bool zero_member(const std::vector<Pattern>& chain, const BitString& tau, std::uint64_t m) const {
    const auto target = tau.child(true);
    if (chain.empty()) return in_base(m) && target.is_prefix_of(BitString::from_index(m));
    const auto& st = stage_over(chain);
    if (st.kind == Stage::Kind::permutation) {
      const auto k = locate(chain, m);
      return k && target.is_prefix_of(BitString::from_index(st.pi->at(*k)));
    }
    const auto k = locate_node({chain, tau}, m);
    return k && st.splitter.contains(*k);
  }

  bool raw_member(const Node& node, std::uint64_t m) const {
    if (node.tail.empty()) return false;
    const auto n = node.tail.size();
    return zero_member(node.chain, node.tail.prefix(n - 1), m) != node.tail.bit(n - 1);
  }

  bool member(const Node& node, std::uint64_t m) const {
    if (!overrides.empty())
      if (auto it = overrides.find(node); it != overrides.end()) return it->second.contains(m);
    return raw_member(node, m);
  }

  // Block k of the top's generator order lies inside a_top.
  bool block_inside(const Node& top, std::uint64_t k) const {
    const auto n = top.tail.size();
    const auto tau = top.tail.prefix(n - 1);
    const bool b = top.tail.bit(n - 1);
    const auto& st = stage_over(top.chain);
    const bool s = st.kind == Stage::Kind::splitting
                       ? st.splitter.contains(k)
                       : tau.child(true).is_prefix_of(BitString::from_index(st.pi->at(k)));
    return s != b;
  }

  std::optional<CoherenceWitness> witness(const Node& top, const Ordinal& alpha, bool with_f) const {
    if (!top.successor()) throw Error("witness needs a successor-level node, got " + top.text());
    const auto beta = ord_pred(top.level());
    if (alpha >= beta) throw Error("witness needs alpha < beta, got " + alpha.text() + " >= " + beta.text());
    const bool b = top.tail.bit(top.tail.size() - 1);
    const Ordinal lambda = Ordinal::omega_times(top.chain.size());
    const bool splitting = !top.chain.empty() && stage_over(top.chain).kind == Stage::Kind::splitting;
    // Same segment, proxy-defined generators: every earlier generator there
    // misses a_{tau 0}.
    if (top.chain.empty() || (!splitting && alpha >= lambda))
      return CoherenceWitness{b ? WitnessKind::subset_below : WitnessKind::cap_below, {}, true};

    const Node path = splitting ? Node{top.chain, top.tail.prefix(top.tail.size() - 1)} : Node{top.chain, {}};
    const auto n = TTree::node_order_inverse(path, alpha);
    const bool side = block_inside(top, n);
    CoherenceWitness w{side ? WitnessKind::subset_below : WitnessKind::cap_below, {}, true};
    for (std::uint64_t k = 0; k < n; ++k) {
      const auto gamma = TTree::node_order(path, k);
      if (gamma < alpha && !with_f) continue;
      if (block_inside(top, k) == side) continue;
      if (gamma < alpha) {
        w.F.push_back(gamma);
        continue;
      }
      const auto sub = witness(path.restrict(ord_succ(gamma)), alpha, with_f);
      if (sub && sub->certified && sub->kind == WitnessKind::cap_below) {
        w.F.insert(w.F.end(), sub->F.begin(), sub->F.end());
      } else {
        w.certified = false;
        if (!with_f) break;
      }
    }
    std::sort(w.F.begin(), w.F.end());
    w.F.erase(std::unique(w.F.begin(), w.F.end()), w.F.end());
    return w;
  }
};

TTree TTree::base(std::shared_ptr<const Permutation> pi, EvaluableSet L) {
  if (!pi) throw Error("base algebra needs a permutation");
  auto impl = std::make_shared<Impl>();
  impl->pi0 = std::move(pi);
  impl->L = std::move(L);
  return TTree(std::move(impl));
}

TTree TTree::with_stage(Stage stage) const {
  const auto s = impl_->stages.size() + 1;
  for (const auto& y : stage.grafted) {
    if (y.segments.size() != s)
      throw Error("stage " + std::to_string(s) + " grafts branches of length " + Ordinal::omega_times(s).text() +
                  ", got " + y.text());
    if (!is_path(y)) throw Error("grafted branch " + y.text() + " is not a branch of the tree");
  }
  if (stage.kind == Stage::Kind::permutation && !stage.pi) throw Error("permutation stage needs a permutation");
  auto impl = std::make_shared<Impl>(*impl_);
  impl->stages.push_back(std::move(stage));
  return TTree(std::move(impl));
}

TTree TTree::with_override(const Node& node, EvaluableSet set) const {
  if (!contains(node)) throw Error("node " + node.text() + " is not in the tree");
  auto impl = std::make_shared<Impl>(*impl_);
  impl->overrides.insert_or_assign(node, std::move(set));
  return TTree(std::move(impl));
}

std::size_t TTree::stage_count() const { return impl_->stages.size(); }
const std::vector<Stage>& TTree::stages() const { return impl_->stages; }
const Permutation& TTree::base_permutation() const { return *impl_->pi0; }
const EvaluableSet& TTree::base_index_set() const { return impl_->L; }
const std::map<Node, EvaluableSet>& TTree::overrides() const { return impl_->overrides; }

bool TTree::contains(const Node& node) const { return impl_->grafted(node.chain); }

bool TTree::is_path(const Branch& x) const {
  if (x.segments.empty()) return false;
  for (std::size_t i = 1; i < x.segments.size(); ++i)
    if (!impl_->grafted(first(x.segments, i))) return false;
  return true;
}

bool TTree::is_maximal(const Branch& x) const { return is_path(x) && !impl_->grafted(x.segments); }

bool TTree::member(const Node& node, std::uint64_t m) const {
  if (!contains(node)) throw Error("node " + node.text() + " is not in the tree");
  return impl_->member(node, m);
}

EvaluableSet TTree::generator(const Node& node) const {
  if (!contains(node)) throw Error("node " + node.text() + " is not in the tree");
  if (auto it = impl_->overrides.find(node); it != impl_->overrides.end()) return it->second;
  if (node.tail.empty()) return CylinderSet{};
  const auto n = node.tail.size();
  if (node.chain.empty() && impl_->L.is_exact() && dynamic_cast<const IdentityPermutation*>(impl_->pi0.get())) {
    const auto zero = intersect(CylinderSet::cylinder(node.tail.prefix(n - 1).child(true)), *impl_->L.cylinder());
    return node.tail.bit(n - 1) ? complement(zero) : zero;
  }
  LazySet s;
  s.name = "a[" + node.text() + "]";
  s.member = [impl = impl_, node](std::uint64_t m) { return impl->raw_member(node, m); };
  return s;
}

std::optional<std::uint64_t> TTree::locate(const std::vector<Pattern>& chain, std::uint64_t m) const {
  return impl_->locate(chain, m);
}

std::optional<std::uint64_t> TTree::locate_node(const Node& node, std::uint64_t m) const {
  return impl_->locate_node(node, m);
}

Ordinal TTree::node_order(const Node& node, std::uint64_t n) {
  const auto t = node.tail.size();
  if (n < t) return {node.chain.size(), n};
  if (node.chain.empty()) throw Error("node " + node.text() + " has only " + std::to_string(t) + " generators below");
  return e_lambda(Ordinal::omega_times(node.chain.size()), n - t);
}

std::uint64_t TTree::node_order_inverse(const Node& node, const Ordinal& alpha) {
  if (alpha.omega == node.chain.size()) {
    if (alpha.finite >= node.tail.size()) throw Error(alpha.text() + " is not below node " + node.text());
    return alpha.finite;
  }
  return node.tail.size() + e_lambda_inverse(Ordinal::omega_times(node.chain.size()), alpha);
}

std::optional<CoherenceWitness> TTree::witness(const Node& top, const Ordinal& alpha) const {
  return impl_->witness(top, alpha, true);
}

std::optional<WitnessKind> TTree::witness_kind(const Node& top, const Ordinal& alpha) const {
  const auto w = impl_->witness(top, alpha, false);
  if (!w || !w->certified) return std::nullopt;
  return w->kind;
}

std::string TTree::describe() const {
  std::string s = "stage 0: pi = " + impl_->pi0->describe() + ", L = " + impl_->L.describe();
  for (std::size_t i = 0; i < impl_->stages.size(); ++i) {
    const auto& st = impl_->stages[i];
    s += "; stage " + std::to_string(i + 1) + ": ";
    s += st.kind == Stage::Kind::permutation ? "pi = " + st.pi->describe() : "splitter " + st.splitter_name;
    s += ", Y = {";
    for (std::size_t j = 0; j < st.grafted.size(); ++j) s += (j ? ", " : "") + st.grafted[j].text();
    s += "}";
  }
  return s;
}

}  // namespace talab
