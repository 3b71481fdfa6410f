#pragma once

// T-algebras on staged trees. Stage 0 is 2^{<omega}; each later stage grafts
// a copy of 2^{<omega} above finitely many branches of length omega*s.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "talab/coherent.hpp"
#include "talab/generic_perm.hpp"

namespace talab {

/// Eventually periodic bit string head (cycle)^omega, e.g. "00(1)".
class Pattern {
 public:
  Pattern() : Pattern("", "0") {}
  Pattern(std::string head, std::string cycle);
  static Pattern parse(std::string_view text);
  static Pattern constant(bool b) { return Pattern("", b ? "1" : "0"); }

  bool bit(std::uint64_t j) const;
  BitString prefix(std::size_t n) const;
  std::optional<std::uint64_t> next_one(std::uint64_t from) const;
  /// First index where the two differ; nullopt when equal.
  std::optional<std::uint64_t> first_difference(const Pattern& other) const;

  const std::string& head() const { return head_; }
  const std::string& cycle() const { return cycle_; }
  std::string text() const { return head_ + "(" + cycle_ + ")"; }

  auto operator<=>(const Pattern&) const = default;

 private:
  std::string head_;
  std::string cycle_;
};

struct Node {
  /// Patterns of the branch below the last limit level.
  std::vector<Pattern> chain;
  BitString tail;

  Ordinal level() const { return {chain.size(), tail.size()}; }
  bool successor() const { return !tail.empty(); }
  Node child(bool b) const { return {chain, tail.child(b)}; }
  Node dagger() const { return {chain, tail.flip_last()}; }
  /// Ancestor at the given level (at most this node's level).
  Node restrict(const Ordinal& level) const;
  /// "(0)|01": chain patterns then the tail, separated by '|'.
  std::string text() const;
  static Node parse(std::string_view text);

  auto operator<=>(const Node&) const = default;
};

struct Branch {
  std::vector<Pattern> segments;

  Ordinal length() const { return Ordinal::omega_times(segments.size()); }
  /// x restricted to a level at most its length.
  Node restrict(const Ordinal& level) const;
  /// x restricted to alpha + 1: the node whose generator is a^x_alpha.
  Node at(const Ordinal& alpha) const { return restrict(ord_succ(alpha)); }
  Branch extended(const Pattern& p) const;
  /// Segments joined by '|', e.g. "(0)|1(0)".
  std::string text() const;
  static Branch parse(std::string_view text);

  auto operator<=>(const Branch&) const = default;
};

struct Stage {
  enum class Kind { permutation, splitting };
  Kind kind = Kind::permutation;
  /// Branches of length omega*(stage number) that receive a new copy.
  std::vector<Branch> grafted;
  std::shared_ptr<const Permutation> pi;
  EvaluableSet splitter;
  std::string splitter_name;
};

class TTree {
 public:
  /// Stage 0: a_{sigma 0} = {k in pi(L) : sigma_k extends sigma 1}.
  static TTree base(std::shared_ptr<const Permutation> pi, EvaluableSet L);

  /// Adds a stage above branches of length omega*(stage_count() + 1).
  TTree with_stage(Stage stage) const;
  /// Replaces one generator; used to build faulty trees.
  TTree with_override(const Node& node, EvaluableSet set) const;

  std::size_t stage_count() const;
  const std::vector<Stage>& stages() const;
  const Permutation& base_permutation() const;
  const EvaluableSet& base_index_set() const;
  const std::map<Node, EvaluableSet>& overrides() const;

  bool contains(const Node& node) const;
  /// Every limit-level prefix of x is grafted.
  bool is_path(const Branch& x) const;
  /// A path that is not itself grafted.
  bool is_maximal(const Branch& x) const;

  bool member(const Node& node, std::uint64_t m) const;
  EvaluableSet generator(const Node& node) const;

  /// Block index of m along the path below level omega*|chain|, i.e. the
  /// least k with m in a^x_{e(k)}; nullopt when m lies in no such set.
  std::optional<std::uint64_t> locate(const std::vector<Pattern>& chain, std::uint64_t m) const;
  /// Same for the generators below a node: tail levels come first, then e.
  std::optional<std::uint64_t> locate_node(const Node& node, std::uint64_t m) const;
  /// The ordinal enumerated at position n of a node's generator order.
  static Ordinal node_order(const Node& node, std::uint64_t n);
  static std::uint64_t node_order_inverse(const Node& node, const Ordinal& alpha);

  /// Coherence witness for the pair (alpha, beta) along `top`, where top
  /// sits at level beta + 1 and alpha < beta.
  std::optional<CoherenceWitness> witness(const Node& top, const Ordinal& alpha) const;
  /// Kind only, with certification; skips collecting F.
  std::optional<WitnessKind> witness_kind(const Node& top, const Ordinal& alpha) const;

  std::string describe() const;

 private:
  struct Impl;
  explicit TTree(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// <a^x_alpha : alpha < lambda_x> along a path of the tree.
class BranchSequence : public CoherentSequence {
 public:
  BranchSequence(TTree tree, Branch x);

  Ordinal length() const override { return x_.length(); }
  EvaluableSet entry(const Ordinal& alpha) const override;
  std::optional<CoherenceWitness> witness(const Ordinal& alpha, const Ordinal& beta) const override;
  std::string describe() const override { return "branch " + x_.text(); }

  const Branch& branch() const { return x_; }
  const TTree& tree() const { return tree_; }

 private:
  TTree tree_;
  Branch x_;
};

struct ValidationReport {
  Verdict verdict;
  std::vector<std::pair<std::string, Verdict>> checks;
  /// Coherence tables per listed branch.
  std::vector<std::pair<Branch, CoherenceReport>> coherence;
};

/// Axioms (1)-(4) on nodes with tails up to `depth`, axiom (5) on each listed
/// branch over its first depth * |segments| indices.
ValidationReport validate(const TTree& tree, std::size_t depth, const std::vector<Branch>& branches,
                          const Limits& limits = {});

/// Level at which y leaves x, or lambda_x when y runs through x.
Ordinal phi(const Branch& x, const Branch& y);

struct Decision {
  std::optional<bool> in;
  std::string trace;
};

/// Whether a_sigma belongs to the ultrafilter U_y of the maximal branch y.
Decision ultrafilter_decide(const TTree& tree, const Branch& y, const Node& sigma);

/// Descends from the node `start`, at each level taking the child whose
/// generator the oracle says is outside the ultrafilter. Returns the tail
/// bits chosen below `start`.
BitString branch_from_oracle(const TTree& tree, const std::function<bool(const Node&)>& oracle, std::size_t depth,
                             const Node& start = {});

/// hat of x|(alpha+1) and hat of its dagger share no point below alpha
/// among the first `count` ordinals.
Verdict hats_disjoint(const TTree& tree, const Branch& x, const Ordinal& alpha, std::size_t count = 64);

struct BranchSequenceDescriptor {
  std::string name;
  std::function<Branch(std::uint64_t)> at;
};

/// y_n leaves x at level omega*(s-1) + step*n + offset and then follows the
/// opposite constant bit.
BranchSequenceDescriptor spine_sequence(const Branch& x, std::uint64_t step = 1, std::uint64_t offset = 0);

struct StoneConvergence {
  Verdict verdict;
  /// For a refutation by a clopen set: the node and the indices n on each side.
  std::optional<Node> separator;
  std::vector<std::uint64_t> in;
  std::vector<std::uint64_t> out;
};

/// Convergence of U_{y_n} to U_target in the Stone space. First looks for a
/// generator along the target that splits the sequence into two infinite
/// parts; otherwise checks the basic neighborhoods given by the first
/// `depth` generators along the target.
StoneConvergence converges_in_stone(const TTree& tree, const BranchSequenceDescriptor& points, const Branch& target,
                                    std::size_t depth, const Limits& limits = {});

/// k_n = least k with a^x_{e(k)} in U_{y_n}, for n < count.
std::vector<std::uint64_t> kill_indices(const TTree& tree, const Branch& x, const BranchSequenceDescriptor& points,
                                        std::size_t count);

/// DOT graph of the nodes with tails up to `depth`, with dagger pairs.
std::string to_dot(const TTree& tree, std::size_t depth);

}  // namespace talab
