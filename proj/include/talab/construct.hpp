#pragma once

// Generator constructions: the base algebra, permutation stages built from
// blocks, splitting stages, and the staged pipeline that folds them.

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "talab/talgebra.hpp"

namespace talab {

using NamedVerdicts = std::vector<std::pair<std::string, Verdict>>;

/// A construction step rejected by a refuted or unknown precondition.
class GateFailure : public Error {
 public:
  GateFailure(const std::string& what, Status status) : Error(what), status_(status) {}
  Status status() const { return status_; }

 private:
  Status status_;
};

struct Built {
  TTree tree;
  NamedVerdicts checks;
};

/// Every sigma of length `depth` has some k in L with sigma_{pi(k)} extending it.
Verdict hitting_check(const Permutation& pi, const EvaluableSet& L, std::size_t depth, const Limits& limits = {});

/// Stage 0 over (pi, L). Throws when the hitting check is refuted, or is
/// unknown and allow_unknown is off.
Built base_algebra(std::shared_ptr<const Permutation> pi, EvaluableSet L, std::size_t depth = 12,
                   const Limits& limits = {}, bool allow_unknown = false);

/// c^x_n = a^x_{e(n)} minus earlier blocks, with the locator and L_x.
class BlockTable {
 public:
  BlockTable(TTree tree, Branch x);

  const Branch& branch() const { return x_; }
  /// Exact for stage-0 branches over exact generators, lazy otherwise.
  EvaluableSet block(std::uint64_t n) const;
  /// Union of the first n blocks.
  EvaluableSet prefix_union(std::uint64_t n) const;
  std::optional<std::uint64_t> locate(std::uint64_t m) const { return tree_.locate(x_.segments, m); }
  /// c^x_n nonempty; lazy blocks are searched below the horizon.
  Verdict nonempty(std::uint64_t n, const Limits& limits = {}) const;
  /// L_x = {n : c^x_n nonempty}.
  EvaluableSet index_set(const Limits& limits = {}) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<std::uint64_t, std::uint64_t>, Verdict> nonempty;
  };

  TTree tree_;
  Branch x_;
  bool exact_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Every sigma of length `depth` has some k in L_y with sigma_{pi(k)} extending it.
Verdict validity_check(const BlockTable& blocks, const Permutation& pi, std::size_t depth, const Limits& limits = {});

/// New permutation stage above each y in Y, gated by the validity check.
Built extend(const TTree& tree, std::shared_ptr<const Permutation> pi, const std::vector<Branch>& Y,
             std::size_t depth = 8, const Limits& limits = {}, bool allow_unknown = false);

struct ModelStage {
  std::string name;
  std::vector<std::pair<std::string, EvaluableSet>> sets;
};

struct SplitterContext {
  std::vector<ModelStage> stages;
  std::function<EvaluableSet(std::size_t)> splitter;
  std::function<std::string(std::size_t)> splitter_name;
};

struct SplitCertificate {
  Branch x;
  std::string set;
  Verdict verdict;
};

struct SplitResult {
  Verdict verdict;
  TTree tree;
  std::vector<SplitCertificate> certificates;
};

/// Grafts Y with a_{x tau 0} = union of blocks whose index lies in the
/// splitter of `stage`. Refuted, with the tree unchanged, when the splitter
/// fails to split a listed set.
SplitResult splitting_extend(const TTree& tree, const SplitterContext& ctx, std::size_t stage,
                             const std::vector<Branch>& Y, const Limits& limits = {});

struct KernelResult {
  Verdict verdict;
  Node separator;
  std::vector<std::uint64_t> in;
  std::vector<std::uint64_t> out;
};

/// Counts n with a_{x 0} in U_{y_n} and n with it outside, stopping at
/// min_witnesses per side or the horizon.
KernelResult no_convergence_kernel(const TTree& tree, const Branch& x, const BranchSequenceDescriptor& points,
                                   const Limits& limits = {});

struct StageSpec {
  Stage::Kind kind = Stage::Kind::permutation;
  std::vector<Branch> grafts;
  std::shared_ptr<const Permutation> pi;
  /// Used when pi is null; receives the tree built so far.
  std::function<std::shared_ptr<const Permutation>(const TTree&)> pi_source;
  EvaluableSet splitter;
  std::string splitter_name;
  /// Sets the splitter must split (splitting stages).
  std::vector<std::pair<std::string, EvaluableSet>> tests;
  /// Proceed when the validity check is unknown.
  bool allow_unknown = false;
};

struct PipelineResult {
  TTree tree;
  /// Per stage, starting with the base.
  std::vector<NamedVerdicts> stages;
  std::vector<SplitCertificate> certificates;
};

/// Base algebra then each stage in order; every stage is validated over
/// `branches` that fit the tree so far. Throws naming the failing stage.
PipelineResult staged_pipeline(std::shared_ptr<const Permutation> pi0, EvaluableSet L,
                               const std::vector<StageSpec>& stages, const std::vector<Branch>& branches,
                               std::size_t depth, const Limits& limits = {});

struct KillDemo {
  Branch x;
  Branch after_target;
  StoneConvergence before;
  StoneConvergence after;
  std::vector<std::uint64_t> relevant;
  std::shared_ptr<const GenericPermutation> pi;
};

/// x_n = 0^n 1^inf against x = 0^inf: convergence before, then kill
/// requirements with parameter m, extend, and the refutation after.
KillDemo kill_demo(std::size_t m = 20, std::size_t depth = 12, const Limits& limits = {});

}  // namespace talab
