#pragma once

// Coherent sequences <a_alpha : alpha < lambda>, coherence witnesses and the
// hat operator.

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "talab/omega_sets.hpp"
#include "talab/ordinals.hpp"

namespace talab {

enum class WitnessKind { cap_below, subset_below };

std::string_view to_string(WitnessKind k);

/// cap_below: a_alpha n a_beta <= a_F. subset_below: a_alpha <= a_beta u a_F.
/// Every member of F is below alpha. `certified` is false when the producer
/// could not guarantee the containment.
struct CoherenceWitness {
  WitnessKind kind = WitnessKind::cap_below;
  std::vector<Ordinal> F;
  bool certified = true;
};

class CoherentSequence {
 public:
  virtual ~CoherentSequence() = default;

  virtual Ordinal length() const = 0;
  virtual EvaluableSet entry(const Ordinal& alpha) const = 0;
  /// Stored witness for alpha < beta, if the sequence carries one.
  virtual std::optional<CoherenceWitness> witness(const Ordinal& alpha, const Ordinal& beta) const = 0;
  /// alpha in hat(beta); nullopt when undecided.
  virtual std::optional<bool> hat_member(const Ordinal& alpha, const Ordinal& beta, const Limits& limits) const;
  /// Canonical enumeration of the indices: identity below a finite length,
  /// e_lambda otherwise.
  virtual Ordinal index_at(std::uint64_t n) const;
  virtual std::string describe() const { return "sequence"; }
};

/// First `count` indices below `up_to` in canonical order, sorted.
std::vector<Ordinal> materialize(const CoherentSequence& seq, const Ordinal& up_to, std::size_t count);

/// a_F as a set.
EvaluableSet union_of(const CoherentSequence& seq, const std::vector<Ordinal>& F);

/// Finite list of sets. Witnesses are found by search and cached.
class ExplicitSequence : public CoherentSequence {
 public:
  explicit ExplicitSequence(std::vector<EvaluableSet> entries, std::vector<std::string> names = {});

  Ordinal length() const override { return entries_.size(); }
  EvaluableSet entry(const Ordinal& alpha) const override;
  std::optional<CoherenceWitness> witness(const Ordinal& alpha, const Ordinal& beta) const override;
  std::optional<bool> hat_member(const Ordinal& alpha, const Ordinal& beta, const Limits& limits) const override;
  std::string describe() const override;

 private:
  std::vector<EvaluableSet> entries_;
  std::vector<std::string> names_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<std::uint64_t, std::uint64_t>, std::optional<CoherenceWitness>> cache_;
};

/// Containment check: exact when the tiers allow it, otherwise verified up to
/// the horizon (horizon field set) or refuted with a point.
Verdict bounded_subset(const EvaluableSet& a, const EvaluableSet& b, const Limits& limits);

Verdict verify_witness(const CoherentSequence& seq, const Ordinal& alpha, const Ordinal& beta,
                       const CoherenceWitness& w, const Limits& limits = {});

struct WitnessRow {
  Ordinal alpha;
  Ordinal beta;
  std::optional<CoherenceWitness> witness;
  Verdict verdict;
};

struct CoherenceReport {
  Verdict verdict;
  std::vector<WitnessRow> rows;
};

/// Checks every pair of the given indices. A failing stored witness is
/// replaced by a search over F drawn from the listed indices below alpha.
CoherenceReport check_coherent(const CoherentSequence& seq, const std::vector<Ordinal>& indices,
                               const Limits& limits = {});
CoherenceReport check_coherent(const CoherentSequence& seq, const Ordinal& up_to, const Limits& limits = {},
                               std::size_t count = 64);

/// For each listed beta, a_beta minus the union of the listed earlier entries
/// must be infinite.
Verdict check_proper(const CoherentSequence& seq, const std::vector<Ordinal>& indices, const Limits& limits = {});
Verdict check_proper(const CoherentSequence& seq, const Ordinal& up_to, const Limits& limits = {},
                     std::size_t count = 64);

struct HatSet {
  const CoherentSequence* seq = nullptr;
  Ordinal beta;
  Limits limits;

  std::optional<bool> member(const Ordinal& alpha) const;
  /// Members among `points`; undecided points go to `unknown` when given.
  std::vector<Ordinal> materialize(const std::vector<Ordinal>& points,
                                   std::vector<Ordinal>* unknown = nullptr) const;
};

HatSet hat(const CoherentSequence& seq, const Ordinal& beta, const Limits& limits = {});

/// Every point lies in some hat(gamma), gamma in S u F.
Verdict is_cover(const CoherentSequence& seq, const std::vector<Ordinal>& S, const std::vector<Ordinal>& F,
                 const std::vector<Ordinal>& points, const Limits& limits = {});

}  // namespace talab
