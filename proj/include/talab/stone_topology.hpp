#pragma once

// The scattered topology on lambda + 1 generated by the hats of a coherent
// sequence of length lambda and their complements.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "talab/coherent.hpp"

namespace talab {

class OrdinalSpace {
 public:
  /// Materializes the first `count` indices (canonical order) plus the top.
  OrdinalSpace(const CoherentSequence& seq, std::size_t count, Limits limits = {});

  const CoherentSequence& seq() const { return *seq_; }
  Ordinal top() const { return seq_->length(); }
  const Limits& limits() const { return limits_; }
  /// Materialized points, ascending, top last.
  const std::vector<Ordinal>& points() const { return points_; }
  /// Materialized points without the top.
  std::vector<Ordinal> lower_points() const;
  /// A larger run of the canonical order, used as evidence for limit points.
  const std::vector<Ordinal>& sample() const { return sample_; }

  /// alpha in hat(beta) for beta below the top.
  std::optional<bool> in_hat(const Ordinal& alpha, const Ordinal& beta) const;
  /// alpha in the union of hat(f), f in F.
  std::optional<bool> in_hats(const Ordinal& alpha, const std::vector<Ordinal>& F) const;

 private:
  const CoherentSequence* seq_;
  Limits limits_;
  std::vector<Ordinal> points_;
  std::vector<Ordinal> sample_;
};

struct SubbaseElement {
  enum class Kind { hat, cohat };
  Kind kind = Kind::hat;
  Ordinal index;

  std::optional<bool> contains(const OrdinalSpace& space, const Ordinal& p) const;
  std::string text() const;
  bool operator==(const SubbaseElement&) const = default;
};

struct SubbasicCover {
  std::vector<Ordinal> hats;
  std::vector<Ordinal> cohats;

  std::vector<SubbaseElement> elements() const;
};

struct SubcoverResult {
  Verdict verdict;
  std::vector<SubbaseElement> elements;
  /// Points whose covering drove each step of the descent.
  std::vector<Ordinal> descent;
};

/// Descends from the top: the largest point not yet covered picks the element
/// covering it that covers the most remaining points. The result is
/// re-verified against every materialized point.
SubcoverResult finite_subcover(const OrdinalSpace& space, const SubbasicCover& cover);

struct Neighborhood {
  Ordinal alpha;
  std::vector<Ordinal> F;
  /// Materialized members.
  std::vector<Ordinal> members;
  std::string text() const;
};

/// hat(alpha) \ hat(F_i) for F_i the first i elements of alpha, i < k; at the
/// top, (lambda + 1) \ hat(F_i).
std::vector<Neighborhood> neighborhood_base(const OrdinalSpace& space, const Ordinal& alpha, std::size_t k);

struct PointSequence {
  std::string name;
  std::function<Ordinal(std::uint64_t)> at;
};

/// Checks the first `depth` canonical neighborhoods of the target for a tail
/// of the sequence below the horizon. Refuted needs min_witnesses escapees
/// past half the horizon.
Verdict converges(const OrdinalSpace& space, const PointSequence& points, const Ordinal& target, std::size_t depth);

struct RankTable {
  Verdict verdict;
  std::map<Ordinal, std::uint64_t> rank;
};

/// Cantor-Bendixson ranks of the materialized points.
RankTable cantor_bendixson(const OrdinalSpace& space);

}  // namespace talab
