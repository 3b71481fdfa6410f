#pragma once

// Permutations of omega built by meeting dense requirements over finite
// injective conditions.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "talab/omega_sets.hpp"

namespace talab {

class Permutation {
 public:
  virtual ~Permutation() = default;
  virtual std::uint64_t at(std::uint64_t k) const = 0;
  virtual std::uint64_t inverse(std::uint64_t v) const = 0;
  virtual std::string describe() const = 0;
};

class IdentityPermutation : public Permutation {
 public:
  std::uint64_t at(std::uint64_t k) const override { return k; }
  std::uint64_t inverse(std::uint64_t v) const override { return v; }
  std::string describe() const override { return "id"; }
};

/// Finite partial injection.
class PermCondition {
 public:
  PermCondition() = default;
  PermCondition(std::initializer_list<std::pair<const std::uint64_t, std::uint64_t>> pairs);

  bool defined(std::uint64_t k) const { return forward_.count(k) > 0; }
  bool used(std::uint64_t v) const { return backward_.count(v) > 0; }
  std::uint64_t at(std::uint64_t k) const { return forward_.at(k); }
  std::optional<std::uint64_t> preimage(std::uint64_t v) const;
  std::size_t size() const { return forward_.size(); }
  const std::map<std::uint64_t, std::uint64_t>& pairs() const { return forward_; }

  /// Throws unless k is free and v unused.
  void assign(std::uint64_t k, std::uint64_t v);
  bool extends(const PermCondition& smaller) const;

  bool operator==(const PermCondition& o) const { return forward_ == o.forward_; }

 private:
  std::map<std::uint64_t, std::uint64_t> forward_;
  std::map<std::uint64_t, std::uint64_t> backward_;
};

struct DenseRequirement {
  std::string name;
  std::function<bool(const PermCondition&)> meets;
  /// Must return an extension that meets the requirement.
  std::function<PermCondition(const PermCondition&)> extend;
};

struct ScheduleEntry {
  std::string name;
  std::size_t step = 0;
  PermCondition snapshot;
};

/// Meets every requirement round-robin at construction, then completes the
/// condition on demand: unassigned points below a queried k are filled in
/// increasing order, each with the least unused value. Queries are
/// serialized internally.
class GenericPermutation : public Permutation {
 public:
  explicit GenericPermutation(std::vector<DenseRequirement> reqs, PermCondition initial = {});

  std::uint64_t at(std::uint64_t k) const override;
  std::uint64_t inverse(std::uint64_t v) const override;
  std::string describe() const override;

  const std::vector<ScheduleEntry>& log() const { return log_; }
  /// Condition after scheduling, before any completion.
  const PermCondition& scheduled() const { return scheduled_; }
  const std::vector<std::string>& requirement_names() const { return names_; }

 private:
  void complete_through(std::uint64_t k) const;

  std::vector<std::string> names_;
  std::vector<ScheduleEntry> log_;
  PermCondition scheduled_;
  mutable std::mutex mutex_;
  mutable PermCondition state_;
  mutable std::uint64_t filled_ = 0;
  mutable std::uint64_t least_unused_ = 0;
};

/// Spot-checks each requirement's extend contract, then schedules.
std::shared_ptr<GenericPermutation> schedule_requirements(std::vector<DenseRequirement> reqs,
                                                          PermCondition initial = {});

/// One requirement per sigma with |sigma| <= depth: some k in L is sent into
/// [sigma]. extend uses the least free k in L and the least unused index of
/// [sigma].
std::vector<DenseRequirement> hitting_requirements(const EvaluableSet& L, std::size_t depth,
                                                   std::uint64_t budget = 1'000'000);

/// Requirements kill-in-j and kill-out-j, j = 1..m: at least j of the
/// relevant indices are sent inside (outside) `inside`. Throws when fewer
/// than 2m distinct relevant indices are given.
std::vector<DenseRequirement> kill_requirements(std::vector<std::uint64_t> relevant, const CylinderSet& inside,
                                                std::size_t m);

}  // namespace talab
