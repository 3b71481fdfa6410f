#include "talab/generic_perm.hpp"

#include <algorithm>
#include <set>

namespace talab {

PermCondition::PermCondition(std::initializer_list<std::pair<const std::uint64_t, std::uint64_t>> pairs) {
  for (const auto& [k, v] : pairs) assign(k, v);
}

std::optional<std::uint64_t> PermCondition::preimage(std::uint64_t v) const {
  if (auto it = backward_.find(v); it != backward_.end()) return it->second;
  return std::nullopt;
}

void PermCondition::assign(std::uint64_t k, std::uint64_t v) {
  if (defined(k)) throw Error("condition already defines " + std::to_string(k));
  if (used(v)) throw Error("condition already uses value " + std::to_string(v));
  forward_.emplace(k, v);
  backward_.emplace(v, k);
}

bool PermCondition::extends(const PermCondition& smaller) const {
  for (const auto& [k, v] : smaller.forward_) {
    auto it = forward_.find(k);
    if (it == forward_.end() || it->second != v) return false;
  }
  return true;
}

namespace {

bool injective(const PermCondition& c) {
  std::set<std::uint64_t> seen;
  for (const auto& [k, v] : c.pairs())
    if (!seen.insert(v).second) return false;
  return true;
}

void check_extension(const DenseRequirement& r, const PermCondition& before, const PermCondition& after) {
  if (!after.extends(before)) throw Error("requirement '" + r.name + "' dropped or changed an assignment");
  if (!injective(after)) throw Error("requirement '" + r.name + "' broke injectivity");
  if (!r.meets(after)) throw Error("requirement '" + r.name + "' extension does not meet it");
}

constexpr std::size_t kMaxPasses = 10'000;

}  // namespace

GenericPermutation::GenericPermutation(std::vector<DenseRequirement> reqs, PermCondition initial)
    : scheduled_(std::move(initial)) {
  std::vector<bool> reported(reqs.size(), false);
  std::size_t step = 0;
  for (std::size_t pass = 0;; ++pass) {
    if (pass == kMaxPasses) throw Error("requirement schedule did not stabilize");
    bool changed = false;
    for (std::size_t i = 0; i < reqs.size(); ++i) {
      const auto& r = reqs[i];
      if (!r.meets(scheduled_)) {
        auto next = r.extend(scheduled_);
        check_extension(r, scheduled_, next);
        scheduled_ = std::move(next);
        changed = true;
        ++step;
        log_.push_back({r.name, step, scheduled_});
        reported[i] = true;
      } else if (!reported[i]) {
        log_.push_back({r.name, step, scheduled_});
        reported[i] = true;
      }
    }
    if (!changed) break;
  }
  for (const auto& r : reqs) names_.push_back(r.name);
  state_ = scheduled_;
}

void GenericPermutation::complete_through(std::uint64_t k) const {
  for (; filled_ <= k; ++filled_) {
    if (state_.defined(filled_)) continue;
    while (state_.used(least_unused_)) ++least_unused_;
    state_.assign(filled_, least_unused_++);
  }
}

std::uint64_t GenericPermutation::at(std::uint64_t k) const {
  std::lock_guard lock(mutex_);
  if (state_.defined(k)) return state_.at(k);
  complete_through(k);
  return state_.at(k);
}

std::uint64_t GenericPermutation::inverse(std::uint64_t v) const {
  std::lock_guard lock(mutex_);
  // Each completion step consumes the least unused value, so v is reached.
  while (!state_.used(v)) complete_through(filled_);
  return *state_.preimage(v);
}

std::string GenericPermutation::describe() const {
  return "generic(" + std::to_string(names_.size()) + " requirements, " + std::to_string(scheduled_.size()) +
         " scheduled assignments)";
}

std::shared_ptr<GenericPermutation> schedule_requirements(std::vector<DenseRequirement> reqs,
                                                          PermCondition initial) {
  const PermCondition far{{1'000'000, 1'000'001}, {1'000'001, 1'000'000}};
  for (const auto& r : reqs) {
    if (!r.meets || !r.extend) throw Error("requirement '" + r.name + "' is incomplete");
    for (const PermCondition* sample : {static_cast<const PermCondition*>(&initial), &far}) {
      const auto next = r.meets(*sample) ? *sample : r.extend(*sample);
      check_extension(r, *sample, next);
    }
  }
  return std::make_shared<GenericPermutation>(std::move(reqs), std::move(initial));
}

std::vector<DenseRequirement> hitting_requirements(const EvaluableSet& L, std::size_t depth, std::uint64_t budget) {
  if (depth > kMaxBitLength) throw Error("hitting depth too large");
  std::vector<DenseRequirement> out;
  for (std::uint64_t code = 1; code < (std::uint64_t{2} << depth); ++code) {
    const auto sigma = BitString::from_code(code);
    const auto target = CylinderSet::cylinder(sigma);
    DenseRequirement r;
    r.name = "hit <" + sigma.text() + ">";
    r.meets = [L, sigma](const PermCondition& c) {
      for (const auto& [k, v] : c.pairs())
        if (sigma.is_prefix_of(BitString::from_index(v)) && L.contains(k)) return true;
      return false;
    };
    r.extend = [L, target, budget, name = r.name](const PermCondition& c) {
      std::uint64_t k = 0;
      for (std::uint64_t steps = 0; c.defined(k) || !L.contains(k); ++k)
        if (++steps > budget) throw BudgetExhausted(name + ": no free index of L within budget");
      std::uint64_t v = *target.next_member(0);
      while (c.used(v)) v = *target.next_member(v + 1);
      auto next = c;
      next.assign(k, v);
      return next;
    };
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<DenseRequirement> kill_requirements(std::vector<std::uint64_t> relevant, const CylinderSet& inside,
                                                std::size_t m) {
  std::sort(relevant.begin(), relevant.end());
  relevant.erase(std::unique(relevant.begin(), relevant.end()), relevant.end());
  if (relevant.size() < 2 * m)
    throw Error("kill requirements need " + std::to_string(2 * m) + " relevant indices, got " +
                std::to_string(relevant.size()));
  if (m > 0 && (inside.is_finite() || complement(inside).is_finite()))
    throw Error("kill target set must be infinite and coinfinite");
  std::vector<DenseRequirement> out;
  for (std::size_t j = 1; j <= m; ++j) {
    for (const bool want_in : {true, false}) {
      DenseRequirement r;
      r.name = std::string(want_in ? "kill-in-" : "kill-out-") + std::to_string(j);
      r.meets = [relevant, inside, want_in, j](const PermCondition& c) {
        std::size_t count = 0;
        for (auto k : relevant) count += c.defined(k) && inside.contains(c.at(k)) == want_in;
        return count >= j;
      };
      r.extend = [relevant, inside, want_in, meets = r.meets, name = r.name](const PermCondition& c) {
        auto next = c;
        auto it = relevant.begin();
        std::uint64_t v = 0;
        while (!meets(next)) {
          it = std::find_if(it, relevant.end(), [&](auto k) { return !next.defined(k); });
          if (it == relevant.end()) throw Error(name + ": every relevant index is already assigned");
          while (next.used(v) || inside.contains(v) != want_in) ++v;
          next.assign(*it, v);
        }
        return next;
      };
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace talab
