#include "talab/stone_topology.hpp"

#include <algorithm>
#include <set>

namespace talab {

namespace {

std::string list_text(const std::vector<Ordinal>& F) {
  std::string s = "{";
  for (std::size_t i = 0; i < F.size(); ++i) s += (i ? "," : "") + F[i].text();
  return s + "}";
}

// First i elements of alpha in canonical order, capped at alpha's size.
std::vector<Ordinal> first_below(const Ordinal& alpha, std::size_t i) {
  std::vector<Ordinal> out;
  for (std::uint64_t n = 0; out.size() < i; ++n) {
    if (alpha.is_finite() && n >= alpha.finite) break;
    out.push_back(alpha.is_finite() ? Ordinal(n) : e_alpha(alpha, n));
  }
  return out;
}

}  // namespace

OrdinalSpace::OrdinalSpace(const CoherentSequence& seq, std::size_t count, Limits limits)
    : seq_(&seq), limits_(limits) {
  points_ = materialize(seq, seq.length(), count);
  sample_ = seq.length().is_finite() ? points_ : materialize(seq, seq.length(), 2 * count + 32);
  points_.push_back(seq.length());
  sample_.push_back(seq.length());
}

std::vector<Ordinal> OrdinalSpace::lower_points() const { return {points_.begin(), points_.end() - 1}; }

std::optional<bool> OrdinalSpace::in_hat(const Ordinal& alpha, const Ordinal& beta) const {
  if (alpha > beta) return false;
  return seq_->hat_member(alpha, beta, limits_);
}

std::optional<bool> OrdinalSpace::in_hats(const Ordinal& alpha, const std::vector<Ordinal>& F) const {
  bool undecided = false;
  for (const auto& f : F) {
    const auto m = in_hat(alpha, f);
    if (!m) undecided = true;
    else if (*m) return true;
  }
  if (undecided) return std::nullopt;
  return false;
}

std::optional<bool> SubbaseElement::contains(const OrdinalSpace& space, const Ordinal& p) const {
  if (p == space.top()) return kind == Kind::cohat;
  const auto m = space.in_hat(p, index);
  if (!m) return std::nullopt;
  return kind == Kind::hat ? *m : !*m;
}

std::string SubbaseElement::text() const {
  return (kind == Kind::hat ? "hat(" : "cohat(") + index.text() + ")";
}

std::vector<SubbaseElement> SubbasicCover::elements() const {
  std::vector<SubbaseElement> out;
  for (const auto& c : cohats) out.push_back({SubbaseElement::Kind::cohat, c});
  for (const auto& h : hats) out.push_back({SubbaseElement::Kind::hat, h});
  return out;
}

SubcoverResult finite_subcover(const OrdinalSpace& space, const SubbasicCover& cover) {
  const auto elements = cover.elements();
  const auto& pts = space.points();
  std::vector<std::vector<std::optional<bool>>> table(elements.size());
  for (std::size_t e = 0; e < elements.size(); ++e)
    for (const auto& p : pts) table[e].push_back(elements[e].contains(space, p));

  SubcoverResult out;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    bool covered = false;
    bool undecided = false;
    for (std::size_t e = 0; e < elements.size(); ++e) {
      if (table[e][j] == true) covered = true;
      if (!table[e][j]) undecided = true;
    }
    if (covered) continue;
    out.verdict = undecided ? Verdict::unknown("cover membership of " + pts[j].text() + " undecided",
                                               space.limits().horizon)
                            : Verdict::refuted("the given family does not cover " + pts[j].text());
    return out;
  }

  std::vector<bool> done(pts.size(), false);
  std::size_t remaining = pts.size();
  std::vector<bool> used(elements.size(), false);
  while (remaining > 0) {
    std::size_t top = pts.size();
    while (done[--top]) {
    }
    std::size_t best = elements.size();
    std::size_t best_gain = 0;
    for (std::size_t e = 0; e < elements.size(); ++e) {
      if (used[e] || table[e][top] != true) continue;
      std::size_t gain = 0;
      for (std::size_t j = 0; j < pts.size(); ++j) gain += !done[j] && table[e][j] == true;
      if (gain > best_gain) {
        best = e;
        best_gain = gain;
      }
    }
    used[best] = true;
    out.elements.push_back(elements[best]);
    out.descent.push_back(pts[top]);
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (!done[j] && table[best][j] == true) {
        done[j] = true;
        --remaining;
      }
  }

  // Re-verify from scratch.
  for (const auto& p : pts) {
    bool covered = false;
    for (const auto& el : out.elements) covered = covered || el.contains(space, p) == true;
    if (!covered) {
      out.verdict = Verdict::refuted("internal: subcover misses " + p.text());
      return out;
    }
  }
  out.verdict = Verdict::verified(std::to_string(out.elements.size()) + " elements cover " +
                                  std::to_string(pts.size()) + " points");
  return out;
}

std::string Neighborhood::text() const {
  return "hat(" + alpha.text() + ") \\ hat" + list_text(F) + " = " + list_text(members);
}

std::vector<Neighborhood> neighborhood_base(const OrdinalSpace& space, const Ordinal& alpha, std::size_t k) {
  if (alpha > space.top()) throw Error(alpha.text() + " is not a point of the space");
  std::vector<Neighborhood> out;
  for (std::size_t i = 0; i < k; ++i) {
    Neighborhood nb{alpha, first_below(alpha, i), {}};
    for (const auto& p : space.points()) {
      if (p > alpha) continue;
      const bool inside = alpha == space.top() || space.in_hat(p, alpha) == true;
      if (inside && space.in_hats(p, nb.F) == false) nb.members.push_back(p);
    }
    out.push_back(std::move(nb));
  }
  return out;
}

Verdict converges(const OrdinalSpace& space, const PointSequence& points, const Ordinal& target, std::size_t depth) {
  if (target > space.top()) throw Error(target.text() + " is not a point of the space");
  const auto& limits = space.limits();
  const auto half = limits.horizon / 2;
  for (std::size_t i = 0; i < depth; ++i) {
    const auto F = first_below(target, i);
    std::vector<std::uint64_t> escapees;
    std::size_t late = 0;
    bool undecided = false;
    for (std::uint64_t n = 0; n < limits.horizon; ++n) {
      const auto p = points.at(n);
      std::optional<bool> inside;
      if (p > target) {
        inside = false;
      } else if (target == space.top()) {
        const auto m = space.in_hats(p, F);
        if (m) inside = !*m;
      } else {
        const auto h = space.in_hat(p, target);
        const auto m = space.in_hats(p, F);
        if (h == false || m == true) inside = false;
        else if (h && m) inside = true;
      }
      if (!inside) {
        undecided = true;
        continue;
      }
      if (!*inside) {
        if (escapees.size() < limits.min_witnesses) escapees.push_back(n);
        late += n >= half;
      }
    }
    const std::string where = "neighborhood " + std::to_string(i) + " of " + target.text() + " (F = " +
                              list_text(F) + ")";
    if (late >= limits.min_witnesses) {
      auto v = Verdict::refuted(points.name + " leaves " + where + " infinitely often", escapees);
      v.horizon = limits.horizon;
      return v;
    }
    if (late > 0 || undecided)
      return Verdict::unknown(points.name + ": tail in " + where + " not settled below horizon", limits.horizon);
  }
  auto v = Verdict::verified(points.name + " converges to " + target.text() + " to depth " + std::to_string(depth));
  v.horizon = limits.horizon;
  return v;
}

RankTable cantor_bendixson(const OrdinalSpace& space) {
  const auto lower = space.lower_points();
  std::set<Ordinal> alive(space.sample().begin(), space.sample().end());
  std::map<Ordinal, std::uint64_t> all;
  RankTable out{Verdict::verified("every materialized point ranked"), {}};
  for (std::uint64_t r = 0; !alive.empty(); ++r) {
    std::vector<Ordinal> isolated;
    bool undecided = false;
    for (const auto& p : alive) {
      std::vector<Ordinal> F;
      for (const auto& q : lower)
        if (q < p) F.push_back(q);
      bool lonely = true;
      for (const auto& q : alive) {
        if (q == p || q > p) continue;
        std::optional<bool> inside;
        if (p == space.top()) {
          const auto m = space.in_hats(q, F);
          if (m) inside = !*m;
        } else {
          const auto h = space.in_hat(q, p);
          const auto m = space.in_hats(q, F);
          if (h == false || m == true) inside = false;
          else if (h && m) inside = true;
        }
        if (!inside) undecided = true;
        if (inside != false) {
          lonely = false;
          break;
        }
      }
      if (lonely) isolated.push_back(p);
    }
    if (isolated.empty()) {
      out.verdict = undecided ? Verdict::unknown("isolation undecided", space.limits().horizon)
                              : Verdict::refuted("no isolated point in a nonempty remainder");
      break;
    }
    for (const auto& p : isolated) {
      all[p] = r;
      alive.erase(p);
    }
  }
  for (const auto& p : space.points())
    if (auto it = all.find(p); it != all.end()) out.rank[p] = it->second;
  return out;
}

}  // namespace talab
