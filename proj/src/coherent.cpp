#include "talab/coherent.hpp"

#include <algorithm>

namespace talab {

std::string_view to_string(WitnessKind k) { return k == WitnessKind::cap_below ? "CapBelow" : "SubsetBelow"; }

namespace {

std::string pair_text(const Ordinal& a, const Ordinal& b) { return "(" + a.text() + ", " + b.text() + ")"; }

// Like worst(), but two verified verdicts keep the larger horizon.
Verdict fold(Verdict acc, const Verdict& v) {
  if (acc.is_verified() && v.is_verified()) {
    acc.horizon = std::max(acc.horizon, v.horizon);
    return acc;
  }
  return worst(std::move(acc), v);
}

bool contains_all_below(const std::vector<Ordinal>& indices, const Ordinal& alpha) {
  if (!alpha.is_finite()) return false;
  for (std::uint64_t g = 0; g < alpha.finite; ++g)
    if (std::find(indices.begin(), indices.end(), Ordinal(g)) == indices.end()) return false;
  return true;
}

// Drops members of F one at a time while the witness still verifies.
CoherenceWitness shrink(const CoherentSequence& seq, const Ordinal& alpha, const Ordinal& beta, CoherenceWitness w,
                        const Limits& limits) {
  for (std::size_t i = w.F.size(); i-- > 0;) {
    CoherenceWitness trial = w;
    trial.F.erase(trial.F.begin() + static_cast<std::ptrdiff_t>(i));
    if (verify_witness(seq, alpha, beta, trial, limits).is_verified()) w = std::move(trial);
  }
  return w;
}

// Tries both kinds with F = all of `below`, then shrinks.
std::optional<std::pair<CoherenceWitness, Verdict>> search_witness(const CoherentSequence& seq, const Ordinal& alpha,
                                                                   const Ordinal& beta,
                                                                   const std::vector<Ordinal>& below,
                                                                   const Limits& limits) {
  for (auto kind : {WitnessKind::cap_below, WitnessKind::subset_below}) {
    CoherenceWitness w{kind, below, true};
    auto v = verify_witness(seq, alpha, beta, w, limits);
    if (!v.is_verified()) continue;
    w = shrink(seq, alpha, beta, std::move(w), limits);
    v = verify_witness(seq, alpha, beta, w, limits);
    w.certified = v.horizon == 0;
    return std::pair{std::move(w), std::move(v)};
  }
  return std::nullopt;
}

}  // namespace

std::optional<bool> CoherentSequence::hat_member(const Ordinal& alpha, const Ordinal& beta, const Limits&) const {
  if (alpha > beta) return false;
  if (alpha == beta) return true;
  const auto w = witness(alpha, beta);
  if (!w || !w->certified) return std::nullopt;
  // A cap witness excludes alpha because the sequence is proper.
  return w->kind == WitnessKind::subset_below;
}

Ordinal CoherentSequence::index_at(std::uint64_t n) const {
  const auto len = length();
  if (len.is_finite()) {
    if (n >= len.finite) throw Error("index " + std::to_string(n) + " beyond length " + len.text());
    return n;
  }
  return e_alpha(len, n);
}

std::vector<Ordinal> materialize(const CoherentSequence& seq, const Ordinal& up_to, std::size_t count) {
  const auto bound = std::min(up_to, seq.length());
  std::vector<Ordinal> out;
  if (bound.is_finite()) {
    for (std::uint64_t n = 0; n < bound.finite && out.size() < count; ++n) out.emplace_back(n);
  } else if (bound == seq.length()) {
    for (std::uint64_t n = 0; out.size() < count; ++n) out.push_back(seq.index_at(n));
  } else {
    for (std::uint64_t n = 0; out.size() < count; ++n) out.push_back(e_alpha(bound, n));
  }
  std::sort(out.begin(), out.end());
  return out;
}

EvaluableSet union_of(const CoherentSequence& seq, const std::vector<Ordinal>& F) {
  EvaluableSet acc;
  bool first = true;
  for (const auto& g : F) {
    acc = first ? seq.entry(g) : unite(acc, seq.entry(g));
    first = false;
  }
  return acc;
}

ExplicitSequence::ExplicitSequence(std::vector<EvaluableSet> entries, std::vector<std::string> names)
    : entries_(std::move(entries)), names_(std::move(names)) {
  names_.resize(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (names_[i].empty()) names_[i] = entries_[i].describe();
}

EvaluableSet ExplicitSequence::entry(const Ordinal& alpha) const {
  if (!alpha.is_finite() || alpha.finite >= entries_.size())
    throw Error("index " + alpha.text() + " out of range for a sequence of length " + std::to_string(entries_.size()));
  return entries_[alpha.finite];
}

std::optional<CoherenceWitness> ExplicitSequence::witness(const Ordinal& alpha, const Ordinal& beta) const {
  const auto key = std::pair{alpha.finite, beta.finite};
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  std::vector<Ordinal> below;
  for (std::uint64_t g = 0; g < alpha.finite; ++g) below.emplace_back(g);
  std::optional<CoherenceWitness> found;
  if (auto r = search_witness(*this, alpha, beta, below, Limits{})) found = std::move(r->first);
  std::lock_guard lock(mutex_);
  cache_.emplace(key, found);
  return found;
}

// Containment in a_F only grows with F, so F = alpha decides membership.
std::optional<bool> ExplicitSequence::hat_member(const Ordinal& alpha, const Ordinal& beta,
                                                 const Limits& limits) const {
  if (alpha > beta) return false;
  if (alpha == beta) return true;
  std::vector<Ordinal> below;
  for (std::uint64_t g = 0; g < alpha.finite; ++g) below.emplace_back(g);
  const auto v = subset_exact(subtract(entry(alpha), entry(beta)), union_of(*this, below), limits);
  if (v.is_unknown()) return std::nullopt;
  return v.is_verified();
}

std::string ExplicitSequence::describe() const {
  std::string s = "<";
  for (std::size_t i = 0; i < names_.size(); ++i) s += (i ? ", " : "") + names_[i];
  return s + ">";
}

Verdict bounded_subset(const EvaluableSet& a, const EvaluableSet& b, const Limits& limits) {
  auto v = subset_exact(a, b, limits);
  if (!v.is_unknown()) return v;
  auto out = Verdict::verified("no counterexample below horizon");
  out.horizon = limits.horizon;
  return out;
}

Verdict verify_witness(const CoherentSequence& seq, const Ordinal& alpha, const Ordinal& beta,
                       const CoherenceWitness& w, const Limits& limits) {
  for (const auto& g : w.F)
    if (g >= alpha) return Verdict::refuted("witness index " + g.text() + " is not below " + alpha.text());
  const auto aF = union_of(seq, w.F);
  auto v = w.kind == WitnessKind::cap_below
               ? bounded_subset(intersect(seq.entry(alpha), seq.entry(beta)), aF, limits)
               : bounded_subset(seq.entry(alpha), unite(seq.entry(beta), aF), limits);
  v.detail = std::string(to_string(w.kind)) + " " + pair_text(alpha, beta) + ": " + v.detail;
  return v;
}

CoherenceReport check_coherent(const CoherentSequence& seq, const std::vector<Ordinal>& indices,
                               const Limits& limits) {
  auto sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  CoherenceReport report{Verdict::verified("all pairs witnessed"), {}};
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const auto& alpha = sorted[i];
      const auto& beta = sorted[j];
      WitnessRow row{alpha, beta, seq.witness(alpha, beta), {}};
      if (row.witness) row.verdict = verify_witness(seq, alpha, beta, *row.witness, limits);
      if (!row.witness || row.verdict.is_refuted()) {
        const std::vector<Ordinal> below(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(i));
        if (auto found = search_witness(seq, alpha, beta, below, limits)) {
          row.witness = std::move(found->first);
          row.verdict = std::move(found->second);
        } else if (contains_all_below(sorted, alpha)) {
          row.verdict = Verdict::refuted("no finite F below " + alpha.text() + " witnesses the pair " +
                                         pair_text(alpha, beta));
        } else {
          row.verdict = Verdict::unknown("no witness from the listed indices for " + pair_text(alpha, beta),
                                         limits.horizon);
        }
      }
      report.verdict = fold(std::move(report.verdict), row.verdict);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

CoherenceReport check_coherent(const CoherentSequence& seq, const Ordinal& up_to, const Limits& limits,
                               std::size_t count) {
  return check_coherent(seq, materialize(seq, up_to, count), limits);
}

Verdict check_proper(const CoherentSequence& seq, const std::vector<Ordinal>& indices, const Limits& limits) {
  auto sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  Verdict acc = Verdict::verified("every entry escapes the earlier ones");
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    const std::vector<Ordinal> below(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(j));
    const auto diff = subtract(seq.entry(sorted[j]), union_of(seq, below));
    const std::string where = "at beta = " + sorted[j].text();
    if (const auto inf = exact_is_infinite(diff)) {
      if (!*inf) return Verdict::refuted("a_beta is covered by earlier entries up to a finite set " + where);
      continue;
    }
    std::vector<std::uint64_t> seen;
    for (std::uint64_t m = 0; m < limits.horizon && seen.size() < limits.min_witnesses; ++m)
      if (diff.contains(m)) seen.push_back(m);
    if (seen.size() >= limits.min_witnesses) {
      auto v = Verdict::verified(std::to_string(seen.size()) + " escaping points " + where, seen);
      v.horizon = limits.horizon;
      acc = fold(std::move(acc), v);
    } else {
      acc = fold(std::move(acc), Verdict::unknown("too few escaping points below horizon " + where, limits.horizon));
    }
  }
  return acc;
}

Verdict check_proper(const CoherentSequence& seq, const Ordinal& up_to, const Limits& limits, std::size_t count) {
  return check_proper(seq, materialize(seq, up_to, count), limits);
}

std::optional<bool> HatSet::member(const Ordinal& alpha) const { return seq->hat_member(alpha, beta, limits); }

std::vector<Ordinal> HatSet::materialize(const std::vector<Ordinal>& points, std::vector<Ordinal>* unknown) const {
  std::vector<Ordinal> out;
  for (const auto& p : points) {
    const auto m = member(p);
    if (!m) {
      if (unknown) unknown->push_back(p);
    } else if (*m) {
      out.push_back(p);
    }
  }
  return out;
}

HatSet hat(const CoherentSequence& seq, const Ordinal& beta, const Limits& limits) {
  if (beta >= seq.length()) throw Error("hat index " + beta.text() + " is not below " + seq.length().text());
  return HatSet{&seq, beta, limits};
}

Verdict is_cover(const CoherentSequence& seq, const std::vector<Ordinal>& S, const std::vector<Ordinal>& F,
                 const std::vector<Ordinal>& points, const Limits& limits) {
  std::vector<Ordinal> all = S;
  all.insert(all.end(), F.begin(), F.end());
  Verdict acc = Verdict::verified("every point is covered");
  for (const auto& p : points) {
    bool covered = false;
    bool undecided = false;
    for (const auto& g : all) {
      const auto m = seq.hat_member(p, g, limits);
      if (!m) undecided = true;
      else if (*m) {
        covered = true;
        break;
      }
    }
    if (covered) continue;
    if (!undecided) return Verdict::refuted("point " + p.text() + " lies in no listed hat");
    acc = worst(std::move(acc), Verdict::unknown("membership of " + p.text() + " undecided", limits.horizon));
  }
  return acc;
}

}  // namespace talab
