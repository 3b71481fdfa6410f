#include "talab/omega_sets.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

namespace talab {

// ---------------------------------------------------------------------------
// BitString

BitString BitString::from_index(std::uint64_t k) {
  if (k >= (std::uint64_t{1} << (kMaxBitLength + 1)) - 1)
    throw Error("node index out of range: " + std::to_string(k));
  return BitString(k + 1);
}

BitString BitString::from_code(std::uint64_t code) {
  if (code == 0 || std::bit_width(code) > kMaxBitLength + 1)
    throw Error("invalid node code");
  return BitString(code);
}

BitString BitString::from_text(std::string_view bits) {
  if (bits.size() > kMaxBitLength) throw Error("bit string too long: " + std::string(bits));
  std::uint64_t code = 1;
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error("not a bit string: " + std::string(bits));
    code = (code << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return BitString(code);
}

std::size_t BitString::size() const { return static_cast<std::size_t>(std::bit_width(code_)) - 1; }

bool BitString::bit(std::size_t i) const { return ((code_ >> (size() - 1 - i)) & 1U) != 0; }

BitString BitString::child(bool b) const {
  if (size() >= kMaxBitLength) throw Error("bit string too long");
  return BitString((code_ << 1) | static_cast<std::uint64_t>(b));
}

BitString BitString::prefix(std::size_t len) const {
  const auto n = size();
  if (len > n) throw Error("prefix longer than string");
  return BitString(code_ >> (n - len));
}

BitString BitString::flip_last() const {
  if (empty()) return *this;
  return BitString(code_ ^ 1U);
}

bool BitString::is_prefix_of(const BitString& other) const {
  const auto n = size();
  const auto m = other.size();
  return n <= m && (other.code_ >> (m - n)) == code_;
}

std::string BitString::text() const {
  std::string s;
  for (std::size_t i = 0; i < size(); ++i) s.push_back(bit(i) ? '1' : '0');
  return s;
}

BitString enumerate_node(std::uint64_t k) { return BitString::from_index(k); }
std::uint64_t node_index(const BitString& s) { return s.index(); }

// ---------------------------------------------------------------------------
// Verdict

std::string_view to_string(Status s) {
  switch (s) {
    case Status::verified: return "Verified";
    case Status::refuted: return "Refuted";
    case Status::unknown: return "Unknown";
  }
  return "?";
}

Verdict Verdict::verified(std::string detail, std::vector<std::uint64_t> evidence) {
  return {Status::verified, std::move(detail), std::move(evidence), 0};
}

Verdict Verdict::refuted(std::string detail, std::vector<std::uint64_t> evidence) {
  return {Status::refuted, std::move(detail), std::move(evidence), 0};
}

Verdict Verdict::unknown(std::string detail, std::uint64_t horizon) {
  return {Status::unknown, std::move(detail), {}, horizon};
}

Verdict worst(Verdict a, Verdict b) {
  auto rank = [](Status s) { return s == Status::refuted ? 2 : s == Status::unknown ? 1 : 0; };
  return rank(b.status) > rank(a.status) ? b : a;
}

Limits Limits::from_env() {
  Limits l;
  if (const char* h = std::getenv("TALAB_HORIZON")) {
    char* end = nullptr;
    const auto v = std::strtoull(h, &end, 10);
    if (end == h || *end != '\0' || v == 0) throw Error("TALAB_HORIZON must be a positive integer");
    l.horizon = v;
  }
  return l;
}

// ---------------------------------------------------------------------------
// CylinderSet

namespace {

enum class Fill { empty, full, mixed };

bool in_clopen(const std::vector<BitString>& roots, const BitString& s) {
  for (std::size_t len = 0; len <= s.size(); ++len)
    if (std::binary_search(roots.begin(), roots.end(), s.prefix(len))) return true;
  return false;
}

bool comparable(const BitString& a, const BitString& b) { return a.is_prefix_of(b) || b.is_prefix_of(a); }

std::vector<BitString> restrict_to(const std::vector<BitString>& roots, const BitString& p) {
  std::vector<BitString> out;
  for (const auto& r : roots)
    if (comparable(r, p)) out.push_back(r);
  return out;
}

// `roots` are all comparable with p.
Fill status(const std::vector<BitString>& roots, const BitString& p) {
  if (roots.empty()) return Fill::empty;
  for (const auto& r : roots)
    if (r.is_prefix_of(p)) return Fill::full;
  return Fill::mixed;
}

template <typename Op>
Fill combine_roots(const BitString& p, const std::vector<BitString>& a, const std::vector<BitString>& b, Op op,
                   std::vector<BitString>& out) {
  const Fill sa = status(a, p);
  const Fill sb = status(b, p);
  if (sa != Fill::mixed && sb != Fill::mixed) return op(sa == Fill::full, sb == Fill::full) ? Fill::full : Fill::empty;
  const BitString l = p.child(false);
  const BitString r = p.child(true);
  std::vector<BitString> left_out;
  std::vector<BitString> right_out;
  const Fill fl = combine_roots(l, restrict_to(a, l), restrict_to(b, l), op, left_out);
  const Fill fr = combine_roots(r, restrict_to(a, r), restrict_to(b, r), op, right_out);
  if (fl == Fill::full && fr == Fill::full) return Fill::full;
  if (fl == Fill::empty && fr == Fill::empty) return Fill::empty;
  if (fl == Fill::full) out.push_back(l);
  if (fr == Fill::full) out.push_back(r);
  out.insert(out.end(), left_out.begin(), left_out.end());
  out.insert(out.end(), right_out.begin(), right_out.end());
  return Fill::mixed;
}

std::optional<std::uint64_t> next_in_cylinder(const BitString& root, std::uint64_t from) {
  constexpr std::uint64_t kMaxCode = std::uint64_t{1} << (kMaxBitLength + 1);
  if (from >= kMaxCode - 1) return std::nullopt;
  const std::uint64_t f = from + 1;
  const std::size_t lf = static_cast<std::size_t>(std::bit_width(f)) - 1;
  const std::size_t lr = root.size();
  for (std::size_t j = lf > lr ? lf - lr : 0; lr + j <= kMaxBitLength; ++j) {
    const std::uint64_t lo = root.code() << j;
    const std::uint64_t hi = ((root.code() + 1) << j) - 1;
    if (hi < f) continue;
    return std::max(lo, f) - 1;
  }
  return std::nullopt;
}

std::string join_numbers(const std::vector<std::uint64_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "}";
}

}  // namespace

template <typename Op>
CylinderSet CylinderSet::combine(const CylinderSet& a, const CylinderSet& b, Op op) {
  CylinderSet out;
  const Fill top = combine_roots(BitString{}, a.roots_, b.roots_, op, out.roots_);
  if (top == Fill::full) out.roots_.push_back(BitString{});
  std::sort(out.roots_.begin(), out.roots_.end());

  // Node and Cantor-space membership can only disagree on strict prefixes of
  // roots or on explicitly corrected points.
  std::set<std::uint64_t> candidates;
  for (const std::vector<BitString>* roots : {&a.roots_, &b.roots_, const_cast<const std::vector<BitString>*>(&out.roots_)})
    for (const auto& r : *roots)
      for (std::size_t len = 0; len < r.size(); ++len) candidates.insert(r.prefix(len).index());
  for (const std::vector<std::uint64_t>* pts : {&a.plus_, &a.minus_, &b.plus_, &b.minus_}) candidates.insert(pts->begin(), pts->end());

  for (const auto k : candidates) {
    const bool actual = op(a.contains(k), b.contains(k));
    const bool cyl = in_clopen(out.roots_, BitString::from_index(k));
    if (actual && !cyl) out.plus_.push_back(k);
    if (!actual && cyl) out.minus_.push_back(k);
  }
  return out;
}

CylinderSet CylinderSet::cylinder(const BitString& root) {
  CylinderSet c;
  c.roots_.push_back(root);
  return c;
}

CylinderSet CylinderSet::finite(std::vector<std::uint64_t> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  CylinderSet c;
  c.plus_ = std::move(points);
  return c;
}

CylinderSet CylinderSet::omega() { return cylinder(BitString{}); }

CylinderSet CylinderSet::from_parts(const std::vector<BitString>& positive, const std::vector<BitString>& negative,
                                    const std::vector<std::uint64_t>& plus, const std::vector<std::uint64_t>& minus) {
  CylinderSet acc;
  for (const auto& p : positive) acc = unite(acc, cylinder(p));
  for (const auto& n : negative) acc = subtract(acc, cylinder(n));
  acc = unite(acc, finite(plus));
  return subtract(acc, finite(minus));
}

bool CylinderSet::contains(std::uint64_t k) const {
  if (std::binary_search(plus_.begin(), plus_.end(), k)) return true;
  if (roots_.empty()) return false;
  if (std::binary_search(minus_.begin(), minus_.end(), k)) return false;
  return in_clopen(roots_, BitString::from_index(k));
}

bool CylinderSet::is_cofinite() const { return roots_.size() == 1 && roots_.front().empty(); }

std::optional<std::uint64_t> CylinderSet::next_member(std::uint64_t from) const {
  for (;;) {
    std::optional<std::uint64_t> best;
    for (const auto& r : roots_) {
      const auto v = next_in_cylinder(r, from);
      if (v && (!best || *v < *best)) best = v;
    }
    const auto it = std::lower_bound(plus_.begin(), plus_.end(), from);
    if (it != plus_.end() && (!best || *it < *best)) return *it;
    if (!best) return std::nullopt;
    if (!std::binary_search(minus_.begin(), minus_.end(), *best)) return best;
    from = *best + 1;
  }
}

std::string CylinderSet::to_literal() const {
  if (is_empty()) return "{}";
  std::string s;
  for (const auto& r : roots_) {
    if (!s.empty()) s += " + ";
    s += "cyl(\"" + r.text() + "\")";
  }
  if (!plus_.empty()) s += (s.empty() ? "" : " + ") + join_numbers(plus_);
  if (!minus_.empty()) s += " - " + join_numbers(minus_);
  return s;
}

CylinderSet unite(const CylinderSet& a, const CylinderSet& b) {
  return CylinderSet::combine(a, b, [](bool x, bool y) { return x || y; });
}
CylinderSet intersect(const CylinderSet& a, const CylinderSet& b) {
  return CylinderSet::combine(a, b, [](bool x, bool y) { return x && y; });
}
CylinderSet subtract(const CylinderSet& a, const CylinderSet& b) {
  return CylinderSet::combine(a, b, [](bool x, bool y) { return x && !y; });
}
CylinderSet complement(const CylinderSet& a) {
  return CylinderSet::combine(a, a, [](bool x, bool) { return !x; });
}

// ---------------------------------------------------------------------------
// Lazy sets

bool ResidueCertificate::empty() const { return std::none_of(residues.begin(), residues.end(), [](bool b) { return b; }); }
bool ResidueCertificate::full() const { return std::all_of(residues.begin(), residues.end(), [](bool b) { return b; }); }

namespace {

constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 16;

ResidueCertificate constant_residue(bool value) { return {1, {value}}; }

template <typename Op>
std::optional<ResidueCertificate> combine_residues(const ResidueCertificate& a, const ResidueCertificate& b, Op op) {
  const std::uint64_t m = std::lcm(a.modulus, b.modulus);
  if (m > kMaxModulus) return std::nullopt;
  ResidueCertificate out{m, std::vector<bool>(m)};
  for (std::uint64_t r = 0; r < m; ++r) out.residues[r] = op(a.residues[r % a.modulus], b.residues[r % b.modulus]);
  return out;
}

LazySet::Stream residue_stream(std::shared_ptr<const ResidueCertificate> cert, bool want) {
  return [cert, want](std::uint64_t from) -> std::optional<std::uint64_t> {
    for (std::uint64_t i = 0; i < cert->modulus; ++i)
      if (cert->residues[(from + i) % cert->modulus] == want) return from + i;
    return std::nullopt;
  };
}

}  // namespace

LazySet residue_set(std::uint64_t modulus, const std::vector<std::uint64_t>& residues) {
  if (modulus == 0 || modulus > kMaxModulus) throw Error("residue modulus out of range");
  ResidueCertificate cert{modulus, std::vector<bool>(modulus)};
  std::string name = "residue(" + std::to_string(modulus) + ";";
  for (std::size_t i = 0; i < residues.size(); ++i) {
    cert.residues[residues[i] % modulus] = true;
    name += (i ? "," : "") + std::to_string(residues[i]);
  }
  name += ")";
  auto shared = std::make_shared<const ResidueCertificate>(cert);
  LazySet s;
  s.name = std::move(name);
  s.member = [shared](std::uint64_t n) { return static_cast<bool>(shared->residues[n % shared->modulus]); };
  if (!cert.empty()) s.inf_witness = residue_stream(shared, true);
  if (!cert.full()) s.coinf_witness = residue_stream(shared, false);
  s.residue = cert;
  return s;
}

LazySet evens() {
  auto s = residue_set(2, {0});
  s.name = "evens";
  return s;
}

LazySet odds() {
  auto s = residue_set(2, {1});
  s.name = "odds";
  return s;
}

LazySet digit_set(unsigned i) {
  if (i > 14) throw Error("digit index too large");
  const std::uint64_t m = std::uint64_t{2} << i;
  std::vector<std::uint64_t> rs;
  for (std::uint64_t r = 0; r < m; ++r)
    if (((r >> i) & 1U) == 0) rs.push_back(r);
  auto s = residue_set(m, rs);
  s.name = "digit(" + std::to_string(i) + ")";
  return s;
}

namespace {
bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}
}  // namespace

LazySet primes() {
  LazySet s;
  s.name = "primes";
  s.member = is_prime;
  s.inf_witness = [](std::uint64_t from) -> std::optional<std::uint64_t> {
    for (std::uint64_t n = from;; ++n)
      if (is_prime(n)) return n;
  };
  s.coinf_witness = [](std::uint64_t from) -> std::optional<std::uint64_t> {
    for (std::uint64_t n = from;; ++n)
      if (!is_prime(n)) return n;
  };
  return s;
}

LazySet powers_of_two() {
  LazySet s;
  s.name = "pow2";
  s.member = [](std::uint64_t n) { return std::has_single_bit(n); };
  s.inf_witness = [](std::uint64_t from) -> std::optional<std::uint64_t> {
    if (from > (std::uint64_t{1} << 62)) return std::nullopt;
    return std::bit_ceil(std::max<std::uint64_t>(from, 1));
  };
  s.coinf_witness = [](std::uint64_t from) -> std::optional<std::uint64_t> {
    for (std::uint64_t n = from;; ++n)
      if (!std::has_single_bit(n)) return n;
  };
  return s;
}

// ---------------------------------------------------------------------------
// EvaluableSet

bool EvaluableSet::contains(std::uint64_t k) const {
  if (const auto* c = cylinder()) return c->contains(k);
  return lazy()->member(k);
}

const ResidueCertificate* EvaluableSet::residue() const {
  if (const auto* l = lazy(); l && l->residue) return &*l->residue;
  return nullptr;
}

LazySet EvaluableSet::as_lazy() const {
  if (const auto* l = lazy()) return *l;
  auto c = std::make_shared<const CylinderSet>(*cylinder());
  LazySet s;
  s.name = c->to_literal();
  s.member = [c](std::uint64_t k) { return c->contains(k); };
  if (!c->is_finite()) s.inf_witness = [c](std::uint64_t from) { return c->next_member(from); };
  if (!c->is_cofinite()) {
    auto co = std::make_shared<const CylinderSet>(complement(*c));
    s.coinf_witness = [co](std::uint64_t from) { return co->next_member(from); };
  }
  if (c->is_empty()) s.residue = constant_residue(false);
  if (*c == CylinderSet::omega()) s.residue = constant_residue(true);
  return s;
}

std::string EvaluableSet::describe() const {
  if (const auto* c = cylinder()) return c->to_literal();
  return lazy()->name;
}

EvaluableSet unite(const EvaluableSet& a, const EvaluableSet& b) {
  if (a.is_exact() && b.is_exact()) return unite(*a.cylinder(), *b.cylinder());
  const LazySet la = a.as_lazy();
  const LazySet lb = b.as_lazy();
  LazySet s;
  s.name = "(" + la.name + " + " + lb.name + ")";
  s.member = [ma = la.member, mb = lb.member](std::uint64_t k) { return ma(k) || mb(k); };
  s.budget = std::min(la.budget, lb.budget);
  s.inf_witness = la.inf_witness ? la.inf_witness : lb.inf_witness;
  if (la.residue && lb.residue)
    s.residue = combine_residues(*la.residue, *lb.residue, [](bool x, bool y) { return x || y; });
  else if ((la.residue && la.residue->full()) || (lb.residue && lb.residue->full()))
    s.residue = constant_residue(true);
  return s;
}

EvaluableSet intersect(const EvaluableSet& a, const EvaluableSet& b) {
  if (a.is_exact() && b.is_exact()) return intersect(*a.cylinder(), *b.cylinder());
  const LazySet la = a.as_lazy();
  const LazySet lb = b.as_lazy();
  LazySet s;
  s.name = "(" + la.name + " & " + lb.name + ")";
  s.member = [ma = la.member, mb = lb.member](std::uint64_t k) { return ma(k) && mb(k); };
  s.budget = std::min(la.budget, lb.budget);
  s.coinf_witness = la.coinf_witness ? la.coinf_witness : lb.coinf_witness;
  if (la.residue && lb.residue)
    s.residue = combine_residues(*la.residue, *lb.residue, [](bool x, bool y) { return x && y; });
  else if ((la.residue && la.residue->empty()) || (lb.residue && lb.residue->empty()))
    s.residue = constant_residue(false);
  return s;
}

EvaluableSet complement(const EvaluableSet& a) {
  if (a.is_exact()) return complement(*a.cylinder());
  const LazySet la = a.as_lazy();
  LazySet s;
  s.name = "~" + la.name;
  s.member = [ma = la.member](std::uint64_t k) { return !ma(k); };
  s.budget = la.budget;
  s.inf_witness = la.coinf_witness;
  s.coinf_witness = la.inf_witness;
  if (la.residue) {
    ResidueCertificate r = *la.residue;
    r.residues.flip();
    s.residue = r;
  }
  return s;
}

EvaluableSet subtract(const EvaluableSet& a, const EvaluableSet& b) {
  if (a.is_exact() && b.is_exact()) return subtract(*a.cylinder(), *b.cylinder());
  auto s = intersect(a, complement(b));
  auto l = *s.lazy();
  l.name = "(" + a.describe() + " - " + b.describe() + ")";
  return l;
}

std::optional<bool> exact_is_empty(const EvaluableSet& a) {
  if (const auto* c = a.cylinder()) return c->is_empty();
  if (const auto* r = a.residue()) return r->empty();
  return std::nullopt;
}

std::optional<bool> exact_is_infinite(const EvaluableSet& a) {
  if (const auto* c = a.cylinder()) return !c->is_finite();
  if (const auto* r = a.residue()) return !r->empty();
  return std::nullopt;
}

std::optional<bool> exact_infinite_meet(const EvaluableSet& a, const EvaluableSet& b) {
  if (exact_is_empty(a) == true || exact_is_empty(b) == true) return false;
  if (a.is_exact() && b.is_exact()) return !intersect(*a.cylinder(), *b.cylinder()).is_finite();
  const auto* ra = a.residue();
  const auto* rb = b.residue();
  if (ra && rb) {
    const auto m = combine_residues(*ra, *rb, [](bool x, bool y) { return x && y; });
    if (m) return !m->empty();
  }
  if (ra && ra->full()) return exact_is_infinite(b);
  if (rb && rb->full()) return exact_is_infinite(a);
  // Each level of a cylinder is a contiguous run of indices, so every infinite
  // cylinder part meets every residue class infinitely often.
  if (a.is_exact() && rb) return !a.cylinder()->is_finite() && !rb->empty();
  if (b.is_exact() && ra) return !b.cylinder()->is_finite() && !ra->empty();
  return std::nullopt;
}

std::optional<std::uint64_t> find_member(const EvaluableSet& a, std::uint64_t horizon) {
  if (const auto* c = a.cylinder()) return c->next_member(0);
  const auto* l = a.lazy();
  if (l->inf_witness) return l->inf_witness(0);
  for (std::uint64_t m = 0; m < horizon; ++m)
    if (l->member(m)) return m;
  return std::nullopt;
}

namespace {

// First few members of `s`, scanning at most `horizon` candidates (or the
// stream, when there is one).
std::vector<std::uint64_t> sample_members(const EvaluableSet& s, const LazySet::Stream& stream, std::size_t want,
                                          std::uint64_t horizon) {
  std::vector<std::uint64_t> out;
  if (const auto* c = s.cylinder()) {
    std::uint64_t from = 0;
    while (out.size() < want) {
      const auto v = c->next_member(from);
      if (!v) break;
      out.push_back(*v);
      from = *v + 1;
    }
    return out;
  }
  if (stream) {
    std::uint64_t from = 0;
    for (std::uint64_t steps = 0; steps < horizon && out.size() < want; ++steps) {
      const auto v = stream(from);
      if (!v) break;
      if (s.contains(*v)) out.push_back(*v);
      from = *v + 1;
    }
    return out;
  }
  for (std::uint64_t m = 0; m < horizon && out.size() < want; ++m)
    if (s.contains(m)) out.push_back(m);
  return out;
}

LazySet::Stream stream_of(const EvaluableSet& s) {
  if (const auto* c = s.cylinder()) {
    if (c->is_finite()) return {};
    return [c = *c](std::uint64_t from) { return c.next_member(from); };
  }
  return s.lazy()->inf_witness;
}

}  // namespace

Verdict almost_subset(const EvaluableSet& a, const EvaluableSet& b, const Limits& limits) {
  const EvaluableSet not_b = complement(b);
  const EvaluableSet diff = subtract(a, b);
  if (const auto inf = exact_infinite_meet(a, not_b)) {
    if (!*inf) return Verdict::verified("a \\ b is finite");
    return Verdict::refuted("a \\ b is infinite", sample_members(diff, stream_of(a), 5, limits.horizon));
  }
  auto found = sample_members(diff, stream_of(a), limits.min_witnesses, limits.horizon);
  if (found.size() >= limits.min_witnesses) {
    Verdict v = Verdict::refuted(std::to_string(found.size()) + " points of a \\ b found within horizon",
                                 std::move(found));
    v.horizon = limits.horizon;
    return v;
  }
  return Verdict::unknown("lazy tier: " + std::to_string(found.size()) + " points of a \\ b within horizon",
                          limits.horizon);
}

Verdict splits(const EvaluableSet& s, const EvaluableSet& b, const Limits& limits) {
  const auto b_inf = exact_is_infinite(b);
  if (b_inf == false) throw Error("splits: " + b.describe() + " is finite");
  if (!b_inf && !(b.lazy() && b.lazy()->inf_witness))
    throw Error("splits: " + b.describe() + " is not certified infinite");

  const EvaluableSet not_s = complement(s);
  const auto in = exact_infinite_meet(b, s);
  const auto out = exact_infinite_meet(b, not_s);
  if (in == false) return Verdict::refuted("b n s is finite", sample_members(subtract(b, s), stream_of(b), 5, limits.horizon));
  if (out == false) return Verdict::refuted("b \\ s is finite", sample_members(intersect(b, s), stream_of(b), 5, limits.horizon));
  if (in && out) return Verdict::verified("b n s and b \\ s are infinite");

  const auto stream = stream_of(b);
  const auto ins = sample_members(intersect(b, s), stream, limits.min_witnesses, limits.horizon);
  const auto outs = sample_members(subtract(b, s), stream, limits.min_witnesses, limits.horizon);
  Verdict v = Verdict::unknown("lazy tier: " + std::to_string(ins.size()) + " in / " + std::to_string(outs.size()) +
                                   " out witnesses within horizon",
                               limits.horizon);
  v.evidence = ins;
  v.evidence.insert(v.evidence.end(), outs.begin(), outs.end());
  return v;
}

Verdict is_infinite(const EvaluableSet& a, const Limits& limits) {
  if (const auto inf = exact_is_infinite(a)) {
    return *inf ? Verdict::verified("infinite") : Verdict::refuted("finite");
  }
  return Verdict::unknown("lazy tier: infiniteness not certified", limits.horizon);
}

Verdict subset_exact(const EvaluableSet& a, const EvaluableSet& b, const Limits& limits) {
  const EvaluableSet diff = subtract(a, b);
  if (const auto empty = exact_is_empty(diff)) {
    if (*empty) return Verdict::verified("a <= b");
    return Verdict::refuted("a \\ b is nonempty", sample_members(diff, stream_of(a), 1, limits.horizon));
  }
  for (std::uint64_t m = 0; m < limits.horizon; ++m)
    if (a.contains(m) && !b.contains(m)) return Verdict::refuted("a \\ b is nonempty", {m});
  return Verdict::unknown("no point of a \\ b below horizon", limits.horizon);
}

}  // namespace talab
