#pragma once

// Subsets of omega in two tiers: exact cylinder algebra over the node
// enumeration of 2^{<omega}, and lazy predicate sets with certificates.

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace talab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a search exceeds its configured step budget.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

/// Longest bit string representable as a node index below 2^63.
inline constexpr std::size_t kMaxBitLength = 62;

/// A finite bit string. Stored as its node code, the binary number 1b_1...b_l,
/// so that the node index is code - 1 and prefix tests are shifts.
class BitString {
 public:
  BitString() = default;

  static BitString from_index(std::uint64_t k);
  static BitString from_text(std::string_view bits);
  static BitString from_code(std::uint64_t code);

  std::uint64_t index() const { return code_ - 1; }
  std::uint64_t code() const { return code_; }
  std::size_t size() const;
  bool empty() const { return code_ == 1; }
  bool bit(std::size_t i) const;

  BitString child(bool b) const;
  BitString prefix(std::size_t len) const;
  BitString flip_last() const;
  bool is_prefix_of(const BitString& other) const;

  std::string text() const;

  auto operator<=>(const BitString&) const = default;

 private:
  explicit BitString(std::uint64_t code) : code_(code) {}
  std::uint64_t code_ = 1;
};

/// sigma_k: write k+1 in binary and drop the leading 1.
BitString enumerate_node(std::uint64_t k);
std::uint64_t node_index(const BitString& s);

enum class Status { verified, refuted, unknown };

std::string_view to_string(Status s);

struct Verdict {
  Status status = Status::unknown;
  std::string detail;
  // Counterexamples for refuted, witnesses for verified.
  std::vector<std::uint64_t> evidence;
  // Zero when the verdict is exact.
  std::uint64_t horizon = 0;

  static Verdict verified(std::string detail = {}, std::vector<std::uint64_t> evidence = {});
  static Verdict refuted(std::string detail, std::vector<std::uint64_t> evidence = {});
  static Verdict unknown(std::string detail, std::uint64_t horizon);

  bool is_verified() const { return status == Status::verified; }
  bool is_refuted() const { return status == Status::refuted; }
  bool is_unknown() const { return status == Status::unknown; }
};

/// Refuted dominates Unknown dominates Verified.
Verdict worst(Verdict a, Verdict b);

struct Limits {
  std::uint64_t horizon = 4096;
  std::uint64_t budget = 1'000'000;
  std::size_t min_witnesses = 20;

  /// Defaults, with TALAB_HORIZON overriding the horizon when set.
  static Limits from_env();
};

/// Boolean combination of cylinders [tau] = {k : sigma_k extends tau}, modulo
/// finite corrections. Normal form: `roots` is the canonical antichain of the
/// clopen part (no root extends another, no two siblings both present),
/// `plus` are members outside the cylinder part and `minus` non-members
/// inside it. Two sets are equal iff their normal forms are.
class CylinderSet {
 public:
  CylinderSet() = default;

  static CylinderSet cylinder(const BitString& root);
  static CylinderSet finite(std::vector<std::uint64_t> points);
  static CylinderSet omega();
  /// (U[positive] \ U[negative] u plus) \ minus, normalized.
  static CylinderSet from_parts(const std::vector<BitString>& positive,
                                const std::vector<BitString>& negative,
                                const std::vector<std::uint64_t>& plus,
                                const std::vector<std::uint64_t>& minus);

  bool contains(std::uint64_t k) const;
  bool is_empty() const { return roots_.empty() && plus_.empty(); }
  bool is_finite() const { return roots_.empty(); }
  bool is_cofinite() const;
  std::optional<std::uint64_t> next_member(std::uint64_t from) const;

  const std::vector<BitString>& roots() const { return roots_; }
  const std::vector<std::uint64_t>& plus() const { return plus_; }
  const std::vector<std::uint64_t>& minus() const { return minus_; }

  /// Textual literal, e.g. cyl("1") + {3} - {2}.
  std::string to_literal() const;

  friend CylinderSet unite(const CylinderSet& a, const CylinderSet& b);
  friend CylinderSet intersect(const CylinderSet& a, const CylinderSet& b);
  friend CylinderSet subtract(const CylinderSet& a, const CylinderSet& b);
  friend CylinderSet complement(const CylinderSet& a);

  bool operator==(const CylinderSet&) const = default;

 private:
  template <typename Op>
  static CylinderSet combine(const CylinderSet& a, const CylinderSet& b, Op op);

  std::vector<BitString> roots_;
  std::vector<std::uint64_t> plus_;
  std::vector<std::uint64_t> minus_;
};

/// Certificate that membership depends only on n mod `modulus`.
struct ResidueCertificate {
  std::uint64_t modulus = 1;
  std::vector<bool> residues;

  bool empty() const;
  bool full() const;
};

/// Subset of omega given by a total membership predicate plus optional
/// certificates. Streams return the least member (non-member) >= their
/// argument and must be sound.
struct LazySet {
  using Predicate = std::function<bool(std::uint64_t)>;
  using Stream = std::function<std::optional<std::uint64_t>(std::uint64_t)>;

  std::string name;
  Predicate member;
  std::uint64_t budget = 1'000'000;
  Stream inf_witness;
  Stream coinf_witness;
  std::optional<ResidueCertificate> residue;
};

LazySet residue_set(std::uint64_t modulus, const std::vector<std::uint64_t>& residues);
LazySet evens();
LazySet odds();
/// D_i = {n : floor(n / 2^i) even}.
LazySet digit_set(unsigned i);
LazySet primes();
LazySet powers_of_two();

class EvaluableSet {
 public:
  EvaluableSet() : repr_(CylinderSet{}) {}
  EvaluableSet(CylinderSet c) : repr_(std::move(c)) {}  // NOLINT
  EvaluableSet(LazySet l) : repr_(std::move(l)) {}      // NOLINT

  bool contains(std::uint64_t k) const;
  bool is_exact() const { return std::holds_alternative<CylinderSet>(repr_); }
  const CylinderSet* cylinder() const { return std::get_if<CylinderSet>(&repr_); }
  const LazySet* lazy() const { return std::get_if<LazySet>(&repr_); }
  const ResidueCertificate* residue() const;

  /// Lazy view of either tier.
  LazySet as_lazy() const;
  std::string describe() const;

 private:
  std::variant<CylinderSet, LazySet> repr_;
};

EvaluableSet unite(const EvaluableSet& a, const EvaluableSet& b);
EvaluableSet intersect(const EvaluableSet& a, const EvaluableSet& b);
EvaluableSet subtract(const EvaluableSet& a, const EvaluableSet& b);
EvaluableSet complement(const EvaluableSet& a);

/// Exact answers when the representation allows one.
std::optional<bool> exact_is_empty(const EvaluableSet& a);
std::optional<bool> exact_is_infinite(const EvaluableSet& a);
/// Exact infiniteness of a n b for cylinder/residue/certified-empty pairings.
std::optional<bool> exact_infinite_meet(const EvaluableSet& a, const EvaluableSet& b);

/// Searches below the horizon for a member; exact when one is found.
std::optional<std::uint64_t> find_member(const EvaluableSet& a, std::uint64_t horizon);

/// Verified iff a \ b is finite.
Verdict almost_subset(const EvaluableSet& a, const EvaluableSet& b, const Limits& limits = {});
/// Verified iff b n s and b \ s are both infinite. Requires b certified infinite.
Verdict splits(const EvaluableSet& s, const EvaluableSet& b, const Limits& limits = {});
/// Verified iff a is infinite.
Verdict is_infinite(const EvaluableSet& a, const Limits& limits = {});
/// Exact containment a <= b; refuted with a counterexample point.
Verdict subset_exact(const EvaluableSet& a, const EvaluableSet& b, const Limits& limits = {});

}  // namespace talab
