#pragma once

#include <functional>
#include <optional>
#include <string_view>

#include "talab/omega_sets.hpp"

namespace talab {

/// Resolves a bare identifier in a set literal to a named set.
using SetResolver = std::function<std::optional<EvaluableSet>(std::string_view)>;

/// Parses literals such as
///   cyl("1") - cyl("101") + {3,7} - {2}
///   (evens & ~digit(1)) + residue(4; 1,3)
/// Operators are left-associative with equal precedence: `+` union,
/// `-` difference, `&` intersection; `~` is prefix complement. Builtins:
/// cyl("bits"), omega, empty, evens, odds, primes, pow2, digit(i),
/// residue(m; r1, r2, ...).
EvaluableSet parse_set_literal(std::string_view text, const SetResolver& resolve = {});

}  // namespace talab
