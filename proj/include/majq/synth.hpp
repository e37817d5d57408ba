#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "majq/core.hpp"

namespace majq {

/// Depth-two circuit for MAJ_n with fan-in at most floor(2n/3) + 4.
///
/// With n = 3m + r the lowest (m + r) inputs each get a singleton gate and the
/// remaining 2m inputs form the block M. M feeds a ladder of unit-weight
/// threshold gates [sum_M >= base + i], i = 0, 1, ..., so the ladder counts how
/// far sum_M exceeds `base`:
///
///   r = 0:  base = ceil(n/6),      m + 1 ladder gates, 2m + 1 gates total
///   r = 1:  base = ceil((m-1)/2),  m + 2 ladder gates, 2m + 3 gates total
///   r = 2:  base = ceil(m/2 - 1),  m + 3 ladder gates, 2m + 5 gates total
///
/// The output gate is plain majority over all first-level gates (the gate
/// count is always odd, threshold (g + 1) / 2). For small m the base may be
/// zero or negative, which makes some ladder gates constant-true.
///
/// Throws precondition_error for n = 0.
depth_two_circuit synthesize(std::size_t n);

/// n singleton gates and a MAJ_n output gate; fan-in n.
depth_two_circuit trivial_circuit(std::size_t n);

struct verify_result {
  /// Lexicographically first input on which the circuit disagrees with MAJ_n.
  std::optional<bit_vector> counterexample;

  bool equivalent() const { return !counterexample; }
};

/// Checks all 2^n inputs in lexicographic order (index 0 most significant).
/// Refuses circuits with n > limit_n or n > 63.
verify_result verify_exhaustive(const depth_two_circuit& c, std::size_t limit_n = 24);

/// Truth table over n variables; entry v is f evaluated at the assignment
/// whose variable i is bit i of v.
using truth_table = std::vector<bool>;

truth_table majority_table(std::size_t n);

/// Number of hypercube edges {v, v ^ (1 << i)} on which f changes value.
/// Limited to n <= 20.
std::uint64_t boundary_edges(const truth_table& f, std::size_t n);

} // namespace majq
