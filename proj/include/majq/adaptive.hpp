#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "majq/core.hpp"
#include "majq/oracles.hpp"

namespace majq {

/// Oracle answers contradict each other (an impossible parity case was hit).
class inconsistent_oracle : public error {
public:
  using error::error;
};

/// The fixed-threshold engine ran past its step limit. Indicates a bug.
class step_limit_exceeded : public error {
public:
  using error::error;
};

struct solve_report {
  bool answer = false;
  std::size_t queries = 0;
  /// Published query bound at (n, k); absent for the fixed-threshold model
  /// when k < 5.
  std::optional<double> bound;
  std::vector<std::string> trace;
};

/// ceil(n/k) contiguous blocks; the first n - r(l-1) have size
/// l = ceil(n/r), the rest l - 1.
std::vector<index_set> block_partition(std::size_t n, std::size_t k);

/// ceil(n/k) * ceil(log2(k+1))
std::size_t adjustable_bound(std::size_t n, std::size_t k);

/// 2 (n/(k-4) + 1)(log2 k + 4), defined for k >= 5.
std::optional<double> fixed_bound(std::size_t n, std::size_t k);

/// Binary-searches the exact sum of every block with threshold queries.
/// Never queries the free endpoints t = 0 and t = |B| + 1.
solve_report solve_adjustable(oracle& o, std::size_t n, std::size_t k, bool trace = false);

/// Sliding-window search between two equal-size disjoint sets with opposite
/// (already known) majorities.
///
/// Positions 1..2c enumerate `a` then `b`; window m covers positions
/// m..m+c-1, so window 1 is A (answer fa) and window c+1 is B (answer fb).
/// Binary search finds h with window h answering fa and window h+1 answering
/// fb, which forces the element at position h to equal fa and the one at
/// h + c to differ. Returned set, with exactly half its members equal to 1:
///
///   c even:                 positions h+1-fa .. h+c-fa   (size c)
///   c odd:                  positions h+1 .. h+c-1       (size c-1)
///   c odd, prefer_large:    positions h .. h+c           (size c+1)
///
/// Uses at most ceil(log2(c+1)) queries and never queries windows 1 or c+1.
index_set find_balanced_set(oracle& o, std::span<const std::size_t> a, std::span<const std::size_t> b, bool fa,
                            bool fb, bool prefer_large);

struct block {
  index_set indices;
  bool answer = false; // MAJ of the block under the hidden input
};

enum class engine_rule {
  mixed,     // P0: a block holds a known 1 and a known 0
  cancel,    // P1: two fully known uniform blocks of opposite value
  case2,     // P2: equal sizes, opposite answers
  case1,     // P3: sizes c and c-1, opposite answers
  absorb,    // P4: singleton merged into an opposite block below k
  rebalance, // P5: split one unknown element off the largest block
};

const char* rule_name(engine_rule r);

struct engine_step {
  engine_rule rule = engine_rule::mixed;
  std::vector<index_set> removed; // each has sum exactly |S|/2
  std::size_t queries = 0;
  std::string description;
};

/// State of the fixed-threshold elimination engine. Blocks are pairwise
/// disjoint, each of size at most k, and together with the removed indices
/// they cover 0..n-1.
struct engine_state {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<block> blocks;
  std::size_t removed_balanced = 0;
  std::size_t steps = 0;
  /// Bits learnt so far: -1 unknown, else 0/1.
  std::vector<std::int8_t> known;

  /// Union of all blocks.
  index_set active() const;
  bool done() const;
  /// Answer once done(): the common block answer, or 1 when nothing is left.
  bool answer() const;
};

/// 16 n (ceil(log2(k+1)) + 2)
std::size_t step_limit(std::size_t n, std::size_t k);

/// Partitions with block_partition and queries every block.
engine_state engine_start(oracle& o, std::size_t n, std::size_t k);

/// Applies exactly one rule, the first of P0..P5 that matches. Within a rule,
/// pairs minimise (larger block size, smallest contained index).
/// Precondition: !state.done().
engine_step engine_advance(engine_state& state, oracle& o);

using engine_observer = std::function<void(const engine_state&, const engine_step&)>;

struct fixed_options {
  bool trace = false;
  /// Called after every engine step.
  engine_observer observer;
};

solve_report solve_fixed(oracle& o, std::size_t n, std::size_t k, const fixed_options& options = {});

std::string to_string(const index_set& s);

} // namespace majq
