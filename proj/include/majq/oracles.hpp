#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "majq/core.hpp"

namespace majq {

/// The query violated 1 <= |S| <= k or named an index outside the vector.
/// Rejected queries are not counted.
class query_rejected : public precondition_error {
public:
  using precondition_error::precondition_error;
};

struct query_record {
  index_set set;
  std::optional<std::int64_t> threshold; // empty for fixed-threshold queries
  bool answer = false;
};

struct oracle_stats {
  std::size_t count = 0;
  std::vector<query_record> log;
  bool logging = true;
};

/// Query endpoint for both adaptive models. Implementations own mutable state,
/// so a single instance must not be queried concurrently.
class oracle {
public:
  oracle(std::size_t n, std::size_t k);
  virtual ~oracle() = default;

  /// MAJ_S(x) = [2 sum_S(x) >= |S|]
  bool query_fixed(const index_set& s);
  /// MAJ_S(x; t) = [sum_S(x) >= t]
  bool query_adjustable(const index_set& s, std::int64_t t);

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  const oracle_stats& stats() const { return stats_; }
  std::size_t queries() const { return stats_.count; }
  /// The counter keeps running with logging off.
  void set_logging(bool on) { stats_.logging = on; }

protected:
  /// sum_S(x) for a validated set.
  virtual std::size_t sum(const index_set& s) = 0;

private:
  void validate(const index_set& s) const;
  void record(const index_set& s, std::optional<std::int64_t> t, bool answer);

  std::size_t n_;
  std::size_t k_;
  oracle_stats stats_;
};

/// Answers from a fixed hidden vector.
class honest_oracle final : public oracle {
public:
  honest_oracle(bit_vector x, std::size_t k);

  const bit_vector& hidden() const { return x_; }

protected:
  std::size_t sum(const index_set& s) override;

private:
  bit_vector x_;
  std::uint64_t mask_ = 0; // x as a bitmask when n <= 64
};

/// Lazily fixes bits so that every set of touched indices T keeps
/// sum_T(x) = floor(|T| / 2). Until ceil(n/k) queries have been made some
/// index is untouched, and both majority outcomes remain possible.
class adversary_oracle final : public oracle {
public:
  adversary_oracle(std::size_t n, std::size_t k);

  /// Assigned value of index i, if it has been touched.
  std::optional<bool> assigned(std::size_t i) const;
  std::size_t touched() const { return touched_; }
  std::size_t assigned_sum() const { return ones_; }

  /// The all-zeros and all-ones extensions of the assignment.
  std::pair<bit_vector, bit_vector> completions() const;
  /// True iff the two completions disagree on MAJ_n.
  bool is_ambiguous() const;

protected:
  std::size_t sum(const index_set& s) override;

private:
  std::vector<std::int8_t> assigned_; // -1 unset, else 0/1
  std::size_t touched_ = 0;
  std::size_t ones_ = 0;
};

} // namespace majq
