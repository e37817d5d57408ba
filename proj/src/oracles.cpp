#include "majq/oracles.hpp"

#include <bit>
#include <string>

namespace majq {

oracle::oracle(std::size_t n, std::size_t k) : n_(n), k_(k) {
  if (k == 0) {
    throw precondition_error("oracle fan-in k must be at least 1");
  }
}

void oracle::validate(const index_set& s) const {
  if (s.empty()) {
    throw query_rejected("empty query set");
  }
  if (s.size() > k_) {
    throw query_rejected("query of size " + std::to_string(s.size()) + " exceeds k = " + std::to_string(k_));
  }
  if (s.back() >= n_) {
    throw query_rejected("query index " + std::to_string(s.back()) + " out of range for n = " +
                         std::to_string(n_));
  }
}

void oracle::record(const index_set& s, std::optional<std::int64_t> t, bool answer) {
  ++stats_.count;
  if (stats_.logging) {
    stats_.log.push_back({s, t, answer});
  }
}

bool oracle::query_fixed(const index_set& s) {
  validate(s);
  const bool answer = 2 * sum(s) >= s.size();
  record(s, std::nullopt, answer);
  return answer;
}

bool oracle::query_adjustable(const index_set& s, std::int64_t t) {
  validate(s);
  const bool answer = static_cast<std::int64_t>(sum(s)) >= t;
  record(s, t, answer);
  return answer;
}

// ---------------------------------------------------------------------------

honest_oracle::honest_oracle(bit_vector x, std::size_t k) : oracle(x.size(), k), x_(std::move(x)) {
  if (x_.size() <= 64) {
    mask_ = x_.to_mask();
  }
}

std::size_t honest_oracle::sum(const index_set& s) {
  if (x_.size() > 64) {
    return sum_over(x_, s);
  }
  std::uint64_t selected = 0;
  for (auto i : s) {
    selected |= std::uint64_t{1} << i;
  }
  return static_cast<std::size_t>(std::popcount(selected & mask_));
}

// ---------------------------------------------------------------------------

adversary_oracle::adversary_oracle(std::size_t n, std::size_t k) : oracle(n, k), assigned_(n, -1) {}

std::optional<bool> adversary_oracle::assigned(std::size_t i) const {
  if (i >= assigned_.size() || assigned_[i] < 0) {
    return std::nullopt;
  }
  return assigned_[i] == 1;
}

std::size_t adversary_oracle::sum(const index_set& s) {
  std::vector<std::size_t> fresh;
  for (auto i : s) {
    if (assigned_[i] < 0) {
      fresh.push_back(i);
    }
  }
  // z = floor(|T u S| / 2) - sum_S(x); ones go to the lowest fresh indices.
  const std::size_t target = (touched_ + fresh.size()) / 2;
  if (target < ones_ || target - ones_ > fresh.size()) {
    throw error("adversary fill out of range");
  }
  const std::size_t z = target - ones_;
  for (std::size_t j = 0; j < fresh.size(); ++j) {
    assigned_[fresh[j]] = j < z ? 1 : 0;
  }
  touched_ += fresh.size();
  ones_ += z;
  if (ones_ != touched_ / 2) {
    throw error("adversary balance invariant broken");
  }

  std::size_t total = 0;
  for (auto i : s) {
    total += static_cast<std::size_t>(assigned_[i]);
  }
  return total;
}

std::pair<bit_vector, bit_vector> adversary_oracle::completions() const {
  bit_vector zeros(n()), ones(n(), true);
  for (std::size_t i = 0; i < n(); ++i) {
    if (assigned_[i] >= 0) {
      zeros.set(i, assigned_[i] == 1);
      ones.set(i, assigned_[i] == 1);
    }
  }
  return {std::move(zeros), std::move(ones)};
}

bool adversary_oracle::is_ambiguous() const {
  const auto [lo, hi] = completions();
  return majority(lo) != majority(hi);
}

} // namespace majq
