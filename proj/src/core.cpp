#include "majq/core.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace majq {

bit_vector bit_vector::from_string(std::string_view text) {
  bit_vector x(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1') {
      throw precondition_error("bitstring may only contain '0' and '1', got '" + std::string(text) + "'");
    }
    x.set(i, text[i] == '1');
  }
  return x;
}

bit_vector bit_vector::from_mask(std::uint64_t mask, std::size_t n) {
  if (n > 64) {
    throw precondition_error("from_mask supports at most 64 bits");
  }
  bit_vector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x.set(i, (mask >> i) & 1u);
  }
  return x;
}

bool bit_vector::at(std::size_t i) const {
  if (i >= bits_.size()) {
    throw precondition_error("index " + std::to_string(i) + " out of range for vector of length " +
                             std::to_string(bits_.size()));
  }
  return bits_[i];
}

std::size_t bit_vector::popcount() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::uint64_t bit_vector::to_mask() const {
  if (bits_.size() > 64) {
    throw precondition_error("to_mask supports at most 64 bits");
  }
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) {
      mask |= std::uint64_t{1} << i;
    }
  }
  return mask;
}

std::string bit_vector::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) {
      s[i] = '1';
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

index_set::index_set(std::vector<std::size_t> indices) {
  for (std::size_t i = 1; i < indices.size(); ++i) {
    if (indices[i - 1] >= indices[i]) {
      throw precondition_error("index set must be strictly increasing");
    }
  }
  if (!indices.empty() && indices.back() - indices.front() + 1 == indices.size()) {
    first_ = indices.front();
    last_ = indices.back() + 1;
    return;
  }
  if (!indices.empty()) {
    explicit_ = std::make_shared<const std::vector<std::size_t>>(std::move(indices));
  }
}

index_set index_set::range(std::size_t first, std::size_t last) {
  index_set s;
  if (first < last) {
    s.first_ = first;
    s.last_ = last;
  }
  return s;
}

index_set index_set::from_unsorted(std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
    throw precondition_error("index set contains duplicates");
  }
  return index_set(std::move(indices));
}

std::size_t index_set::size() const {
  return explicit_ ? explicit_->size() : last_ - first_;
}

std::size_t index_set::operator[](std::size_t pos) const {
  return explicit_ ? (*explicit_)[pos] : first_ + pos;
}

bool index_set::contains(std::size_t i) const {
  if (!explicit_) {
    return i >= first_ && i < last_;
  }
  return std::binary_search(explicit_->begin(), explicit_->end(), i);
}

bool operator==(const index_set& a, const index_set& b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

index_set set_union(const index_set& a, const index_set& b) {
  std::vector<std::size_t> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return index_set(std::move(out));
}

index_set set_difference(const index_set& a, const index_set& b) {
  std::vector<std::size_t> out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return index_set(std::move(out));
}

// ---------------------------------------------------------------------------

threshold_gate::threshold_gate(index_set inputs, std::int64_t threshold)
    : inputs_(std::move(inputs)), threshold_(threshold),
      fan_in_(static_cast<std::int64_t>(inputs_.size())) {}

threshold_gate::threshold_gate(index_set inputs, std::vector<std::int64_t> weights, std::int64_t threshold)
    : inputs_(std::move(inputs)), threshold_(threshold) {
  if (weights.size() != inputs_.size()) {
    throw precondition_error("gate has " + std::to_string(inputs_.size()) + " inputs but " +
                             std::to_string(weights.size()) + " weights");
  }
  if (std::any_of(weights.begin(), weights.end(), [](std::int64_t w) { return w < 1; })) {
    throw precondition_error("gate weights must be positive integers");
  }
  fan_in_ = std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
  unit_ = std::all_of(weights.begin(), weights.end(), [](std::int64_t w) { return w == 1; });
  if (!unit_) {
    weights_ = std::move(weights);
  }
}

std::vector<std::int64_t> threshold_gate::weights() const {
  if (unit_) {
    return std::vector<std::int64_t>(inputs_.size(), 1);
  }
  return weights_;
}

bool operator==(const threshold_gate& a, const threshold_gate& b) {
  if (a.threshold_ != b.threshold_ || a.fan_in_ != b.fan_in_ || !(a.inputs_ == b.inputs_)) {
    return false;
  }
  if (a.unit_ && b.unit_) {
    return true;
  }
  return a.weights() == b.weights();
}

// ---------------------------------------------------------------------------

bool majority(const bit_vector& x) {
  return 2 * x.popcount() >= x.size();
}

std::size_t sum_over(const bit_vector& x, const index_set& s) {
  std::size_t sum = 0;
  for (auto i : s) {
    sum += x.at(i);
  }
  return sum;
}

bool maj_threshold(const bit_vector& x, const index_set& s, std::int64_t t) {
  return static_cast<std::int64_t>(sum_over(x, s)) >= t;
}

bool maj_set(const bit_vector& x, const index_set& s) {
  return 2 * sum_over(x, s) >= s.size();
}

bool gate_eval(const threshold_gate& g, const bit_vector& values) {
  std::int64_t total = 0;
  const auto& in = g.inputs();
  for (std::size_t pos = 0; pos < in.size(); ++pos) {
    if (values.at(in[pos])) {
      total += g.weight(pos);
    }
  }
  return total >= g.threshold();
}

void check_well_formed(const depth_two_circuit& c) {
  const auto k = static_cast<std::int64_t>(c.declared_k);
  for (std::size_t g = 0; g < c.first_level.size(); ++g) {
    const auto& gate = c.first_level[g];
    if (!gate.inputs().empty() && gate.inputs().back() >= c.n) {
      throw precondition_error("gate " + std::to_string(g) + " reads input " +
                               std::to_string(gate.inputs().back()) + " but n = " + std::to_string(c.n));
    }
    if (gate.fan_in() > k) {
      throw precondition_error("gate " + std::to_string(g) + " has fan-in " + std::to_string(gate.fan_in()) +
                               " above k = " + std::to_string(k));
    }
  }
  const auto& out = c.output.inputs();
  if (!out.empty() && out.back() >= c.first_level.size()) {
    throw precondition_error("output gate reads gate " + std::to_string(out.back()) + " but only " +
                             std::to_string(c.first_level.size()) + " gates exist");
  }
  if (c.output.fan_in() > k) {
    throw precondition_error("output gate has fan-in " + std::to_string(c.output.fan_in()) +
                             " above k = " + std::to_string(k));
  }
}

bool circuit_eval(const depth_two_circuit& c, const bit_vector& x) {
  if (x.size() != c.n) {
    throw precondition_error("input has length " + std::to_string(x.size()) + ", circuit expects " +
                             std::to_string(c.n));
  }
  bit_vector level(c.first_level.size());
  for (std::size_t g = 0; g < c.first_level.size(); ++g) {
    level.set(g, gate_eval(c.first_level[g], x));
  }
  return gate_eval(c.output, level);
}

std::int64_t circuit_fanin(const depth_two_circuit& c) {
  std::int64_t k = c.output.fan_in();
  for (const auto& g : c.first_level) {
    k = std::max(k, g.fan_in());
  }
  return k;
}

} // namespace majq
