#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace majq {

// All indices are 0-based. Index 0 is the leftmost character of a bitstring.

class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (bad size, index out of range, ...).
class precondition_error : public error {
public:
  using error::error;
};

class bit_vector {
public:
  bit_vector() = default;
  explicit bit_vector(std::size_t n, bool value = false) : bits_(n, value) {}
  bit_vector(std::initializer_list<bool> bits) : bits_(bits) {}

  /// Parses "0110"-style text; index 0 is the first character.
  static bit_vector from_string(std::string_view text);
  /// Low n bits of `mask`, bit i of the mask becoming index i.
  static bit_vector from_mask(std::uint64_t mask, std::size_t n);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i]; }
  bool at(std::size_t i) const;
  void set(std::size_t i, bool value) { bits_[i] = value; }

  std::size_t popcount() const;
  std::uint64_t to_mask() const;
  std::string to_string() const;

  friend bool operator==(const bit_vector&, const bit_vector&) = default;

private:
  std::vector<bool> bits_;
};

/// Strictly increasing sequence of indices. Copies are cheap: a contiguous
/// run is stored as its bounds, anything else shares one immutable buffer.
class index_set {
public:
  class const_iterator {
  public:
    using iterator_category = std::random_access_iterator_tag;
    using value_type = std::size_t;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = std::size_t;

    const_iterator() = default;
    const_iterator(const index_set* set, std::size_t pos) : set_(set), pos_(pos) {}

    std::size_t operator*() const { return (*set_)[pos_]; }
    std::size_t operator[](difference_type d) const { return (*set_)[pos_ + d]; }
    const_iterator& operator++() { ++pos_; return *this; }
    const_iterator operator++(int) { auto tmp = *this; ++pos_; return tmp; }
    const_iterator& operator--() { --pos_; return *this; }
    const_iterator operator--(int) { auto tmp = *this; --pos_; return tmp; }
    const_iterator& operator+=(difference_type d) { pos_ += d; return *this; }
    const_iterator& operator-=(difference_type d) { pos_ -= d; return *this; }
    friend const_iterator operator+(const_iterator it, difference_type d) { return it += d; }
    friend const_iterator operator+(difference_type d, const_iterator it) { return it += d; }
    friend const_iterator operator-(const_iterator it, difference_type d) { return it -= d; }
    friend difference_type operator-(const const_iterator& a, const const_iterator& b) {
      return static_cast<difference_type>(a.pos_) - static_cast<difference_type>(b.pos_);
    }
    friend bool operator==(const const_iterator& a, const const_iterator& b) { return a.pos_ == b.pos_; }
    friend auto operator<=>(const const_iterator& a, const const_iterator& b) { return a.pos_ <=> b.pos_; }

  private:
    const index_set* set_ = nullptr;
    std::size_t pos_ = 0;
  };

  index_set() = default;
  /// Throws precondition_error unless `indices` is strictly increasing.
  explicit index_set(std::vector<std::size_t> indices);
  index_set(std::initializer_list<std::size_t> indices)
      : index_set(std::vector<std::size_t>(indices)) {}

  /// {first, ..., last - 1}
  static index_set range(std::size_t first, std::size_t last);
  static index_set single(std::size_t i) { return range(i, i + 1); }
  /// Sorts; duplicates are a precondition_error.
  static index_set from_unsorted(std::vector<std::size_t> indices);

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::size_t operator[](std::size_t pos) const;
  std::size_t front() const { return (*this)[0]; }
  std::size_t back() const { return (*this)[size() - 1]; }
  bool contains(std::size_t i) const;

  const_iterator begin() const { return {this, 0}; }
  const_iterator end() const { return {this, size()}; }

  std::vector<std::size_t> to_vector() const { return {begin(), end()}; }

  friend bool operator==(const index_set& a, const index_set& b);

private:
  std::shared_ptr<const std::vector<std::size_t>> explicit_;
  std::size_t first_ = 0;
  std::size_t last_ = 0;
};

index_set set_union(const index_set& a, const index_set& b);
index_set set_difference(const index_set& a, const index_set& b);

/// [sum of w_i * x_{inputs_i} >= threshold] with positive integer weights.
class threshold_gate {
public:
  threshold_gate() = default;
  /// Unit weights.
  threshold_gate(index_set inputs, std::int64_t threshold);
  threshold_gate(index_set inputs, std::vector<std::int64_t> weights, std::int64_t threshold);

  const index_set& inputs() const { return inputs_; }
  std::int64_t threshold() const { return threshold_; }
  std::int64_t weight(std::size_t pos) const { return unit_ ? 1 : weights_[pos]; }
  std::vector<std::int64_t> weights() const;
  bool unit_weights() const { return unit_; }
  /// Sum of weights.
  std::int64_t fan_in() const { return fan_in_; }

  friend bool operator==(const threshold_gate& a, const threshold_gate& b);

private:
  index_set inputs_;
  std::vector<std::int64_t> weights_; // empty when unit_
  std::int64_t threshold_ = 0;
  std::int64_t fan_in_ = 0;
  bool unit_ = true;
};

struct depth_two_circuit {
  std::size_t n = 0;
  std::vector<threshold_gate> first_level;
  /// Inputs index into first_level.
  threshold_gate output;
  std::size_t declared_k = 0;

  friend bool operator==(const depth_two_circuit&, const depth_two_circuit&) = default;
};

/// Exact integer ceil(a / b) for b > 0, any sign of a.
constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

/// [popcount(x) >= n/2], ties inclusive; the empty vector gives 1.
bool majority(const bit_vector& x);

std::size_t sum_over(const bit_vector& x, const index_set& s);

/// [sum_S(x) >= t]
bool maj_threshold(const bit_vector& x, const index_set& s, std::int64_t t);

/// [2 sum_S(x) >= |S|]
bool maj_set(const bit_vector& x, const index_set& s);

bool gate_eval(const threshold_gate& g, const bit_vector& values);

/// Throws precondition_error when a gate references a missing wire or fan-in
/// exceeds declared_k.
void check_well_formed(const depth_two_circuit& c);

bool circuit_eval(const depth_two_circuit& c, const bit_vector& x);

/// Largest fan-in over every gate, including the output gate.
std::int64_t circuit_fanin(const depth_two_circuit& c);

} // namespace majq
