#include "majq/synth.hpp"

#include <bit>
#include <string>

namespace majq {

depth_two_circuit synthesize(std::size_t n) {
  if (n == 0) {
    throw precondition_error("synthesize needs n >= 1");
  }
  const auto m = static_cast<std::int64_t>(n / 3);
  const auto r = static_cast<std::int64_t>(n % 3);

  std::int64_t singles = 0;
  std::int64_t base = 0;
  std::int64_t ladder = 0;
  switch (r) {
  case 0:
    singles = m;
    base = ceil_div(static_cast<std::int64_t>(n), 6);
    ladder = m + 1;
    break;
  case 1:
    singles = m + 1;
    base = ceil_div(m - 1, 2);
    ladder = m + 2;
    break;
  default:
    singles = m + 2;
    base = ceil_div(m - 2, 2); // ceil(m/2 - 1)
    ladder = m + 3;
    break;
  }

  depth_two_circuit c;
  c.n = n;
  c.first_level.reserve(static_cast<std::size_t>(singles + ladder));
  for (std::int64_t i = 0; i < singles; ++i) {
    c.first_level.emplace_back(index_set::single(static_cast<std::size_t>(i)), 1);
  }
  const auto block = index_set::range(static_cast<std::size_t>(singles), n);
  for (std::int64_t i = 0; i < ladder; ++i) {
    c.first_level.emplace_back(block, base + i);
  }

  const auto gates = static_cast<std::int64_t>(c.first_level.size());
  c.output = threshold_gate(index_set::range(0, c.first_level.size()), ceil_div(gates, 2));
  c.declared_k = static_cast<std::size_t>(gates);
  return c;
}

depth_two_circuit trivial_circuit(std::size_t n) {
  if (n == 0) {
    throw precondition_error("trivial_circuit needs n >= 1");
  }
  depth_two_circuit c;
  c.n = n;
  c.first_level.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.first_level.emplace_back(index_set::single(i), 1);
  }
  // 2 * sum >= n  <=>  sum >= ceil(n / 2)
  c.output = threshold_gate(index_set::range(0, n), ceil_div(static_cast<std::int64_t>(n), 2));
  c.declared_k = n;
  return c;
}

namespace {

// Bit i of the mask is input i, so the gate sum is a popcount when weights are 1.
struct compiled_gate {
  std::uint64_t mask = 0;
  std::vector<std::pair<std::size_t, std::int64_t>> weighted;
  std::int64_t threshold = 0;

  explicit compiled_gate(const threshold_gate& g) : threshold(g.threshold()) {
    const auto& in = g.inputs();
    for (std::size_t pos = 0; pos < in.size(); ++pos) {
      if (g.unit_weights()) {
        mask |= std::uint64_t{1} << in[pos];
      } else {
        weighted.emplace_back(in[pos], g.weight(pos));
      }
    }
  }

  bool eval(std::uint64_t values) const {
    std::int64_t total = std::popcount(values & mask);
    for (const auto& [i, w] : weighted) {
      if ((values >> i) & 1u) {
        total += w;
      }
    }
    return total >= threshold;
  }
};

} // namespace

verify_result verify_exhaustive(const depth_two_circuit& c, std::size_t limit_n) {
  if (c.n > limit_n || c.n > 63) {
    throw precondition_error("refusing exhaustive check of n = " + std::to_string(c.n) + " (limit " +
                             std::to_string(std::min<std::size_t>(limit_n, 63)) + ")");
  }
  check_well_formed(c);
  const std::size_t n = c.n;
  const std::uint64_t total = std::uint64_t{1} << n;

  if (c.first_level.size() > 64) {
    for (std::uint64_t v = 0; v < total; ++v) {
      bit_vector x(n);
      for (std::size_t i = 0; i < n; ++i) {
        x.set(i, (v >> (n - 1 - i)) & 1u);
      }
      if (circuit_eval(c, x) != majority(x)) {
        return {x};
      }
    }
    return {};
  }

  std::vector<compiled_gate> level;
  level.reserve(c.first_level.size());
  for (const auto& g : c.first_level) {
    level.emplace_back(g);
  }
  const compiled_gate out(c.output);

  // Counter value v encodes x_i as bit (n - 1 - i), so counting up walks the
  // bitstrings x_0 x_1 ... x_{n-1} in lexicographic order.
  for (std::uint64_t v = 0; v < total; ++v) {
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < n; ++i) {
      x |= ((v >> (n - 1 - i)) & 1u) << i;
    }
    std::uint64_t outputs = 0;
    for (std::size_t g = 0; g < level.size(); ++g) {
      outputs |= std::uint64_t{level[g].eval(x)} << g;
    }
    const bool expected = 2 * static_cast<std::size_t>(std::popcount(x)) >= n;
    if (out.eval(outputs) != expected) {
      return {bit_vector::from_mask(x, n)};
    }
  }
  return {};
}

truth_table majority_table(std::size_t n) {
  if (n > 30) {
    throw precondition_error("truth tables are limited to 30 variables");
  }
  truth_table t(std::size_t{1} << n);
  for (std::size_t v = 0; v < t.size(); ++v) {
    t[v] = 2 * static_cast<std::size_t>(std::popcount(v)) >= n;
  }
  return t;
}

std::uint64_t boundary_edges(const truth_table& f, std::size_t n) {
  if (n > 20 || f.size() != (std::size_t{1} << n)) {
    throw precondition_error("truth table has " + std::to_string(f.size()) + " entries, expected 2^" +
                             std::to_string(n));
  }
  std::uint64_t edges = 0;
  for (std::size_t v = 0; v < f.size(); ++v) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t u = v | (std::size_t{1} << i);
      if (u != v && f[u] != f[v]) {
        ++edges;
      }
    }
  }
  return edges;
}

} // namespace majq
