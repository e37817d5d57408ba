#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "majq/adaptive.hpp"
#include "majq/random.hpp"

using namespace majq;

namespace {

std::vector<std::size_t> sizes(const std::vector<index_set>& blocks) {
  std::vector<std::size_t> out;
  for (const auto& b : blocks) {
    out.push_back(b.size());
  }
  return out;
}

std::size_t ceil_log2(std::size_t v) {
  std::size_t r = 0;
  while ((std::size_t{1} << r) < v) {
    ++r;
  }
  return r;
}

} // namespace

TEST_CASE("block_partition") {
  CHECK(sizes(block_partition(10, 4)) == std::vector<std::size_t>{4, 3, 3});
  CHECK(sizes(block_partition(6, 3)) == std::vector<std::size_t>{3, 3});
  CHECK(sizes(block_partition(5, 5)) == std::vector<std::size_t>{5});
  CHECK(block_partition(10, 4)[1] == index_set{4, 5, 6});
  CHECK_THROWS_AS(block_partition(5, 0), precondition_error);
  CHECK_THROWS_AS(block_partition(5, 6), precondition_error);

  for (std::size_t n = 1; n <= 60; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      const auto blocks = block_partition(n, k);
      CHECK(blocks.size() == (n + k - 1) / k);
      std::size_t next = 0;
      for (const auto& b : blocks) {
        CHECK(b.size() <= k);
        CHECK(b.front() == next);
        next = b.back() + 1;
        CHECK(b.size() + 1 >= blocks.front().size());
      }
      CHECK(next == n);
    }
  }
}

TEST_CASE("bounds") {
  CHECK(adjustable_bound(8, 4) == 6);
  CHECK(adjustable_bound(6, 3) == 4);
  CHECK(adjustable_bound(7, 1) == 7);
  CHECK_FALSE(fixed_bound(10, 4).has_value());
  CHECK(*fixed_bound(12, 8) == doctest::Approx(2.0 * (12.0 / 4.0 + 1.0) * 7.0));
}

TEST_CASE("solve_adjustable examples") {
  honest_oracle o(bit_vector::from_string("101100"), 3);
  const auto r = solve_adjustable(o, 6, 3, true);
  CHECK(r.answer);
  CHECK(r.queries == 4);
  CHECK(r.trace == std::vector<std::string>{"block {0,1,2}: sum = 2", "block {3,4,5}: sum = 1"});

  honest_oracle zero(bit_vector::from_string("0000"), 4);
  CHECK_FALSE(solve_adjustable(zero, 4, 4).answer);

  for (std::uint64_t v = 0; v < 256; ++v) {
    honest_oracle p(bit_vector::from_mask(v, 8), 4);
    CHECK(solve_adjustable(p, 8, 4).queries <= 6);
  }
}

TEST_CASE("solve_adjustable never spends a query on a free threshold") {
  splitmix64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(rng.between(1, 30));
    const auto k = static_cast<std::size_t>(rng.between(1, n));
    honest_oracle o(rng.bits(n), k);
    const auto r = solve_adjustable(o, n, k);
    CHECK(r.answer == majority(o.hidden()));
    CHECK(r.queries <= adjustable_bound(n, k));
    for (const auto& q : o.stats().log) {
      REQUIRE(q.threshold.has_value());
      CHECK(*q.threshold >= 1);
      CHECK(*q.threshold <= static_cast<std::int64_t>(q.set.size()));
    }
  }
}

TEST_CASE("solvers check their arguments") {
  honest_oracle o(bit_vector::from_string("0101"), 2);
  CHECK_THROWS_AS(solve_adjustable(o, 4, 3), precondition_error);
  CHECK_THROWS_AS(solve_adjustable(o, 5, 2), precondition_error);
  CHECK_THROWS_AS(solve_fixed(o, 4, 0), precondition_error);
}

// ---------------------------------------------------------------------------

TEST_CASE("find_balanced_set on A = (1,1,0), B = (0,0,0)") {
  // indices 0..2 hold A, 3..5 hold B.
  const auto x = bit_vector::from_string("110000");
  const std::vector<std::size_t> a{0, 1, 2}, b{3, 4, 5};

  // Windows: f(1) = MAJ(1,1,0) = 1, f(2) = MAJ(1,0,0) = 0, so h = 1 after a
  // single query; positions 2..3 are indices {1, 2}.
  honest_oracle o(x, 3);
  const auto s = find_balanced_set(o, a, b, true, false, false);
  CHECK(s == index_set{1, 2});
  CHECK(o.queries() == 1);
  CHECK(o.stats().log[0].set == index_set{1, 2, 3});

  honest_oracle p(x, 3);
  const auto big = find_balanced_set(p, a, b, true, false, true);
  CHECK(big == index_set{0, 1, 2, 3});
  CHECK(sum_over(x, big) == 2);
}

TEST_CASE("find_balanced_set with c = 1") {
  honest_oracle o(bit_vector::from_string("10"), 1);
  const std::vector<std::size_t> a{0}, b{1};
  CHECK(find_balanced_set(o, a, b, true, false, true) == index_set{0, 1});
  CHECK(find_balanced_set(o, a, b, true, false, false).empty());
  CHECK(o.queries() == 0);
}

TEST_CASE("find_balanced_set preconditions") {
  honest_oracle o(bit_vector::from_string("1100"), 2);
  const std::vector<std::size_t> a{0, 1}, b{2, 3}, c{1, 2};
  CHECK_THROWS_AS(find_balanced_set(o, a, b, true, true, false), precondition_error);
  CHECK_THROWS_AS(find_balanced_set(o, a, c, true, false, false), precondition_error);
  CHECK_THROWS_AS(find_balanced_set(o, a, std::vector<std::size_t>{2}, true, false, false), precondition_error);
}

TEST_CASE("find_balanced_set returns balanced sets on random instances") {
  splitmix64 rng(23);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto c = static_cast<std::size_t>(rng.between(1, 20));
    const std::size_t n = 2 * c + static_cast<std::size_t>(rng.below(5));
    bit_vector x;
    std::vector<std::size_t> perm(n);
    std::vector<std::size_t> a, b;
    bool fa = false, fb = false;
    do {
      x = rng.bits(n);
      for (std::size_t i = 0; i < n; ++i) {
        perm[i] = i;
      }
      for (std::size_t i = 0; i + 1 < n; ++i) {
        std::swap(perm[i], perm[i + rng.below(n - i)]);
      }
      a.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(c));
      b.assign(perm.begin() + static_cast<std::ptrdiff_t>(c), perm.begin() + static_cast<std::ptrdiff_t>(2 * c));
      fa = maj_set(x, index_set::from_unsorted(a));
      fb = maj_set(x, index_set::from_unsorted(b));
    } while (fa == fb);

    for (bool large : {false, true}) {
      honest_oracle o(x, c);
      const auto s = find_balanced_set(o, a, b, fa, fb, large);
      CHECK(2 * sum_over(x, s) == s.size());
      CHECK(o.queries() <= ceil_log2(c + 1));
      if (c % 2 == 0) {
        CHECK(s.size() == c);
      } else {
        CHECK(s.size() == (large ? c + 1 : c - 1));
      }
      // Endpoint windows A and B are never queried.
      for (const auto& q : o.stats().log) {
        CHECK_FALSE(q.set == index_set::from_unsorted(a));
        CHECK_FALSE(q.set == index_set::from_unsorted(b));
      }
    }
  }
}

// ---------------------------------------------------------------------------

TEST_CASE("solve_fixed: all ones needs only the initial queries") {
  for (std::size_t n = 1; n <= 20; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      honest_oracle o(bit_vector(n, true), k);
      const auto r = solve_fixed(o, n, k);
      CHECK(r.answer);
      CHECK(r.queries == (n + k - 1) / k);
    }
  }
}

TEST_CASE("solve_fixed: n = 4, k = 2, x = 1100") {
  honest_oracle o(bit_vector::from_string("1100"), 2);
  const auto r = solve_fixed(o, 4, 2, {true, {}});
  CHECK(r.answer);
  CHECK(r.queries == 4);
  const auto& log = o.stats().log;
  REQUIRE(log.size() == 4);
  CHECK(log[0].set == index_set{0, 1});
  CHECK(log[1].set == index_set{2, 3});
  CHECK(log[2].set == index_set{1, 2});
  CHECK(log[3].set == index_set{0, 3});
  CHECK(log[3].answer);
  REQUIRE(r.trace.size() == 2);
  CHECK(r.trace[1].rfind("P2 case2", 0) == 0);
  CHECK_FALSE(r.bound.has_value());
}

TEST_CASE("solve_fixed: n = 12, k = 5 agrees with popcount on every input") {
  for (std::uint64_t v = 0; v < (1u << 12); ++v) {
    const auto x = bit_vector::from_mask(v, 12);
    honest_oracle o(x, 5);
    o.set_logging(false);
    const auto r = solve_fixed(o, 12, 5);
    REQUIRE(r.answer == (2 * static_cast<std::size_t>(__builtin_popcountll(v)) >= 12));
    CHECK(r.queries <= *r.bound);
  }
}

TEST_CASE("exhaustive correctness of both solvers for n <= 10") {
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        const auto x = bit_vector::from_mask(v, n);
        const bool expected = 2 * x.popcount() >= n;
        honest_oracle a(x, k), f(x, k);
        REQUIRE(solve_adjustable(a, n, k).answer == expected);
        REQUIRE(solve_fixed(f, n, k).answer == expected);
      }
    }
  }
}

TEST_CASE("both solvers beat the adversary") {
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      for (int model = 0; model < 2; ++model) {
        adversary_oracle a(n, k);
        const auto r = model == 0 ? solve_adjustable(a, n, k) : solve_fixed(a, n, k);
        CHECK_FALSE(a.is_ambiguous());
        const auto [zeros, ones] = a.completions();
        CHECK(r.answer == majority(zeros));
        CHECK(r.answer == majority(ones));
        CHECK(r.queries >= (n + k - 1) / k);
      }
    }
  }
}
