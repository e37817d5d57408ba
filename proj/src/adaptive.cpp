#include "majq/adaptive.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

namespace majq {

namespace {

std::size_t ceil_log2_plus1(std::size_t k) {
  // ceil(log2(k + 1)) == bit width of k
  return static_cast<std::size_t>(std::bit_width(k));
}

void check_solver_args(const oracle& o, std::size_t n, std::size_t k) {
  if (k == 0 || k > n) {
    throw precondition_error("need 1 <= k <= n, got n = " + std::to_string(n) + ", k = " + std::to_string(k));
  }
  if (o.n() != n) {
    throw precondition_error("oracle holds " + std::to_string(o.n()) + " bits, solver asked for n = " +
                             std::to_string(n));
  }
  if (o.k() < k) {
    throw precondition_error("oracle accepts sets of size " + std::to_string(o.k()) + " < k = " +
                             std::to_string(k));
  }
}

} // namespace

std::string to_string(const index_set& s) {
  std::string out = "{";
  for (std::size_t pos = 0; pos < s.size(); ++pos) {
    if (pos != 0) {
      out += ',';
    }
    out += std::to_string(s[pos]);
  }
  return out + "}";
}

std::vector<index_set> block_partition(std::size_t n, std::size_t k) {
  if (k == 0 || k > n) {
    throw precondition_error("block_partition needs 1 <= k <= n, got n = " + std::to_string(n) +
                             ", k = " + std::to_string(k));
  }
  const std::size_t r = (n + k - 1) / k;
  const std::size_t l = (n + r - 1) / r;
  const std::size_t large = n - r * (l - 1);
  std::vector<index_set> blocks;
  blocks.reserve(r);
  std::size_t first = 0;
  for (std::size_t b = 0; b < r; ++b) {
    const std::size_t size = b < large ? l : l - 1;
    blocks.push_back(index_set::range(first, first + size));
    first += size;
  }
  return blocks;
}

std::size_t adjustable_bound(std::size_t n, std::size_t k) {
  return ((n + k - 1) / k) * ceil_log2_plus1(k);
}

std::optional<double> fixed_bound(std::size_t n, std::size_t k) {
  if (k < 5) {
    return std::nullopt;
  }
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return 2.0 * (nd / (kd - 4.0) + 1.0) * (std::log2(kd) + 4.0);
}

solve_report solve_adjustable(oracle& o, std::size_t n, std::size_t k, bool trace) {
  check_solver_args(o, n, k);
  const std::size_t start = o.queries();
  solve_report report;
  std::size_t total = 0;
  for (const auto& b : block_partition(n, k)) {
    // Invariant: [sum_B >= lo] = 1 and [sum_B >= hi] = 0.
    std::int64_t lo = 0;
    std::int64_t hi = static_cast<std::int64_t>(b.size()) + 1;
    while (hi - lo > 1) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (o.query_adjustable(b, mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    total += static_cast<std::size_t>(lo);
    if (trace) {
      report.trace.push_back("block " + to_string(b) + ": sum = " + std::to_string(lo));
    }
  }
  report.answer = 2 * total >= n;
  report.queries = o.queries() - start;
  report.bound = static_cast<double>(adjustable_bound(n, k));
  return report;
}

// ---------------------------------------------------------------------------

index_set find_balanced_set(oracle& o, std::span<const std::size_t> a, std::span<const std::size_t> b, bool fa,
                            bool fb, bool prefer_large) {
  const std::size_t c = a.size();
  if (c == 0 || b.size() != c) {
    throw precondition_error("find_balanced_set needs two non-empty sets of equal size");
  }
  if (fa == fb) {
    throw precondition_error("find_balanced_set needs opposite majorities on A and B");
  }
  {
    std::vector<std::size_t> all(a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
      throw precondition_error("find_balanced_set needs disjoint sets");
    }
  }

  // 1-based positions: 1..c are A, c+1..2c are B.
  const auto at = [&](std::size_t m) { return m <= c ? a[m - 1] : b[m - c - 1]; };
  const auto span_of = [&](std::size_t first, std::size_t last) {
    std::vector<std::size_t> out;
    out.reserve(last - first + 1);
    for (std::size_t m = first; m <= last; ++m) {
      out.push_back(at(m));
    }
    return index_set::from_unsorted(std::move(out));
  };

  // Invariant: window lo answers fa, window hi answers fb.
  std::size_t lo = 1;
  std::size_t hi = c + 1;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (o.query_fixed(span_of(mid, mid + c - 1)) == fa) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const std::size_t h = lo;

  if (c % 2 == 0) {
    const std::size_t first = h + 1 - (fa ? 1 : 0);
    return span_of(first, first + c - 1);
  }
  if (prefer_large) {
    return span_of(h, h + c);
  }
  if (c == 1) {
    return {};
  }
  return span_of(h + 1, h + c - 1);
}

// ---------------------------------------------------------------------------

const char* rule_name(engine_rule r) {
  switch (r) {
  case engine_rule::mixed: return "P0 mixed";
  case engine_rule::cancel: return "P1 cancel";
  case engine_rule::case2: return "P2 case2";
  case engine_rule::case1: return "P3 case1";
  case engine_rule::absorb: return "P4 absorb";
  case engine_rule::rebalance: return "P5 rebalance";
  }
  return "?";
}

index_set engine_state::active() const {
  std::vector<std::size_t> all;
  for (const auto& b : blocks) {
    all.insert(all.end(), b.indices.begin(), b.indices.end());
  }
  return index_set::from_unsorted(std::move(all));
}

bool engine_state::done() const {
  return std::all_of(blocks.begin(), blocks.end(),
                     [&](const block& b) { return b.answer == blocks.front().answer; });
}

bool engine_state::answer() const {
  // Every removed set had sum exactly half its size, so with nothing left
  // sum(x) = n/2 and the inclusive tie rule gives 1.
  return blocks.empty() ? true : blocks.front().answer;
}

std::size_t step_limit(std::size_t n, std::size_t k) {
  return 16 * n * (ceil_log2_plus1(k) + 2);
}

engine_state engine_start(oracle& o, std::size_t n, std::size_t k) {
  check_solver_args(o, n, k);
  engine_state s;
  s.n = n;
  s.k = k;
  s.known.assign(n, -1);
  for (auto& b : block_partition(n, k)) {
    const bool answer = o.query_fixed(b);
    if (b.size() == 1) {
      s.known[b.front()] = answer ? 1 : 0;
    }
    s.blocks.push_back({std::move(b), answer});
  }
  return s;
}

namespace {

class engine {
public:
  engine(engine_state& s, oracle& o) : s_(s), o_(o), start_queries_(o.queries()) {}

  engine_step run() {
    if (s_.done()) {
      throw precondition_error("engine_advance called on a finished state");
    }
    if (!(mixed() || cancel() || case2() || case1() || absorb() || rebalance())) {
      throw error("no engine rule applies; known bits are inconsistent");
    }
    std::sort(s_.blocks.begin(), s_.blocks.end(),
              [](const block& x, const block& y) { return x.indices.front() < y.indices.front(); });
    ++s_.steps;
    step_.queries = o_.queries() - start_queries_;
    check_invariants();
    return std::move(step_);
  }

private:
  using pair_key = std::tuple<std::size_t, std::size_t>;

  static pair_key key_of(const block& p, const block& q) {
    return {std::max(p.indices.size(), q.indices.size()), std::min(p.indices.front(), q.indices.front())};
  }

  int known(std::size_t i) const { return s_.known[i]; }

  // Value shared by every member when all members are known and equal.
  std::optional<bool> uniform_value(const block& b) const {
    const int first = known(b.indices.front());
    if (first < 0) {
      return std::nullopt;
    }
    for (auto i : b.indices) {
      if (known(i) != first) {
        return std::nullopt;
      }
    }
    return first == 1;
  }

  void learn(std::size_t i, bool value) { s_.known[i] = value ? 1 : 0; }

  void remove_balanced(const index_set& r) {
    if (!r.empty()) {
      s_.removed_balanced += r.size();
      step_.removed.push_back(r);
    }
  }

  // Erases blocks by position, highest first.
  void erase(std::size_t p, std::size_t q) {
    if (p < q) {
      std::swap(p, q);
    }
    s_.blocks.erase(s_.blocks.begin() + static_cast<std::ptrdiff_t>(p));
    if (q != p) {
      s_.blocks.erase(s_.blocks.begin() + static_cast<std::ptrdiff_t>(q));
    }
  }

  void insert(index_set indices, bool answer) {
    if (indices.size() == 1) {
      learn(indices.front(), answer);
    }
    s_.blocks.push_back({std::move(indices), answer});
  }

  // Queries and inserts a remainder block; empty remainders are dropped.
  void insert_queried(index_set indices) {
    if (indices.empty()) {
      return;
    }
    const bool answer = o_.query_fixed(indices);
    note("queried " + to_string(indices) + " -> " + std::to_string(answer));
    insert(std::move(indices), answer);
  }

  void note(const std::string& text) {
    if (!step_.description.empty()) {
      step_.description += "; ";
    }
    step_.description += text;
  }

  void begin(engine_rule rule) { step_.rule = rule; }

  // P0. Dropping one known 1 and one known 0 keeps [2 sum >= size] intact.
  bool mixed() {
    for (std::size_t p = 0; p < s_.blocks.size(); ++p) {
      auto& b = s_.blocks[p];
      std::optional<std::size_t> one, zero;
      for (auto i : b.indices) {
        if (known(i) == 1 && !one) {
          one = i;
        }
        if (known(i) == 0 && !zero) {
          zero = i;
        }
      }
      if (!one || !zero) {
        continue;
      }
      begin(engine_rule::mixed);
      const auto pair = index_set::from_unsorted({*one, *zero});
      remove_balanced(pair);
      note("dropped known pair " + to_string(pair) + " from " + to_string(b.indices));
      b.indices = set_difference(b.indices, pair);
      if (b.indices.empty()) {
        s_.blocks.erase(s_.blocks.begin() + static_cast<std::ptrdiff_t>(p));
      } else if (b.indices.size() == 1) {
        learn(b.indices.front(), b.answer);
      }
      return true;
    }
    return false;
  }

  // P1. Fully known uniform blocks of opposite value: j ones and j zeros.
  bool cancel() {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    pair_key best_key{};
    for (std::size_t p = 0; p < s_.blocks.size(); ++p) {
      const auto vp = uniform_value(s_.blocks[p]);
      if (!vp) {
        continue;
      }
      for (std::size_t q = p + 1; q < s_.blocks.size(); ++q) {
        const auto vq = uniform_value(s_.blocks[q]);
        if (!vq || *vq == *vp) {
          continue;
        }
        const auto key = key_of(s_.blocks[p], s_.blocks[q]);
        if (!best || key < best_key) {
          best = {p, q};
          best_key = key;
        }
      }
    }
    if (!best) {
      return false;
    }
    begin(engine_rule::cancel);
    auto& bp = s_.blocks[best->first];
    auto& bq = s_.blocks[best->second];
    const std::size_t j = std::min(bp.indices.size(), bq.indices.size());
    std::vector<std::size_t> taken;
    taken.insert(taken.end(), bp.indices.begin(), bp.indices.begin() + static_cast<std::ptrdiff_t>(j));
    taken.insert(taken.end(), bq.indices.begin(), bq.indices.begin() + static_cast<std::ptrdiff_t>(j));
    const auto gone = index_set::from_unsorted(std::move(taken));
    remove_balanced(gone);
    note("cancelled " + to_string(gone));
    bp.indices = set_difference(bp.indices, gone);
    bq.indices = set_difference(bq.indices, gone);
    std::erase_if(s_.blocks, [](const block& b) { return b.indices.empty(); });
    return true;
  }

  // Best pair of opposite answers accepted by `fits(p, q)`.
  template <class Fits>
  std::optional<std::pair<std::size_t, std::size_t>> pick_pair(Fits fits) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    pair_key best_key{};
    for (std::size_t p = 0; p < s_.blocks.size(); ++p) {
      for (std::size_t q = 0; q < s_.blocks.size(); ++q) {
        if (p == q || s_.blocks[p].answer == s_.blocks[q].answer || !fits(s_.blocks[p], s_.blocks[q])) {
          continue;
        }
        const auto key = key_of(s_.blocks[p], s_.blocks[q]);
        if (!best || key < best_key) {
          best = {p, q};
          best_key = key;
        }
      }
    }
    return best;
  }

  // P2. Equal sizes c >= 2. The remainder has c (even c), c + 1 or c - 1
  // (odd c, large variant when c + 1 would exceed k) members.
  bool case2() {
    const auto pick = pick_pair([](const block& p, const block& q) {
      return p.indices.size() == q.indices.size() && p.indices.size() >= 2 &&
             p.indices.front() < q.indices.front();
    });
    if (!pick) {
      return false;
    }
    begin(engine_rule::case2);
    const block a = s_.blocks[pick->first];
    const block b = s_.blocks[pick->second];
    const std::size_t c = a.indices.size();
    const bool large = c % 2 == 1 && c + 1 > s_.k;
    const auto av = a.indices.to_vector();
    const auto bv = b.indices.to_vector();
    const auto balanced = find_balanced_set(o_, av, bv, a.answer, b.answer, large);
    note("balanced " + to_string(balanced) + " from " + to_string(a.indices) + " vs " + to_string(b.indices));
    erase(pick->first, pick->second);
    remove_balanced(balanced);
    insert_queried(set_difference(set_union(a.indices, b.indices), balanced));
    return true;
  }

  // Shared by P3 and P5 when dropping y from P flips the answer; then
  // x_y = a(P). For a(P) = 0: (c-1)/2 <= sum(P\y) < c/2, so c is odd and P\y
  // is balanced. For a(P) = 1: c/2 - 1 <= sum(P\y) < (c-1)/2, so c is even and
  // P itself is balanced.
  void flipped(std::size_t p_pos, const index_set& rest, std::size_t y) {
    const block p = s_.blocks[p_pos];
    const std::size_t c = p.indices.size();
    learn(y, p.answer);
    s_.blocks.erase(s_.blocks.begin() + static_cast<std::ptrdiff_t>(p_pos));
    if (!p.answer) {
      if (c % 2 == 0) {
        throw inconsistent_oracle("answer flipped from 0 on a block of even size " + std::to_string(c));
      }
      remove_balanced(rest);
      insert(index_set::single(y), false);
      note("flip: " + to_string(rest) + " balanced, x_" + std::to_string(y) + " = 0");
    } else {
      if (c % 2 == 1) {
        throw inconsistent_oracle("answer flipped from 1 on a block of odd size " + std::to_string(c));
      }
      remove_balanced(p.indices);
      note("flip: " + to_string(p.indices) + " balanced");
    }
  }

  // P3. |P| = c, |Q| = c - 1 >= 1.
  bool case1() {
    const auto pick = pick_pair([](const block& p, const block& q) {
      return q.indices.size() >= 1 && p.indices.size() == q.indices.size() + 1;
    });
    if (!pick) {
      return false;
    }
    begin(engine_rule::case1);
    const block p = s_.blocks[pick->first];
    const block q = s_.blocks[pick->second];
    const std::size_t c = p.indices.size();
    const std::size_t y = p.indices.back();
    const auto rest = set_difference(p.indices, index_set::single(y));
    const bool answer = o_.query_fixed(rest);
    note("queried " + to_string(rest) + " -> " + std::to_string(answer));
    if (answer != p.answer) {
      flipped(pick->first, rest, y);
      return true;
    }
    // rest and Q have size c - 1 and opposite answers. The remainder
    // (P u Q) \ S keeps y. With c - 1 odd the standard set leaves c + 1
    // members, so take the large set when that exceeds k or when c - 1 = 1
    // (two opposite known singletons balance outright).
    const std::size_t cc = c - 1;
    const bool large = cc % 2 == 1 && (c + 1 > s_.k || cc == 1);
    const auto av = rest.to_vector();
    const auto bv = q.indices.to_vector();
    const auto balanced = find_balanced_set(o_, av, bv, p.answer, q.answer, large);
    note("balanced " + to_string(balanced) + " from " + to_string(rest) + " vs " + to_string(q.indices));
    erase(pick->first, pick->second);
    remove_balanced(balanced);
    insert_queried(set_difference(set_union(p.indices, q.indices), balanced));
    return true;
  }

  // P4. Singleton {y} with bit v against Q with answer !v, 2 <= |Q| = c < k.
  // Query Q u {y}; with s = sum_Q:
  //   v = 1 (2s < c):   answer [2s >= c - 1]; 1 forces 2s = c - 1, so c is
  //                     odd and Q u {y} is balanced. 0: merge.
  //   v = 0 (2s >= c):  answer [2s >= c + 1]; 0 forces 2s = c, so c is even
  //                     and Q is balanced while {y} stays. 1: merge.
  bool absorb() {
    const auto pick = pick_pair([&](const block& p, const block& q) {
      return p.indices.size() == 1 && q.indices.size() >= 2 && q.indices.size() < s_.k;
    });
    if (!pick) {
      return false;
    }
    begin(engine_rule::absorb);
    const block single = s_.blocks[pick->first];
    const block q = s_.blocks[pick->second];
    const std::size_t c = q.indices.size();
    const bool v = single.answer;
    const auto merged = set_union(q.indices, single.indices);
    const bool answer = o_.query_fixed(merged);
    note("queried " + to_string(merged) + " -> " + std::to_string(answer));
    erase(pick->first, pick->second);
    if (answer == v) {
      if (v) {
        if (c % 2 == 0) {
          throw inconsistent_oracle("absorbing a 1 flipped a block of even size " + std::to_string(c));
        }
        remove_balanced(merged);
      } else {
        if (c % 2 == 1) {
          throw inconsistent_oracle("absorbing a 0 flipped a block of odd size " + std::to_string(c));
        }
        remove_balanced(q.indices);
        insert(single.indices, false);
      }
      return true;
    }
    insert(merged, answer);
    return true;
  }

  // P5. Largest block holding an unknown member y (the largest such index):
  // query P \ {y}; without a flip, also query {y}. Each call either removes
  // indices or learns a new bit.
  bool rebalance() {
    std::optional<std::size_t> best;
    for (std::size_t p = 0; p < s_.blocks.size(); ++p) {
      const auto& b = s_.blocks[p];
      const bool has_unknown =
          std::any_of(b.indices.begin(), b.indices.end(), [&](std::size_t i) { return known(i) < 0; });
      if (!has_unknown) {
        continue;
      }
      if (!best || b.indices.size() > s_.blocks[*best].indices.size() ||
          (b.indices.size() == s_.blocks[*best].indices.size() &&
           b.indices.front() < s_.blocks[*best].indices.front())) {
        best = p;
      }
    }
    if (!best) {
      return false;
    }
    begin(engine_rule::rebalance);
    const block p = s_.blocks[*best];
    std::size_t y = 0;
    for (auto i : p.indices) {
      if (known(i) < 0) {
        y = i;
      }
    }
    const auto rest = set_difference(p.indices, index_set::single(y));
    const bool answer = o_.query_fixed(rest);
    note("queried " + to_string(rest) + " -> " + std::to_string(answer));
    if (answer != p.answer) {
      flipped(*best, rest, y);
      return true;
    }
    s_.blocks[*best].indices = rest;
    if (rest.size() == 1) {
      learn(rest.front(), answer);
    }
    insert_queried(index_set::single(y));
    return true;
  }

  void check_invariants() const {
    std::vector<bool> seen(s_.n, false);
    std::size_t covered = 0;
    for (const auto& b : s_.blocks) {
      if (b.indices.empty() || b.indices.size() > s_.k) {
        throw error("engine produced a block of size " + std::to_string(b.indices.size()));
      }
      for (auto i : b.indices) {
        if (seen[i]) {
          throw error("engine blocks overlap at index " + std::to_string(i));
        }
        seen[i] = true;
      }
      covered += b.indices.size();
    }
    for (const auto& r : step_.removed) {
      for (auto i : r) {
        if (seen[i]) {
          throw error("removed index " + std::to_string(i) + " is still active");
        }
      }
    }
    if (covered + s_.removed_balanced != s_.n) {
      throw error("engine lost track of indices");
    }
  }

  engine_state& s_;
  oracle& o_;
  std::size_t start_queries_;
  engine_step step_;
};

} // namespace

engine_step engine_advance(engine_state& state, oracle& o) {
  return engine(state, o).run();
}

solve_report solve_fixed(oracle& o, std::size_t n, std::size_t k, const fixed_options& options) {
  check_solver_args(o, n, k);
  const std::size_t start = o.queries();
  auto state = engine_start(o, n, k);
  solve_report report;
  if (options.trace) {
    std::ostringstream line;
    line << "start:";
    for (const auto& b : state.blocks) {
      line << ' ' << to_string(b.indices) << "->" << b.answer;
    }
    report.trace.push_back(line.str());
  }
  const std::size_t limit = step_limit(n, k);
  while (!state.done()) {
    if (state.steps >= limit) {
      throw step_limit_exceeded("fixed-threshold engine exceeded " + std::to_string(limit) + " steps (n = " +
                                std::to_string(n) + ", k = " + std::to_string(k) + ")");
    }
    auto step = engine_advance(state, o);
    if (options.trace) {
      report.trace.push_back(std::string(rule_name(step.rule)) + ": " + step.description);
    }
    if (options.observer) {
      options.observer(state, step);
    }
  }
  report.answer = state.answer();
  report.queries = o.queries() - start;
  report.bound = fixed_bound(n, k);
  return report;
}

} // namespace majq
