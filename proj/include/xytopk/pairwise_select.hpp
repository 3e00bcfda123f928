#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "xytopk/loh.hpp"

// Top-k selection on the Cartesian sum X+Y.
//
// Both inputs are LOHified, then layer products X^(u)+Y^(v) are traversed
// through their corner tuples only: the minimum corner of a product and the
// maximum corner.  A binary min-heap of corners (the frontier) is popped in
// lexicographic order; whenever a max corner comes off the heap its whole
// product is committed to the candidate list q.  Once the committed element
// count reaches k (phase 1), the max corners still waiting in the heap are
// committed as well (phase 2), q is inflated into one contiguous buffer, and
// a linear-time one-dimensional selection extracts the k smallest (phase 3).

namespace xytopk {

// Min or max corner of layer product (u, v).  Orders lexicographically on
// (value, u, v, is_max); false < true, so a product's min corner always
// precedes its max corner.
template <typename T>
struct CornerTuple {
  T value{};
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  bool is_max = false;

  friend constexpr auto operator<=>(const CornerTuple&, const CornerTuple&) = default;
};

// Per-layer minima and maxima of one Loh, memoized so corner values cost
// O(1) instead of a layer scan per query.
template <typename T>
struct LayerExtrema {
  std::vector<T> mins;
  std::vector<T> maxs;

  std::size_t layer_count() const { return mins.size(); }
};

template <typename T>
LayerExtrema<T> compute_layer_extrema(const Loh<T>& loh) {
  LayerExtrema<T> e;
  e.mins.reserve(loh.layer_count());
  e.maxs.reserve(loh.layer_count());
  for (std::size_t u = 1; u <= loh.layer_count(); ++u) {
    e.mins.push_back(loh.layer_min(u));
    e.maxs.push_back(loh.layer_max(u));
  }
  return e;
}

template <typename T>
CornerTuple<T> min_corner(const LayerExtrema<T>& x, const LayerExtrema<T>& y,
                          std::uint32_t u, std::uint32_t v) {
  return {static_cast<T>(x.mins[u - 1] + y.mins[v - 1]), u, v, false};
}

template <typename T>
CornerTuple<T> max_corner(const LayerExtrema<T>& x, const LayerExtrema<T>& y,
                          std::uint32_t u, std::uint32_t v) {
  return {static_cast<T>(x.maxs[u - 1] + y.maxs[v - 1]), u, v, true};
}

// Binary min-heap of corner tuples plus a membership set, so no
// (u, v, is_max) triple is ever inserted twice.
template <typename T>
class FrontierState {
 public:
  // Returns false (and inserts nothing) if this triple was pushed before.
  bool push(const CornerTuple<T>& t) {
    if (!seen_.insert(key(t)).second) return false;
    heap_.push_back(t);
    std::push_heap(heap_.begin(), heap_.end(), std::greater<>{});
    return true;
  }

  CornerTuple<T> pop_min() {
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<>{});
    CornerTuple<T> t = heap_.back();
    heap_.pop_back();
    return t;
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

  // Remaining tuples in heap order (not sorted); phase 2 scans these.
  std::span<const CornerTuple<T>> entries() const { return heap_; }

 private:
  static std::uint64_t key(const CornerTuple<T>& t) {
    return (static_cast<std::uint64_t>(t.u) << 33) |
           (static_cast<std::uint64_t>(t.v) << 1) |
           static_cast<std::uint64_t>(t.is_max);
  }

  std::vector<CornerTuple<T>> heap_;
  std::unordered_set<std::uint64_t> seen_;
};

using LayerProduct = std::pair<std::uint32_t, std::uint32_t>;

// Instrumentation record of one selection run.  q and the s counters are
// maintained always (they drive phase 3); pop_sequence is recorded only
// when record_pops is set.
template <typename T>
struct SelectionTrace {
  std::vector<CornerTuple<T>> pop_sequence;
  std::vector<LayerProduct> q;
  std::size_t phase1_q_count = 0;            // q[0 : phase1_q_count) came from phase 1
  std::uint64_t s = 0;                       // elements committed during phase 1
  std::uint64_t s_prime = 0;                 // elements committed during phase 2
  std::uint64_t last_phase1_product_size = 0;
  bool record_pops = false;
};

template <typename T>
struct SelectionResult {
  std::vector<T> values;  // the k smallest sums, unordered unless sorting was requested
  std::optional<SelectionTrace<T>> trace;
};

struct SelectOptions {
  bool instrument = false;   // attach the trace (records the pop sequence)
  bool sort_values = false;  // sort the returned values, costs O(k log k)
  PivotRule pivot = PivotRule::introspective;
};

// Frontier expansion rule.  Popping a min corner releases the min corners of
// the two next-layer neighbors plus this product's own max corner; popping a
// max corner releases nothing.  Inserts are duplicate-checked; neighbors
// beyond the last layer are skipped.
template <typename T>
void phase1_expand(FrontierState<T>& state, const CornerTuple<T>& popped,
                   const LayerExtrema<T>& x, const LayerExtrema<T>& y) {
  if (popped.is_max) return;
  if (popped.u < x.layer_count()) state.push(min_corner(x, y, popped.u + 1, popped.v));
  if (popped.v < y.layer_count()) state.push(min_corner(x, y, popped.u, popped.v + 1));
  state.push(max_corner(x, y, popped.u, popped.v));
}

// Phase 1: pop corners in ascending order, committing a layer product each
// time its max corner surfaces, until the committed element count s reaches
// k.  The heap keeps its remaining tuples for phase 2.
template <typename T>
std::pair<FrontierState<T>, SelectionTrace<T>> run_phase1(const Loh<T>& x_loh,
                                                          const Loh<T>& y_loh,
                                                          std::size_t k,
                                                          bool record_pops = false) {
  const LayerExtrema<T> x = compute_layer_extrema(x_loh);
  const LayerExtrema<T> y = compute_layer_extrema(y_loh);

  FrontierState<T> state;
  SelectionTrace<T> trace;
  trace.record_pops = record_pops;
  state.push(min_corner(x, y, 1, 1));

  while (true) {
    if (state.empty()) {
      throw std::logic_error("run_phase1: frontier exhausted before s >= k");
    }
    const CornerTuple<T> popped = state.pop_min();
    if (record_pops) trace.pop_sequence.push_back(popped);
    if (popped.is_max) {
      trace.q.emplace_back(popped.u, popped.v);
      const std::uint64_t product_size =
          static_cast<std::uint64_t>(x_loh.layer_size(popped.u)) * y_loh.layer_size(popped.v);
      trace.s += product_size;
      trace.last_phase1_product_size = product_size;
      if (trace.s >= k) break;
    }
    phase1_expand(state, popped, x, y);
  }
  trace.phase1_q_count = trace.q.size();
  return {std::move(state), std::move(trace)};
}

// Phase 2: every max corner still waiting in the heap has its product
// committed; min corners are ignored.
template <typename T>
void run_phase2(FrontierState<T>& state, SelectionTrace<T>& trace,
                const Loh<T>& x_loh, const Loh<T>& y_loh) {
  for (const CornerTuple<T>& t : state.entries()) {
    if (!t.is_max) continue;
    trace.q.emplace_back(t.u, t.v);
    trace.s_prime +=
        static_cast<std::uint64_t>(x_loh.layer_size(t.u)) * y_loh.layer_size(t.v);
  }
}

// Phase 3: inflate every committed layer product into one contiguous buffer
// and k-select it.  The products in q must jointly hold at least k elements.
template <typename T>
std::vector<T> run_phase3(const Loh<T>& x_loh, const Loh<T>& y_loh,
                          const std::vector<LayerProduct>& q, std::size_t k,
                          PivotRule rule = PivotRule::introspective) {
  std::uint64_t total = 0;
  for (const auto& [u, v] : q) {
    total += static_cast<std::uint64_t>(x_loh.layer_size(u)) * y_loh.layer_size(v);
  }
  if (total < k) {
    throw std::logic_error("run_phase3: committed products hold fewer than k elements");
  }
  std::vector<T> pool;
  pool.reserve(total);
  for (const auto& [u, v] : q) {
    for (const T& a : x_loh.layer(u)) {
      for (const T& b : y_loh.layer(v)) {
        pool.push_back(static_cast<T>(a + b));
      }
    }
  }
  select_k_smallest(std::span<T>(pool), k, rule);
  pool.resize(k);
  return pool;
}

// Selection over prebuilt LOHs; lets callers time LOHification separately.
template <typename T>
SelectionResult<T> select_from_lohs(const Loh<T>& x_loh, const Loh<T>& y_loh,
                                    std::size_t k, SelectOptions opts = {}) {
  if (x_loh.size() == 0 || y_loh.size() == 0) {
    throw std::invalid_argument("select_from_lohs: empty input");
  }
  SelectionResult<T> result;
  if (k == 0) return result;
  const std::uint64_t total = static_cast<std::uint64_t>(x_loh.size()) * y_loh.size();
  if (k > total) {
    throw std::out_of_range("select_from_lohs: k exceeds the number of pairs");
  }

  auto [state, trace] = run_phase1(x_loh, y_loh, k, opts.instrument);
  run_phase2(state, trace, x_loh, y_loh);
  result.values = run_phase3(x_loh, y_loh, trace.q, k, opts.pivot);
  if (opts.sort_values) std::sort(result.values.begin(), result.values.end());
  if (opts.instrument) result.trace = std::move(trace);
  return result;
}

// The k smallest values of {x_i + y_j}, as an unordered multiset.
template <typename T>
SelectionResult<T> select_cartesian_k(std::span<const T> x, std::span<const T> y,
                                      std::size_t k, LohConfig config = {},
                                      SelectOptions opts = {}) {
  if (x.empty() || y.empty()) {
    throw std::invalid_argument("select_cartesian_k: empty input");
  }
  if (k == 0) return {};
  if (k > static_cast<std::uint64_t>(x.size()) * y.size()) {
    throw std::out_of_range("select_cartesian_k: k exceeds the number of pairs");
  }
  const Loh<T> x_loh = lohify(std::vector<T>(x.begin(), x.end()), config, opts.pivot);
  const Loh<T> y_loh = lohify(std::vector<T>(y.begin(), y.end()), config, opts.pivot);
  return select_from_lohs(x_loh, y_loh, k, opts);
}

}  // namespace xytopk
