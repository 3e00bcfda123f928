#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "xytopk/pairwise_select.hpp"

// Reference methods: the naive materialize-and-sort baseline, and a
// simplified variant that sorts all layer-product corners upfront instead of
// maintaining a frontier heap.  Both agree with select_cartesian_k on every
// instance; the benchmark harness leans on that.

namespace xytopk {

// Materializes all n_x * n_y sums and fully sorts them.  Deliberately the
// O(n^2 log n + k) baseline, not a selection.
template <typename T>
SelectionResult<T> naive_select(std::span<const T> x, std::span<const T> y,
                                std::size_t k) {
  if (x.empty() || y.empty()) {
    throw std::invalid_argument("naive_select: empty input");
  }
  if (k == 0) return {};
  if (k > static_cast<std::uint64_t>(x.size()) * y.size()) {
    throw std::out_of_range("naive_select: k exceeds the number of pairs");
  }
  SelectionResult<T> result;
  result.values.reserve(x.size() * y.size());
  for (const T& a : x) {
    for (const T& b : y) {
      result.values.push_back(static_cast<T>(a + b));
    }
  }
  std::sort(result.values.begin(), result.values.end());
  result.values.resize(k);
  return result;
}

// Min and max corners of every layer product: exactly 2 * L_x * L_y tuples.
template <typename T>
std::vector<CornerTuple<T>> make_all_corners(const Loh<T>& x_loh, const Loh<T>& y_loh) {
  const LayerExtrema<T> x = compute_layer_extrema(x_loh);
  const LayerExtrema<T> y = compute_layer_extrema(y_loh);
  std::vector<CornerTuple<T>> corners;
  corners.reserve(2 * x.layer_count() * y.layer_count());
  for (std::uint32_t u = 1; u <= x.layer_count(); ++u) {
    for (std::uint32_t v = 1; v <= y.layer_count(); ++v) {
      corners.push_back(min_corner(x, y, u, v));
      corners.push_back(max_corner(x, y, u, v));
    }
  }
  return corners;
}

// Sort-all-corners variant: LOHify, sort the full corner list, scan it
// accumulating product sizes at max corners until the total reaches k, then
// commit every product whose min corner preceded the stopping max corner.
// Shares the phase-3 inflation and selection with the frontier method.
template <typename T>
SelectionResult<T> simplified_select(std::span<const T> x, std::span<const T> y,
                                     std::size_t k, LohConfig config = {},
                                     PivotRule rule = PivotRule::introspective) {
  if (x.empty() || y.empty()) {
    throw std::invalid_argument("simplified_select: empty input");
  }
  if (k == 0) return {};
  if (k > static_cast<std::uint64_t>(x.size()) * y.size()) {
    throw std::out_of_range("simplified_select: k exceeds the number of pairs");
  }

  const Loh<T> x_loh = lohify(std::vector<T>(x.begin(), x.end()), config, rule);
  const Loh<T> y_loh = lohify(std::vector<T>(y.begin(), y.end()), config, rule);

  std::vector<CornerTuple<T>> corners = make_all_corners(x_loh, y_loh);
  std::sort(corners.begin(), corners.end());

  std::uint64_t committed = 0;
  std::size_t stop = corners.size();
  for (std::size_t i = 0; i < corners.size(); ++i) {
    if (!corners[i].is_max) continue;
    committed += static_cast<std::uint64_t>(x_loh.layer_size(corners[i].u)) *
                 y_loh.layer_size(corners[i].v);
    if (committed >= k) {
      stop = i;
      break;
    }
  }
  // k <= n_x * n_y, so the accumulated sizes must reach k before the scan ends.
  if (stop == corners.size()) {
    throw std::logic_error("simplified_select: corner scan never reached k");
  }

  std::vector<LayerProduct> q;
  for (std::size_t i = 0; i < stop; ++i) {
    if (!corners[i].is_max) q.emplace_back(corners[i].u, corners[i].v);
  }
  SelectionResult<T> result;
  result.values = run_phase3(x_loh, y_loh, q, k, rule);
  return result;
}

}  // namespace xytopk
