#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>

// One-dimensional k-selection, in place.
//
// select_k_smallest permutes the input so that the k smallest values occupy
// the prefix [0, k).  The default pivot rule draws random pivots and falls
// back to median-of-medians once the recursion stops making progress
// (introselect); PivotRule::median_of_medians forces the deterministic
// worst-case-linear path from the start.

namespace xytopk {

enum class PivotRule {
  introspective,      // random pivots, median-of-medians fallback
  median_of_medians,  // deterministic, worst-case linear
};

// View of an array partitioned at `split`: every element before the split
// compares <= every element at or after it.
template <typename T>
struct Partitioned {
  std::span<T> data;
  std::size_t split;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

template <typename T, typename Compare>
void insertion_sort(T* a, std::size_t lo, std::size_t hi, Compare& comp) {
  for (std::size_t i = lo + 1; i < hi; ++i) {
    T v = std::move(a[i]);
    std::size_t j = i;
    for (; j > lo && comp(v, a[j - 1]); --j) a[j] = std::move(a[j - 1]);
    a[j] = std::move(v);
  }
}

// Dutch-flag partition around the value at pivot_index.  Returns [lt, gt),
// the final positions of the values equal to the pivot; both sub-windows
// are strictly smaller than [lo, hi).
template <typename T, typename Compare>
std::pair<std::size_t, std::size_t> three_way_partition(T* a, std::size_t lo,
                                                        std::size_t hi,
                                                        std::size_t pivot_index,
                                                        Compare& comp) {
  using std::swap;
  const T pivot = a[pivot_index];
  std::size_t lt = lo, i = lo, gt = hi;
  while (i < gt) {
    if (comp(a[i], pivot)) {
      swap(a[lt], a[i]);
      ++lt;
      ++i;
    } else if (comp(pivot, a[i])) {
      --gt;
      swap(a[i], a[gt]);
    } else {
      ++i;
    }
  }
  return {lt, gt};
}

template <typename T, typename Compare>
void select_loop(T* a, std::size_t lo, std::size_t hi, std::size_t target,
                 PivotRule rule, Compare& comp);

// Groups of five: each group's median is swapped into the prefix of the
// window, then the median of that prefix is found recursively.  Guarantees
// the classic 30/70 split.
template <typename T, typename Compare>
std::size_t median_of_medians_index(T* a, std::size_t lo, std::size_t hi,
                                    Compare& comp) {
  const std::size_t n = hi - lo;
  if (n <= 5) {
    insertion_sort(a, lo, hi, comp);
    return lo + n / 2;
  }
  std::size_t groups = 0;
  for (std::size_t g = lo; g < hi; g += 5) {
    const std::size_t ge = std::min(g + 5, hi);
    insertion_sort(a, g, ge, comp);
    std::swap(a[lo + groups], a[g + (ge - g) / 2]);
    ++groups;
  }
  const std::size_t mid = lo + groups / 2;
  select_loop(a, lo, lo + groups, mid, PivotRule::median_of_medians, comp);
  return mid;
}

template <typename T, typename Compare>
void select_loop(T* a, std::size_t lo, std::size_t hi, std::size_t target,
                 PivotRule rule, Compare& comp) {
  constexpr std::size_t kSmallWindow = 24;
  std::uint64_t rng = 0x5def3b0ae7e57b11ull ^ static_cast<std::uint64_t>(hi - lo);
  int budget = 2 * std::bit_width(static_cast<std::uint64_t>(hi - lo)) + 8;
  while (hi - lo > kSmallWindow) {
    std::size_t pivot_index;
    if (rule == PivotRule::median_of_medians) {
      pivot_index = median_of_medians_index(a, lo, hi, comp);
    } else if (budget-- <= 0) {
      rule = PivotRule::median_of_medians;
      continue;
    } else {
      pivot_index = lo + splitmix64(rng) % (hi - lo);
    }
    const auto [lt, gt] = three_way_partition(a, lo, hi, pivot_index, comp);
    if (target < lt) {
      hi = lt;
    } else if (target >= gt) {
      lo = gt;
    } else {
      return;  // target landed inside the pivot's equal run
    }
  }
  insertion_sort(a, lo, hi, comp);
}

}  // namespace detail

// Permutes `data` so its k smallest values (as a multiset, ties broken
// arbitrarily) occupy positions [0, k).  k == 0 and k == data.size() are
// legal no-ops.  Throws std::out_of_range for k > data.size().
template <typename T, typename Compare = std::less<T>>
Partitioned<T> select_k_smallest(std::span<T> data, std::size_t k,
                                 PivotRule rule = PivotRule::introspective,
                                 Compare comp = {}) {
  if (k > data.size()) {
    throw std::out_of_range("select_k_smallest: k exceeds array length");
  }
  if (k > 0 && k < data.size()) {
    detail::select_loop(data.data(), std::size_t{0}, data.size(), k, rule, comp);
  }
  return {data, k};
}

// k-th order statistic, 1-indexed.  Permutes `data` as a side effect.
template <typename T, typename Compare = std::less<T>>
T kth_smallest_value(std::span<T> data, std::size_t k,
                     PivotRule rule = PivotRule::introspective,
                     Compare comp = {}) {
  if (k == 0 || k > data.size()) {
    throw std::out_of_range("kth_smallest_value: k out of range");
  }
  select_k_smallest(data, k, rule, comp);
  std::size_t best = 0;
  for (std::size_t i = 1; i < k; ++i) {
    if (comp(data[best], data[i])) best = i;
  }
  return data[best];
}

}  // namespace xytopk
