#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "xytopk/linear_select.hpp"

// Layer-ordered heaps: a contiguous array partitioned into layers where
// every value in layer u compares <= every value in layer u+1.  Layers are
// not internally sorted.  Layer sizes follow ceil(alpha^u) with the final
// layer truncated, so the first layer always has size 1 and consecutive
// sizes grow geometrically.

namespace xytopk {

struct LohConfig {
  double alpha = 2.0;  // layer growth rate, strictly > 1
};

// Layer size schedule for n elements: ceil(alpha^u), clamped so the running
// total never exceeds n.  alpha == 1 would mean size-1 layers everywhere,
// i.e. a full sort, so it is rejected.
inline std::vector<std::size_t> layer_sizes(std::size_t n, double alpha) {
  if (!(alpha > 1.0)) {
    throw std::invalid_argument("layer_sizes: alpha must be > 1");
  }
  std::vector<std::size_t> sizes;
  std::size_t remaining = n;
  for (std::size_t u = 0; remaining > 0; ++u) {
    const double want = std::ceil(std::pow(alpha, static_cast<double>(u)));
    const std::size_t sz = (want >= static_cast<double>(remaining))
                               ? remaining
                               : static_cast<std::size_t>(want);
    sizes.push_back(sz);
    remaining -= sz;
  }
  return sizes;
}

template <typename T>
class Loh;

template <typename T, typename Compare = std::less<T>>
Loh<T> lohify(std::vector<T> data, LohConfig config,
              PivotRule rule = PivotRule::introspective, Compare comp = {});

// Immutable after construction; build one with lohify().  Layer indices are
// 1-based throughout.
template <typename T>
class Loh {
 public:
  Loh() = default;

  std::size_t size() const { return data_.size(); }
  std::size_t layer_count() const { return boundaries_.size() - 1; }
  std::span<const T> values() const { return data_; }
  const std::vector<std::size_t>& boundaries() const { return boundaries_; }

  std::span<const T> layer(std::size_t u) const {
    check_layer(u);
    return std::span<const T>(data_).subspan(boundaries_[u - 1],
                                             boundaries_[u] - boundaries_[u - 1]);
  }

  std::size_t layer_size(std::size_t u) const {
    check_layer(u);
    return boundaries_[u] - boundaries_[u - 1];
  }

  // O(layer size) scan; callers that query repeatedly should memoize.
  const T& layer_min(std::size_t u) const { return extremum(u, /*want_max=*/false); }
  const T& layer_max(std::size_t u) const { return extremum(u, /*want_max=*/true); }

 private:
  template <typename U, typename C>
  friend Loh<U> lohify(std::vector<U>, LohConfig, PivotRule, C);

  Loh(std::vector<T> data, std::vector<std::size_t> boundaries)
      : data_(std::move(data)), boundaries_(std::move(boundaries)) {}

  void check_layer(std::size_t u) const {
    if (u == 0 || u > layer_count()) {
      throw std::out_of_range("Loh: layer index out of range");
    }
  }

  const T& extremum(std::size_t u, bool want_max) const {
    check_layer(u);
    std::size_t best = boundaries_[u - 1];
    for (std::size_t i = best + 1; i < boundaries_[u]; ++i) {
      const bool better = want_max ? (data_[best] < data_[i]) : (data_[i] < data_[best]);
      if (better) best = i;
    }
    return data_[best];
  }

  std::vector<T> data_;
  std::vector<std::size_t> boundaries_{0};  // b_0 = 0 < b_1 < ... < b_L = n
};

// Builds a Loh over a permutation of `data` by carving off the largest
// remaining layer from the tail with select_k_smallest.  The active window
// shrinks geometrically, so total work is linear for constant alpha.
template <typename T, typename Compare>
Loh<T> lohify(std::vector<T> data, LohConfig config, PivotRule rule,
              Compare comp) {
  if constexpr (std::is_floating_point_v<T>) {
    for (const T& v : data) {
      if (std::isnan(v)) throw std::invalid_argument("lohify: NaN rejected");
    }
  }
  const auto sizes = layer_sizes(data.size(), config.alpha);
  std::vector<std::size_t> bounds(sizes.size() + 1, 0);
  for (std::size_t u = 0; u < sizes.size(); ++u) bounds[u + 1] = bounds[u] + sizes[u];

  std::size_t active = data.size();
  for (std::size_t u = sizes.size(); u >= 2; --u) {
    const std::size_t split = bounds[u - 1];
    select_k_smallest(std::span<T>(data.data(), active), split, rule, comp);
    active = split;
  }
  return Loh<T>(std::move(data), std::move(bounds));
}

}  // namespace xytopk
