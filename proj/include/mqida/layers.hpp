#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mqida/qmi.hpp"

namespace mqida {

using QubitPair = std::pair<int, int>;

/// Descending thresholds applied to the max-normalized QMI matrix. The first
/// band is [1, ratios[0]] inclusive, band m >= 1 is [ratios[m], ratios[m-1]).
struct FinesseRatio {
  std::vector<double> ratios;

  void validate() const;
};

/// Entangling layers plus an optional nearest-neighbour closure layer.
struct LayerPlan {
  int n_qubits = 0;
  /// Pairs sorted ascending within each layer; layers in build order.
  std::vector<std::vector<QubitPair>> layers;
  bool has_closure = false;  // when true the last layer is the closure

  int n_entangler_layers() const {
    return static_cast<int>(layers.size()) - (has_closure ? 1 : 0);
  }
  int total_pairs() const;
  std::string to_text() const;
  static LayerPlan from_text(const std::string& text);
  void validate() const;
};

/// Greedy threshold-band layering over the normalized QMI matrix.
/// Connectivity is tested against the components at the start of each band;
/// pairs accepted in a band merge only when the band closes. Building stops
/// once every threshold is consumed or all sites are covered and connected.
LayerPlan build_layers(const QmiMatrix& qmi, const FinesseRatio& finesse);

/// Single-threshold variant: every pair at or above `threshold` (after
/// normalization) forms one layer.
LayerPlan single_threshold_qida(const QmiMatrix& qmi, double threshold);

/// Append one nearest-neighbour ladder closure layer (0-1, 1-2, ...).
void append_closure(LayerPlan& plan);

/// Merge the given layer indices (ascending, contiguous) into one layer.
void merge_layers(LayerPlan& plan, const std::vector<int>& indices);

}  // namespace mqida
