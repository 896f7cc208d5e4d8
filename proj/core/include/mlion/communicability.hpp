#pragma once

#include <cstddef>
#include <optional>

#include "mlion/network.hpp"
#include "mlion/partition.hpp"

namespace mlion {

// Matrix exponential. Symmetric input goes through an orthogonal
// eigendecomposition; anything else through scaling and squaring with a
// degree-13 Pade approximant. Throws ArgumentError on non-finite input.
Matrix expm(const Matrix& m);
Matrix expm_symmetric(const Matrix& m);
Matrix expm_general(const Matrix& m);

enum class CommunicabilityMode { binary, weighted };

// G = exp(A) or exp(W_bar) over the supra matrix.
struct CommunicabilityField {
  Matrix g;
  CommunicabilityMode mode = CommunicabilityMode::binary;
  Dims dims;
  // The matrix that was exponentiated was symmetric.
  bool symmetric_source = false;
};

// binary:   exp of binarize(net).
// weighted: exp of normalize_strength(net, directed); for a symmetric input
//           that coincides with the symmetric normalization.
CommunicabilityField communicability(const MultilayerNetwork& net, CommunicabilityMode mode);

// Wraps an already-computed exponential (e.g. from a pre-normalized matrix).
CommunicabilityField field_from_matrix(Matrix g, Dims dims, bool symmetric_source,
                                       CommunicabilityMode mode = CommunicabilityMode::weighted);

// nullopt selects all layers.
using LayerSelector = std::optional<std::size_t>;
inline constexpr LayerSelector kAllLayers = std::nullopt;

// sum_j G^[b,a]_{ji}: walks arriving at (node, layer) from layer b (or all layers).
double receive_centrality(const CommunicabilityField& field, std::size_t node, std::size_t layer,
                          LayerSelector from_layer = kAllLayers);
// sum_j G^[a,b]_{ij}: walks leaving (node, layer) towards layer b (or all layers).
double broadcast_centrality(const CommunicabilityField& field, std::size_t node,
                            std::size_t layer, LayerSelector to_layer = kAllLayers);

// Totals for every cell, supra order.
Vector receive_totals(const CommunicabilityField& field);
Vector broadcast_totals(const CommunicabilityField& field);

enum class MeanConvention {
  // Row means over all NL entries, global mean over all NL^2 (self distances
  // included). Makes the cohesion matrix sum to zero.
  all_entries,
  // Row means over the NL-1 other cells, global mean over off-diagonal pairs.
  exclude_self,
};

struct DistanceField {
  Matrix xi;
  Vector row_means;
  double global_mean = 0.0;

  std::size_t size() const noexcept { return static_cast<std::size_t>(xi.rows()); }
};

// xi_ab = G_aa - 2 G_ab + G_bb. Requires a symmetric source (ContractError).
DistanceField distance_field(const CommunicabilityField& field,
                             MeanConvention convention = MeanConvention::all_entries);

// row_mean(a) + row_mean(b) - xi_ab - global_mean.
double cohesion(const DistanceField& dist, std::size_t cell_a, std::size_t cell_b);

// Sum of cohesion over all ordered pairs (self pairs included) sharing a community.
double quality(const DistanceField& dist, const Partition& partition);

}  // namespace mlion
