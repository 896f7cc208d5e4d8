#include "mlion/communicability.hpp"

#include <vector>

#include "mlion/errors.hpp"

namespace mlion {

CommunicabilityField communicability(const MultilayerNetwork& net, CommunicabilityMode mode) {
  // Symmetric input takes the symmetric normalization: same values, but exact
  // symmetry survives the scaling so the spectral path applies.
  const Matrix source =
      mode == CommunicabilityMode::binary
          ? binarize(net).supra()
          : normalize_strength(net, is_symmetric(net.supra()) ? Normalization::symmetric
                                                              : Normalization::directed)
                .supra();
  const bool symmetric = is_symmetric(source);
  return {symmetric ? expm_symmetric(source) : expm_general(source), mode, net.dims(), symmetric};
}

CommunicabilityField field_from_matrix(Matrix g, Dims dims, bool symmetric_source,
                                       CommunicabilityMode mode) {
  const auto n = static_cast<Eigen::Index>(dims.cells());
  if (g.rows() != n || g.cols() != n) {
    throw ArgumentError("communicability matrix does not match network dimensions");
  }
  return {std::move(g), mode, dims, symmetric_source};
}

namespace {

void check_cell(const CommunicabilityField& field, std::size_t node, std::size_t layer,
                LayerSelector other) {
  (void)supra_index(node, layer, field.dims);
  if (other && *other >= field.dims.n_layers) {
    throw IndexError("layer " + std::to_string(*other) + " out of range");
  }
}

}  // namespace

double receive_centrality(const CommunicabilityField& field, std::size_t node, std::size_t layer,
                          LayerSelector from_layer) {
  check_cell(field, node, layer, from_layer);
  const auto N = static_cast<Eigen::Index>(field.dims.n_nodes);
  const auto col = static_cast<Eigen::Index>(supra_index(node, layer, field.dims).value);
  if (!from_layer) return field.g.col(col).sum();
  return field.g.col(col).segment(static_cast<Eigen::Index>(*from_layer) * N, N).sum();
}

double broadcast_centrality(const CommunicabilityField& field, std::size_t node,
                            std::size_t layer, LayerSelector to_layer) {
  check_cell(field, node, layer, to_layer);
  const auto N = static_cast<Eigen::Index>(field.dims.n_nodes);
  const auto row = static_cast<Eigen::Index>(supra_index(node, layer, field.dims).value);
  if (!to_layer) return field.g.row(row).sum();
  return field.g.row(row).segment(static_cast<Eigen::Index>(*to_layer) * N, N).sum();
}

Vector receive_totals(const CommunicabilityField& field) {
  return field.g.colwise().sum().transpose();
}

Vector broadcast_totals(const CommunicabilityField& field) { return field.g.rowwise().sum(); }

DistanceField distance_field(const CommunicabilityField& field, MeanConvention convention) {
  if (!field.symmetric_source) {
    throw ContractError("communicability distance needs a field built from a symmetric source");
  }
  const Matrix& g = field.g;
  const auto n = g.rows();
  DistanceField d;
  d.xi.resize(n, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    d.xi(b, b) = 0.0;
    for (Eigen::Index a = b + 1; a < n; ++a) {
      const double v = g(a, a) - 2.0 * g(a, b) + g(b, b);
      d.xi(a, b) = v;
      d.xi(b, a) = v;
    }
  }
  const double denom_row =
      convention == MeanConvention::all_entries ? static_cast<double>(n) : static_cast<double>(n - 1);
  d.row_means = d.xi.rowwise().sum();
  d.global_mean = d.row_means.sum();
  if (n > 1 || convention == MeanConvention::all_entries) {
    d.row_means /= denom_row;
    d.global_mean /= static_cast<double>(n) * denom_row;
  } else {
    d.row_means.setZero();
    d.global_mean = 0.0;
  }
  return d;
}

double cohesion(const DistanceField& dist, std::size_t cell_a, std::size_t cell_b) {
  const auto n = dist.size();
  if (cell_a >= n || cell_b >= n) throw IndexError("cohesion: cell index out of range");
  const auto a = static_cast<Eigen::Index>(cell_a);
  const auto b = static_cast<Eigen::Index>(cell_b);
  return dist.row_means(a) + dist.row_means(b) - dist.xi(a, b) - dist.global_mean;
}

double quality(const DistanceField& dist, const Partition& partition) {
  if (partition.size() != dist.size()) {
    throw ArgumentError("partition covers " + std::to_string(partition.size()) +
                        " cells, distance field has " + std::to_string(dist.size()));
  }
  std::vector<std::vector<Eigen::Index>> groups(partition.n_communities());
  for (std::size_t i = 0; i < partition.size(); ++i) {
    groups[partition.community_of(i)].push_back(static_cast<Eigen::Index>(i));
  }
  double q = 0.0;
  for (const auto& members : groups) {
    for (Eigen::Index a : members) {
      for (Eigen::Index b : members) {
        q += dist.row_means(a) + dist.row_means(b) - dist.xi(a, b) - dist.global_mean;
      }
    }
  }
  return q;
}

}  // namespace mlion
