#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace mlion {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Network dimensions: N nodes (countries) replicated over L layers (sectors).
struct Dims {
  std::size_t n_nodes = 0;
  std::size_t n_layers = 0;

  std::size_t cells() const noexcept { return n_nodes * n_layers; }
  bool operator==(const Dims&) const = default;
};

// A (node, layer) pair, i.e. one country-sector.
struct Cell {
  std::size_t node = 0;
  std::size_t layer = 0;

  auto operator<=>(const Cell&) const = default;
};

// Position of a cell in the supra matrix. Layer-major: all nodes of layer 0,
// then all nodes of layer 1, and so on, so a layer block is a contiguous slice.
struct SupraIndex {
  std::size_t value = 0;

  auto operator<=>(const SupraIndex&) const = default;
};

SupraIndex supra_index(std::size_t node, std::size_t layer, Dims dims);
inline SupraIndex supra_index(Cell cell, Dims dims) {
  return supra_index(cell.node, cell.layer, dims);
}
Cell cell_at(SupraIndex index, Dims dims);

struct NetworkMeta {
  int year = 0;
  std::string source;
  std::string currency_unit = "USD millions";
  // Number of negative source values clamped to zero at ingest.
  std::size_t clamped = 0;

  bool operator==(const NetworkMeta&) const = default;
};

// Ordered, duplicate-free label list with O(1) reverse lookup.
class LabelRegistry {
 public:
  LabelRegistry() = default;
  explicit LabelRegistry(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& operator[](std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<std::size_t> find(std::string_view label) const;
  // Throws ArgumentError for an unknown label.
  std::size_t index_of(std::string_view label) const;

  bool operator==(const LabelRegistry& other) const { return labels_ == other.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

// Immutable multilayer network backed by a dense NL x NL supra matrix of
// nonnegative finite weights. Entry (a, b) is the flow from cell a to cell b.
class MultilayerNetwork {
 public:
  MultilayerNetwork(std::vector<std::string> node_labels,
                    std::vector<std::string> layer_labels, Matrix supra,
                    NetworkMeta meta = {});

  std::size_t n_nodes() const noexcept { return nodes_.size(); }
  std::size_t n_layers() const noexcept { return layers_.size(); }
  std::size_t n_cells() const noexcept { return dims().cells(); }
  Dims dims() const noexcept { return {nodes_.size(), layers_.size()}; }

  const LabelRegistry& nodes() const noexcept { return nodes_; }
  const LabelRegistry& layers() const noexcept { return layers_; }
  const Matrix& supra() const noexcept { return supra_; }
  const NetworkMeta& meta() const noexcept { return meta_; }

  double weight(Cell from, Cell to) const;
  std::string cell_label(Cell cell) const;

  // Same labels and meta, different weights.
  MultilayerNetwork with_supra(Matrix supra) const;

  bool operator==(const MultilayerNetwork& other) const;

 private:
  LabelRegistry nodes_;
  LabelRegistry layers_;
  Matrix supra_;
  NetworkMeta meta_;
};

// Sorted, duplicate-free set of cells.
class MemberSet {
 public:
  MemberSet() = default;
  // Throws ArgumentError on duplicates.
  explicit MemberSet(std::vector<Cell> cells);

  static MemberSet all(Dims dims);

  std::size_t size() const noexcept { return cells_.size(); }
  bool empty() const noexcept { return cells_.empty(); }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  auto begin() const noexcept { return cells_.begin(); }
  auto end() const noexcept { return cells_.end(); }

  bool operator==(const MemberSet&) const = default;

 private:
  std::vector<Cell> cells_;
};

// Network restricted to a member set. Local index k refers to cells()[k],
// which keeps the original (node, layer) identity of every retained cell.
struct SubNetwork {
  std::vector<Cell> cells;
  Matrix weights;

  std::size_t size() const noexcept { return cells.size(); }
};

struct IntraInterSplit {
  MultilayerNetwork intra;
  MultilayerNetwork inter;
};

enum class Normalization { directed, symmetric };

// W^[a,b]: rows are source nodes in layer a, columns target nodes in layer b.
Matrix block(const MultilayerNetwork& net, std::size_t layer_a, std::size_t layer_b);

MultilayerNetwork binarize(const MultilayerNetwork& net);
IntraInterSplit split_intra_inter(const MultilayerNetwork& net);
MultilayerNetwork symmetrize(const MultilayerNetwork& net);

// directed:  S_in^{-1/2} W S_out^{-1/2}
// symmetric: S^{-1/2} W S^{-1/2}, input must be symmetric (ContractError).
// Strengths here are full row/column sums of the stored matrix; zero-strength
// rows and columns are scaled by 0.
MultilayerNetwork normalize_strength(const MultilayerNetwork& net, Normalization mode);

// Single-layer country network: weight(c, d) sums W^[a,b]_{cd} over all layer pairs.
MultilayerNetwork aggregate_monolayer(const MultilayerNetwork& net);

SubNetwork subnetwork(const MultilayerNetwork& net, const MemberSet& members);

bool is_symmetric(const Matrix& m, double rel_tol = 0.0);

}  // namespace mlion
