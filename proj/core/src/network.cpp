#include "mlion/network.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "mlion/errors.hpp"

namespace mlion {

SupraIndex supra_index(std::size_t node, std::size_t layer, Dims dims) {
  if (node >= dims.n_nodes || layer >= dims.n_layers) {
    throw IndexError("cell (" + std::to_string(node) + ", " + std::to_string(layer) +
                     ") outside " + std::to_string(dims.n_nodes) + "x" +
                     std::to_string(dims.n_layers) + " network");
  }
  return SupraIndex{layer * dims.n_nodes + node};
}

Cell cell_at(SupraIndex index, Dims dims) {
  if (index.value >= dims.cells()) {
    throw IndexError("supra index " + std::to_string(index.value) + " out of range");
  }
  return Cell{index.value % dims.n_nodes, index.value / dims.n_nodes};
}

LabelRegistry::LabelRegistry(std::vector<std::string> labels) : labels_(std::move(labels)) {
  lookup_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!lookup_.emplace(labels_[i], i).second) {
      throw ArgumentError("duplicate label '" + labels_[i] + "'");
    }
  }
}

std::optional<std::size_t> LabelRegistry::find(std::string_view label) const {
  auto it = lookup_.find(std::string(label));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t LabelRegistry::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw ArgumentError("unknown label '" + std::string(label) + "'");
}

MultilayerNetwork::MultilayerNetwork(std::vector<std::string> node_labels,
                                     std::vector<std::string> layer_labels, Matrix supra,
                                     NetworkMeta meta)
    : nodes_(std::move(node_labels)),
      layers_(std::move(layer_labels)),
      supra_(std::move(supra)),
      meta_(std::move(meta)) {
  if (nodes_.size() == 0 || layers_.size() == 0) {
    throw ArgumentError("network needs at least one node and one layer");
  }
  const auto n = static_cast<Eigen::Index>(n_cells());
  if (supra_.rows() != n || supra_.cols() != n) {
    throw ArgumentError("supra matrix is " + std::to_string(supra_.rows()) + "x" +
                        std::to_string(supra_.cols()) + ", expected " + std::to_string(n) +
                        "x" + std::to_string(n));
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double w = supra_(i, j);
      if (!std::isfinite(w) || w < 0.0) {
        throw ArgumentError("supra entry (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") is negative or not finite");
      }
    }
  }
}

double MultilayerNetwork::weight(Cell from, Cell to) const {
  const auto a = supra_index(from, dims()).value;
  const auto b = supra_index(to, dims()).value;
  return supra_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
}

std::string MultilayerNetwork::cell_label(Cell cell) const {
  return nodes_[cell.node] + "/" + layers_[cell.layer];
}

MultilayerNetwork MultilayerNetwork::with_supra(Matrix supra) const {
  return MultilayerNetwork(nodes_.labels(), layers_.labels(), std::move(supra), meta_);
}

bool MultilayerNetwork::operator==(const MultilayerNetwork& other) const {
  return nodes_ == other.nodes_ && layers_ == other.layers_ && meta_ == other.meta_ &&
         supra_.rows() == other.supra_.rows() && supra_ == other.supra_;
}

MemberSet::MemberSet(std::vector<Cell> cells) : cells_(std::move(cells)) {
  std::sort(cells_.begin(), cells_.end(), [](const Cell& a, const Cell& b) {
    return std::tie(a.layer, a.node) < std::tie(b.layer, b.node);
  });
  if (std::adjacent_find(cells_.begin(), cells_.end()) != cells_.end()) {
    throw ArgumentError("member set contains a duplicate cell");
  }
}

MemberSet MemberSet::all(Dims dims) {
  std::vector<Cell> cells;
  cells.reserve(dims.cells());
  for (std::size_t l = 0; l < dims.n_layers; ++l) {
    for (std::size_t n = 0; n < dims.n_nodes; ++n) cells.push_back({n, l});
  }
  return MemberSet(std::move(cells));
}

Matrix block(const MultilayerNetwork& net, std::size_t layer_a, std::size_t layer_b) {
  const auto L = net.n_layers();
  if (layer_a >= L || layer_b >= L) {
    throw IndexError("layer pair (" + std::to_string(layer_a) + ", " +
                     std::to_string(layer_b) + ") out of range");
  }
  const auto N = static_cast<Eigen::Index>(net.n_nodes());
  return net.supra().block(static_cast<Eigen::Index>(layer_a) * N,
                           static_cast<Eigen::Index>(layer_b) * N, N, N);
}

MultilayerNetwork binarize(const MultilayerNetwork& net) {
  Matrix out = (net.supra().array() > 0.0).cast<double>().matrix();
  return net.with_supra(std::move(out));
}

IntraInterSplit split_intra_inter(const MultilayerNetwork& net) {
  const auto N = static_cast<Eigen::Index>(net.n_nodes());
  const auto L = static_cast<Eigen::Index>(net.n_layers());
  Matrix intra = Matrix::Zero(net.supra().rows(), net.supra().cols());
  Matrix inter = net.supra();
  for (Eigen::Index l = 0; l < L; ++l) {
    intra.block(l * N, l * N, N, N) = net.supra().block(l * N, l * N, N, N);
    inter.block(l * N, l * N, N, N).setZero();
  }
  return {net.with_supra(std::move(intra)), net.with_supra(std::move(inter))};
}

MultilayerNetwork symmetrize(const MultilayerNetwork& net) {
  const Matrix& w = net.supra();
  const auto n = w.rows();
  Matrix out(n, n);
  // Fill both triangles from the same expression so the result is exactly symmetric.
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) {
      const double v = 0.5 * (w(i, j) + w(j, i));
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return net.with_supra(std::move(out));
}

namespace {

Vector inverse_sqrt(const Vector& s) {
  Vector out(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    out(i) = s(i) > 0.0 ? 1.0 / std::sqrt(s(i)) : 0.0;
  }
  return out;
}

}  // namespace

bool is_symmetric(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = rel_tol > 0.0 ? rel_tol * m.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < m.rows(); ++i) {
      if (std::abs(m(i, j) - m(j, i)) > scale) return false;
    }
  }
  return true;
}

MultilayerNetwork normalize_strength(const MultilayerNetwork& net, Normalization mode) {
  const Matrix& w = net.supra();
  if (mode == Normalization::symmetric) {
    if (!is_symmetric(w, 1e-12)) {
      throw ContractError("symmetric normalization requires a symmetric supra matrix");
    }
    const Vector d = inverse_sqrt(w.rowwise().sum());
    Matrix out = d.asDiagonal() * w * d.asDiagonal();
    // Restore exact symmetry lost to rounding in the two scalings.
    out = (0.5 * (out + out.transpose())).eval();
    return net.with_supra(std::move(out));
  }
  // Row a carries the out-flows of cell a, column b the in-flows of cell b.
  const Vector s_in = w.colwise().sum().transpose();
  const Vector s_out = w.rowwise().sum();
  Matrix out = inverse_sqrt(s_in).asDiagonal() * w * inverse_sqrt(s_out).asDiagonal();
  return net.with_supra(std::move(out));
}

MultilayerNetwork aggregate_monolayer(const MultilayerNetwork& net) {
  const auto N = static_cast<Eigen::Index>(net.n_nodes());
  const auto L = static_cast<Eigen::Index>(net.n_layers());
  Matrix agg = Matrix::Zero(N, N);
  for (Eigen::Index a = 0; a < L; ++a) {
    for (Eigen::Index b = 0; b < L; ++b) {
      agg += net.supra().block(a * N, b * N, N, N);
    }
  }
  std::string layer = net.n_layers() == 1 ? net.layers()[0] : std::string("ALL");
  return MultilayerNetwork(net.nodes().labels(), {layer}, std::move(agg), net.meta());
}

SubNetwork subnetwork(const MultilayerNetwork& net, const MemberSet& members) {
  if (members.empty()) throw ArgumentError("subnetwork needs at least one member");
  const Dims dims = net.dims();
  std::vector<Eigen::Index> idx;
  idx.reserve(members.size());
  for (const Cell& c : members) {
    idx.push_back(static_cast<Eigen::Index>(supra_index(c, dims).value));
  }
  const auto m = static_cast<Eigen::Index>(idx.size());
  SubNetwork sub{members.cells(), Matrix(m, m)};
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) sub.weights(i, j) = net.supra()(idx[i], idx[j]);
  }
  return sub;
}

}  // namespace mlion
