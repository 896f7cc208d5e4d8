#include "mlion/layers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <utility>

#include "mlion/errors.hpp"
#include "mlion/metrics.hpp"

namespace mlion {

namespace {

constexpr std::array<std::pair<PairStat, std::string_view>, 8> kPairStatNames{{
    {PairStat::connectivity, "connectivity"},
    {PairStat::intensity, "intensity"},
    {PairStat::intensity_norm, "intensity_norm"},
    {PairStat::overlap_bin, "overlap_bin"},
    {PairStat::overlap_w, "overlap_w"},
    {PairStat::corr_bin, "corr_bin"},
    {PairStat::corr_w, "corr_w"},
    {PairStat::jaccard, "jaccard"},
}};

void check_layers(const MultilayerNetwork& net, std::size_t a, std::size_t b) {
  if (a >= net.n_layers() || b >= net.n_layers()) {
    throw IndexError("layer pair (" + std::to_string(a) + ", " + std::to_string(b) +
                     ") out of range");
  }
}

Matrix intralayer_block(const MultilayerNetwork& net, std::size_t layer, PairMode mode) {
  Matrix m = block(net, layer, layer);
  if (mode == PairMode::binary) m = (m.array() > 0.0).cast<double>().matrix();
  return m;
}

}  // namespace

std::string_view to_string(PairStat kind) {
  for (const auto& [k, name] : kPairStatNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

PairStat pair_stat_from_string(std::string_view name) {
  for (const auto& [k, n] : kPairStatNames) {
    if (n == name) return k;
  }
  throw ArgumentError("unknown layer-pair statistic '" + std::string(name) + "'");
}

double avg_connectivity(const MultilayerNetwork& net, std::size_t layer_a, std::size_t layer_b) {
  const Matrix b = block(net, layer_a, layer_b);
  const double n2 = static_cast<double>(b.size());
  return static_cast<double>((b.array() > 0.0).count()) / n2;
}

double avg_intensity(const MultilayerNetwork& net, std::size_t layer_a, std::size_t layer_b,
                     bool normalized) {
  const Matrix b = block(net, layer_a, layer_b);
  const double mean = b.sum() / static_cast<double>(b.size());
  if (!normalized) return mean;
  const double w_max = net.supra().maxCoeff();
  if (!(w_max > 0.0)) {
    throw ArgumentError("normalized intensity undefined on an all-zero network");
  }
  return mean / w_max;
}

double layer_overlap(const MultilayerNetwork& net, std::size_t layer_a, std::size_t layer_b,
                     PairMode mode) {
  check_layers(net, layer_a, layer_b);
  const Matrix a = intralayer_block(net, layer_a, mode);
  const Matrix b = intralayer_block(net, layer_b, mode);
  const double denom = a.sum() + b.sum();
  if (!(denom > 0.0)) {
    throw UndefinedStatistic("overlap undefined: both intralayer blocks are empty");
  }
  return std::min(1.0, 2.0 * a.cwiseMin(b).sum() / denom);
}

double layer_correlation(const MultilayerNetwork& net, std::size_t layer_a, std::size_t layer_b,
                         PairMode mode) {
  check_layers(net, layer_a, layer_b);
  const Matrix a = intralayer_block(net, layer_a, mode);
  const Matrix b = intralayer_block(net, layer_b, mode);
  return pearson(std::span<const double>(a.data(), static_cast<std::size_t>(a.size())),
                 std::span<const double>(b.data(), static_cast<std::size_t>(b.size())));
}

double jaccard_sector_similarity(const Partition& partition, std::size_t layer_a,
                                 std::size_t layer_b) {
  const Dims dims = partition.dims();
  if (layer_a >= dims.n_layers || layer_b >= dims.n_layers) {
    throw IndexError("layer pair (" + std::to_string(layer_a) + ", " + std::to_string(layer_b) +
                     ") out of range");
  }
  auto pairs = [&](std::size_t layer) {
    std::set<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t n = 0; n < dims.n_nodes; ++n) {
      const auto idx = supra_index(n, layer, dims).value;
      if (!partition.is_isolated(idx)) out.emplace(n, partition.community_of(idx));
    }
    return out;
  };
  const auto a = pairs(layer_a);
  const auto b = pairs(layer_b);
  if (a.empty() && b.empty()) {
    throw UndefinedStatistic("jaccard undefined: both layers are entirely isolated");
  }
  std::size_t shared = 0;
  for (const auto& p : a) shared += b.count(p);
  const std::size_t uni = a.size() + b.size() - shared;
  return static_cast<double>(shared) / static_cast<double>(uni);
}

LayerPairTable layer_pair_table(const MultilayerNetwork& net, PairStat kind) {
  if (kind == PairStat::jaccard) {
    throw ArgumentError("jaccard tables are built from a partition, see jaccard_table");
  }
  const auto L = net.n_layers();
  LayerPairTable table{kind, Matrix(L, L), net.layers().labels()};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t a = 0; a < L; ++a) {
    for (std::size_t b = 0; b < L; ++b) {
      double v = nan;
      try {
        switch (kind) {
          case PairStat::connectivity: v = avg_connectivity(net, a, b); break;
          case PairStat::intensity: v = avg_intensity(net, a, b, false); break;
          case PairStat::intensity_norm: v = avg_intensity(net, a, b, true); break;
          case PairStat::overlap_bin: v = layer_overlap(net, a, b, PairMode::binary); break;
          case PairStat::overlap_w: v = layer_overlap(net, a, b, PairMode::weighted); break;
          case PairStat::corr_bin: v = layer_correlation(net, a, b, PairMode::binary); break;
          case PairStat::corr_w: v = layer_correlation(net, a, b, PairMode::weighted); break;
          case PairStat::jaccard: break;
        }
      } catch (const UndefinedStatistic&) {
      } catch (const ArgumentError&) {
      }
      table.values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
    }
  }
  return table;
}

LayerPairTable jaccard_table(const Partition& partition, std::vector<std::string> layer_labels) {
  const auto L = partition.dims().n_layers;
  if (layer_labels.size() != L) {
    throw ArgumentError("jaccard_table: expected " + std::to_string(L) + " layer labels");
  }
  LayerPairTable table{PairStat::jaccard, Matrix(L, L), std::move(layer_labels)};
  for (std::size_t a = 0; a < L; ++a) {
    for (std::size_t b = 0; b < L; ++b) {
      double v = std::numeric_limits<double>::quiet_NaN();
      try {
        v = jaccard_sector_similarity(partition, a, b);
      } catch (const UndefinedStatistic&) {
      }
      table.values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
    }
  }
  return table;
}

}  // namespace mlion
