#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mlion/network.hpp"
#include "mlion/partition.hpp"

namespace mlion {

enum class PairStat {
  connectivity,
  intensity,
  intensity_norm,
  overlap_bin,
  overlap_w,
  corr_bin,
  corr_w,
  jaccard,
};

enum class PairMode { binary, weighted };

std::string_view to_string(PairStat kind);
// Throws ArgumentError for an unknown name.
PairStat pair_stat_from_string(std::string_view name);

// L x L table of a layer-pair statistic. Undefined entries are NaN.
struct LayerPairTable {
  PairStat kind = PairStat::connectivity;
  Matrix values;
  std::vector<std::string> layer_labels;
};

// Fraction of the N^2 ordered node pairs linked in block [a, b] (diagonal included).
double avg_connectivity(const MultilayerNetwork& net, std::size_t layer_a, std::size_t layer_b);

// Mean block weight over N^2 pairs, optionally divided by the largest supra entry.
double avg_intensity(const MultilayerNetwork& net, std::size_t layer_a, std::size_t layer_b,
                     bool normalized);

// 2 sum(min) / sum(a + b) over the two intralayer blocks.
double layer_overlap(const MultilayerNetwork& net, std::size_t layer_a, std::size_t layer_b,
                     PairMode mode);

// Pearson correlation of the two intralayer blocks flattened to N^2 vectors.
double layer_correlation(const MultilayerNetwork& net, std::size_t layer_a, std::size_t layer_b,
                         PairMode mode);

// |A n B| / |A u B| over (node, community) pairs of the non-isolated nodes of
// each layer.
double jaccard_sector_similarity(const Partition& partition, std::size_t layer_a,
                                 std::size_t layer_b);

LayerPairTable layer_pair_table(const MultilayerNetwork& net, PairStat kind);
LayerPairTable jaccard_table(const Partition& partition, std::vector<std::string> layer_labels);

// Average-linkage (UPGMA) agglomeration on euclidean distances between rows.
// Leaves are 0..L-1; merge k creates cluster L + k.
struct Dendrogram {
  struct Merge {
    std::size_t cluster_a = 0;
    std::size_t cluster_b = 0;
    double height = 0.0;
    std::size_t size = 0;
  };

  std::vector<Merge> merges;
  std::vector<std::string> leaf_labels;

  // Newick string; branch lengths are height differences so that every leaf
  // sits at depth equal to the root merge height.
  std::string to_newick() const;
};

Dendrogram hcluster_layers(const Matrix& features, std::vector<std::string> leaf_labels = {});

}  // namespace mlion
