#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mlion/network.hpp"

namespace mlion::testing {

// Two nodes {u, v}, two layers {x, y}; supra order (x,u),(x,v),(y,u),(y,v).
MultilayerNetwork t1();

MultilayerNetwork zero_network(std::size_t n_nodes, std::size_t n_layers);

// Random nonnegative network; each entry nonzero with probability `density`,
// weights uniform in (0, 10].
MultilayerNetwork random_network(std::uint64_t seed, std::size_t n_nodes, std::size_t n_layers,
                                 double density = 0.6);

// Same, symmetrized.
MultilayerNetwork random_symmetric_network(std::uint64_t seed, std::size_t n_nodes,
                                           std::size_t n_layers, double density = 0.6);

// Random symmetric n x n matrix scaled to the given spectral norm.
Matrix random_symmetric_matrix(std::uint64_t seed, std::size_t n, double spectral_norm);

struct PlantedNetwork {
  MultilayerNetwork net;
  // Planted block of every cell, supra order.
  std::vector<std::size_t> truth;
};

// `blocks` groups of `nodes_per_block` nodes over `n_layers` layers. Weights
// between cells whose nodes share a block are uniform in [5, 10], all others
// uniform in [0, 0.5]; a cell has no weight to itself.
PlantedNetwork planted_partition(std::uint64_t seed, std::size_t blocks = 3,
                                 std::size_t n_layers = 2, std::size_t nodes_per_block = 10);

// Two disjoint symmetric cliques of `size` cells each with unit weights
// (single layer, 2*size nodes).
MultilayerNetwork two_cliques(std::size_t size = 4);

// 44 countries x 56 sectors with WIOD codes, heavy domestic flows, roughly a
// third of the entries zero and an empty last sector.
MultilayerNetwork wiod_shaped(std::uint64_t seed);
const std::vector<std::string>& wiod_countries();
const std::vector<std::string>& wiod_sectors();

// Writes `net` as a wide WIOT table (country-major axes, row = seller) with a
// final-demand column block and value-added rows appended.
void write_wiot_wide(const MultilayerNetwork& net, const std::filesystem::path& path);
std::string wiot_wide_string(const MultilayerNetwork& net);

// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

}  // namespace mlion::testing
