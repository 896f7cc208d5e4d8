#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mlion/network.hpp"

namespace mlion {

enum class Direction { in, out };
enum class StrengthKind { intralayer, total, total_interlayer };

// Strength of one cell split by partner layer. Partner cells belonging to the
// same node (j == i, any layer) are excluded from every sum. Calling this on
// binarize(net) yields degrees.
struct StrengthProfile {
  Cell cell;
  Direction direction = Direction::out;
  double intralayer = 0.0;
  std::vector<double> per_layer;
  double total = 0.0;
  double total_interlayer = 0.0;
};

struct ConcentrationIndex {
  Cell cell;
  Direction direction = Direction::out;
  double value = 0.0;
};

StrengthProfile strength_profile(const MultilayerNetwork& net, std::size_t node,
                                 std::size_t layer, Direction direction);

// One entry per cell, in supra order.
Vector strength_table(const MultilayerNetwork& net, Direction direction, StrengthKind kind);

// Herfindahl-Hirschman index of a cell's partner shares. Throws
// UndefinedStatistic when the cell has zero strength in that direction.
ConcentrationIndex hhi(const MultilayerNetwork& net, std::size_t node, std::size_t layer,
                       Direction direction);

// Per-cell HHI; nullopt where the index is undefined.
std::vector<std::optional<double>> hhi_table(const MultilayerNetwork& net, Direction direction);

// Gini-Simpson heterogeneity 1 - sum(p^2). Proportions must be nonnegative and
// sum to 1 within 1e-9.
double gini_heterogeneity(std::span<const double> proportions);

// Pearson correlation. Throws UndefinedStatistic for constant input.
double pearson(std::span<const double> x, std::span<const double> y);

}  // namespace mlion
