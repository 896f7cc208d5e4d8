#include "mlion/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mlion/errors.hpp"

namespace mlion {

namespace {

// Weight from partner cell `other` into (in) or out of (out) cell `self`.
double directed_weight(const Matrix& w, Eigen::Index self, Eigen::Index other, Direction d) {
  return d == Direction::in ? w(other, self) : w(self, other);
}

}  // namespace

StrengthProfile strength_profile(const MultilayerNetwork& net, std::size_t node,
                                 std::size_t layer, Direction direction) {
  const Dims dims = net.dims();
  const auto self = static_cast<Eigen::Index>(supra_index(node, layer, dims).value);
  const auto N = dims.n_nodes;
  const Matrix& w = net.supra();

  StrengthProfile p;
  p.cell = {node, layer};
  p.direction = direction;
  p.per_layer.assign(dims.n_layers, 0.0);
  for (std::size_t beta = 0; beta < dims.n_layers; ++beta) {
    double s = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      if (j == node) continue;
      s += directed_weight(w, self, static_cast<Eigen::Index>(beta * N + j), direction);
    }
    p.per_layer[beta] = s;
    p.total += s;
  }
  p.intralayer = p.per_layer[layer];
  p.total_interlayer = p.total - p.intralayer;
  return p;
}

Vector strength_table(const MultilayerNetwork& net, Direction direction, StrengthKind kind) {
  const Dims dims = net.dims();
  Vector out(static_cast<Eigen::Index>(dims.cells()));
  for (std::size_t l = 0; l < dims.n_layers; ++l) {
    for (std::size_t n = 0; n < dims.n_nodes; ++n) {
      const auto p = strength_profile(net, n, l, direction);
      double v = p.total;
      if (kind == StrengthKind::intralayer) v = p.intralayer;
      if (kind == StrengthKind::total_interlayer) v = p.total_interlayer;
      out(static_cast<Eigen::Index>(l * dims.n_nodes + n)) = v;
    }
  }
  return out;
}

ConcentrationIndex hhi(const MultilayerNetwork& net, std::size_t node, std::size_t layer,
                       Direction direction) {
  const Dims dims = net.dims();
  const auto self = static_cast<Eigen::Index>(supra_index(node, layer, dims).value);
  const double total = strength_profile(net, node, layer, direction).total;
  if (!(total > 0.0)) {
    throw UndefinedStatistic("HHI undefined for " + net.cell_label({node, layer}) +
                             ": zero strength");
  }
  double h = 0.0;
  for (std::size_t beta = 0; beta < dims.n_layers; ++beta) {
    for (std::size_t j = 0; j < dims.n_nodes; ++j) {
      if (j == node) continue;
      const double share =
          directed_weight(net.supra(), self, static_cast<Eigen::Index>(beta * dims.n_nodes + j),
                          direction) /
          total;
      h += share * share;
    }
  }
  return {{node, layer}, direction, h};
}

std::vector<std::optional<double>> hhi_table(const MultilayerNetwork& net, Direction direction) {
  const Dims dims = net.dims();
  std::vector<std::optional<double>> out(dims.cells());
  for (std::size_t l = 0; l < dims.n_layers; ++l) {
    for (std::size_t n = 0; n < dims.n_nodes; ++n) {
      try {
        out[l * dims.n_nodes + n] = hhi(net, n, l, direction).value;
      } catch (const UndefinedStatistic&) {
      }
    }
  }
  return out;
}

double gini_heterogeneity(std::span<const double> proportions) {
  double sum = 0.0;
  double sq = 0.0;
  for (double p : proportions) {
    if (!(p >= 0.0)) throw ArgumentError("proportions must be nonnegative");
    sum += p;
    sq += p * p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ArgumentError("proportions sum to " + std::to_string(sum) + ", expected 1");
  }
  return 1.0 - sq;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ArgumentError("pearson: vectors differ in length");
  if (x.size() < 2) throw ArgumentError("pearson: need at least two observations");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedStatistic("pearson: constant vector");
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

}  // namespace mlion
