#include <algorithm>
#include <map>

#include "mlion/community.hpp"
#include "mlion/errors.hpp"
#include "mlion/metrics.hpp"

namespace mlion {

namespace {

// Tallies one row (a country across sectors, or a sector across countries)
// given the supra indices of its cells.
ReportRow tally(const Partition& partition, const std::vector<std::size_t>& cells,
                std::string label, std::size_t top_k, IsolatedGini gini_mode) {
  ReportRow row;
  row.label = std::move(label);
  row.top_counts.assign(top_k, 0);
  std::map<std::size_t, std::size_t> per_community;
  for (std::size_t idx : cells) {
    const std::size_t c = partition.community_of(idx);
    ++per_community[c];
    if (partition.is_isolated(idx)) {
      ++row.isolated;
    } else if (c < top_k) {
      ++row.top_counts[c];
    } else {
      ++row.other;
    }
  }
  std::size_t best = 0;
  for (const auto& [c, count] : per_community) {
    if (count > best) {
      best = count;
      row.dominant = c;
    }
  }

  const auto width = static_cast<double>(cells.size());
  std::vector<double> shares;
  std::size_t isolated_pool = 0;
  for (const auto& [c, count] : per_community) {
    if (gini_mode == IsolatedGini::single_class && partition.sizes()[c] == 1) {
      isolated_pool += count;
      continue;
    }
    shares.push_back(static_cast<double>(count) / width);
  }
  if (isolated_pool > 0) shares.push_back(static_cast<double>(isolated_pool) / width);
  row.gini = gini_heterogeneity(shares);
  return row;
}

}  // namespace

CommunityReport community_report(const Partition& partition, const MultilayerNetwork& net,
                                 std::size_t min_size, std::size_t top_k,
                                 IsolatedGini gini_mode) {
  const Dims dims = net.dims();
  if (partition.dims() != dims) {
    throw ArgumentError("partition dimensions do not match the network");
  }
  if (min_size < 1) throw ArgumentError("min_size must be at least 1");

  CommunityReport report;
  report.top_k = top_k;
  report.min_size = min_size;

  std::vector<std::size_t> cells;
  for (std::size_t n = 0; n < dims.n_nodes; ++n) {
    cells.clear();
    for (std::size_t l = 0; l < dims.n_layers; ++l) cells.push_back(supra_index(n, l, dims).value);
    report.per_country.push_back(tally(partition, cells, net.nodes()[n], top_k, gini_mode));
  }
  for (std::size_t l = 0; l < dims.n_layers; ++l) {
    cells.clear();
    for (std::size_t n = 0; n < dims.n_nodes; ++n) cells.push_back(supra_index(n, l, dims).value);
    report.per_sector.push_back(tally(partition, cells, net.layers()[l], top_k, gini_mode));
  }

  report.membership_grid.assign(dims.n_nodes,
                                std::vector<long long>(dims.n_layers, CommunityReport::kBelowMinSize));
  for (std::size_t n = 0; n < dims.n_nodes; ++n) {
    for (std::size_t l = 0; l < dims.n_layers; ++l) {
      const auto idx = supra_index(n, l, dims).value;
      const std::size_t c = partition.community_of(idx);
      const std::size_t size = partition.sizes()[c];
      if (size >= min_size && size > 1) report.membership_grid[n][l] = static_cast<long long>(c);
    }
  }
  return report;
}

std::vector<RankedCell> rank_members(const MultilayerNetwork& net, const MemberSet& members,
                                     RankDirection direction) {
  const SubNetwork sub = subnetwork(net, members);
  const auto m = static_cast<Eigen::Index>(sub.size());
  std::vector<RankedCell> ranked;
  ranked.reserve(sub.size());
  for (Eigen::Index k = 0; k < m; ++k) {
    double in = 0.0;
    double out = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (sub.cells[j].node == sub.cells[k].node) continue;
      in += sub.weights(j, k);
      out += sub.weights(k, j);
    }
    const double s = direction == RankDirection::in ? in : direction == RankDirection::out ? out : in + out;
    ranked.push_back({sub.cells[k], s});
  }
  // Member cells arrive in supra order, so a stable sort breaks ties by supra index.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedCell& a, const RankedCell& b) { return a.strength > b.strength; });
  return ranked;
}

}  // namespace mlion
