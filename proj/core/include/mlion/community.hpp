#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mlion/communicability.hpp"
#include "mlion/network.hpp"
#include "mlion/partition.hpp"

namespace mlion {

struct SweepStep {
  double threshold = 0.0;
  std::size_t n_components = 0;
  double quality = 0.0;
};

struct SweepTrace {
  std::vector<SweepStep> steps;
  double xi_min = 0.0;
  double xi_max = 0.0;
  // All off-diagonal distances were equal (or there was a single cell), so
  // only one threshold was evaluated.
  bool degenerate = false;
};

struct DetectionResult {
  Partition partition;
  SweepTrace trace;
};

struct DetectionOptions {
  std::size_t r = 100;
  MeanConvention convention = MeanConvention::all_entries;
};

// Connected components of the graph linking every pair with xi <= xi_h.
Partition components_at_threshold(const DistanceField& dist, Dims dims, double xi_h);

// Threshold sweep over a prepared distance field: xi_h = xi_min + h k for
// h = 0..r, k = (xi_max - xi_min) / r, keeping the partition with the largest
// quality (smallest threshold on ties).
DetectionResult sweep_thresholds(const DistanceField& dist, Dims dims, std::size_t r);

// The full pipeline: symmetrize, symmetric strength normalization, weighted
// communicability, distances, then the threshold sweep.
DistanceField detection_distances(const MultilayerNetwork& net,
                                  MeanConvention convention = MeanConvention::all_entries);
DetectionResult detect_communities(const MultilayerNetwork& net, const DetectionOptions& opts = {});
DetectionResult detect_monolayer(const MultilayerNetwork& net, const DetectionOptions& opts = {});

enum class IsolatedGini {
  // Every isolated cell is its own class.
  singleton_classes,
  // All isolated cells of a row share one class.
  single_class,
};

struct ReportRow {
  std::string label;
  // Counts in communities 0..top_k-1, then cells in other non-singleton
  // communities, then isolated cells. Sums to the row width.
  std::vector<std::size_t> top_counts;
  std::size_t other = 0;
  std::size_t isolated = 0;
  std::size_t dominant = 0;
  double gini = 0.0;
};

struct CommunityReport {
  std::size_t top_k = 0;
  std::size_t min_size = 0;
  std::vector<ReportRow> per_country;
  std::vector<ReportRow> per_sector;
  // grid[node][layer]: community id, or kBelowMinSize for cells in
  // communities smaller than min_size (isolated cells included).
  std::vector<std::vector<long long>> membership_grid;

  static constexpr long long kBelowMinSize = -1;
};

CommunityReport community_report(const Partition& partition, const MultilayerNetwork& net,
                                 std::size_t min_size = 30, std::size_t top_k = 2,
                                 IsolatedGini gini_mode = IsolatedGini::singleton_classes);

enum class RankDirection { in, out, sum };

struct RankedCell {
  Cell cell;
  double strength = 0.0;
};

// Member cells ordered by strength inside the member-induced sub-network,
// descending, ties by supra index. Same-node partner cells are excluded as in
// the strength definitions.
std::vector<RankedCell> rank_members(const MultilayerNetwork& net, const MemberSet& members,
                                     RankDirection direction);

}  // namespace mlion
