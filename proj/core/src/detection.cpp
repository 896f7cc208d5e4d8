#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "mlion/community.hpp"
#include "mlion/errors.hpp"

namespace mlion {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns the surviving root; the larger set (then the smaller root) survives.
  std::size_t unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (size_[a] < size_[b] || (size_[a] == size_[b] && b < a)) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return a;
  }

  std::vector<std::size_t> labels() {
    std::vector<std::size_t> out(parent_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = find(i);
    return out;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

struct Pair {
  double xi;
  std::uint32_t a;
  std::uint32_t b;
};

std::vector<Pair> sorted_pairs(const DistanceField& dist) {
  const auto n = dist.size();
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw ArgumentError("distance field too large for the threshold sweep");
  }
  std::vector<Pair> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t a = 0; a < b; ++a) {
      pairs.push_back({dist.xi(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)),
                       static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    if (x.xi != y.xi) return x.xi < y.xi;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  return pairs;
}

// Union-find that also tracks, per component c, |c|, the sum of member row
// means R_c and the ordered within-component distance sum X_c, so that
// Q = sum_c (2 |c| R_c - X_c - |c|^2 m) is available in O(#components).
class QualityTracker {
 public:
  explicit QualityTracker(const DistanceField& dist)
      : dist_(dist), sets_(dist.size()), members_(dist.size()), row_sum_(dist.size()),
        within_(dist.size(), 0.0), roots_(dist.size()) {
    for (std::size_t i = 0; i < dist.size(); ++i) {
      members_[i] = {static_cast<std::uint32_t>(i)};
      row_sum_[i] = dist.row_means(static_cast<Eigen::Index>(i));
    }
    std::iota(roots_.begin(), roots_.end(), std::size_t{0});
  }

  void link(std::size_t a, std::size_t b) {
    const std::size_t ra = sets_.find(a);
    const std::size_t rb = sets_.find(b);
    if (ra == rb) return;
    double cross = 0.0;
    for (std::uint32_t x : members_[ra]) {
      for (std::uint32_t y : members_[rb]) cross += dist_.xi(x, y);
    }
    const std::size_t root = sets_.unite(ra, rb);
    const std::size_t gone = root == ra ? rb : ra;
    within_[root] = within_[ra] + within_[rb] + 2.0 * cross;
    row_sum_[root] = row_sum_[ra] + row_sum_[rb];
    auto& keep = members_[root];
    auto& drop = members_[gone];
    keep.insert(keep.end(), drop.begin(), drop.end());
    drop.clear();
    drop.shrink_to_fit();
    roots_.erase(std::lower_bound(roots_.begin(), roots_.end(), gone));
  }

  std::size_t n_components() const noexcept { return roots_.size(); }

  double quality() const {
    double q = 0.0;
    for (std::size_t r : roots_) {
      const auto size = static_cast<double>(members_[r].size());
      q += 2.0 * size * row_sum_[r] - within_[r] - size * size * dist_.global_mean;
    }
    return q;
  }

  std::vector<std::size_t> labels() { return sets_.labels(); }

 private:
  const DistanceField& dist_;
  DisjointSets sets_;
  std::vector<std::vector<std::uint32_t>> members_;
  std::vector<double> row_sum_;
  std::vector<double> within_;
  std::vector<std::size_t> roots_;
};

}  // namespace

Partition components_at_threshold(const DistanceField& dist, Dims dims, double xi_h) {
  const auto n = dist.size();
  if (n != dims.cells()) throw ArgumentError("distance field does not match dimensions");
  DisjointSets sets(n);
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t a = 0; a < b; ++a) {
      if (dist.xi(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) <= xi_h) {
        sets.unite(a, b);
      }
    }
  }
  Partition p(dims, sets.labels(), xi_h);
  p.set_quality(quality(dist, p));
  return p;
}

DetectionResult sweep_thresholds(const DistanceField& dist, Dims dims, std::size_t r) {
  if (r < 1) throw ArgumentError("the sweep needs r >= 1");
  const auto n = dist.size();
  if (n == 0 || n != dims.cells()) {
    throw ArgumentError("distance field does not match a non-empty network");
  }

  DetectionResult result;
  SweepTrace& trace = result.trace;
  const std::vector<Pair> pairs = sorted_pairs(dist);
  QualityTracker tracker(dist);

  if (pairs.empty() || pairs.front().xi == pairs.back().xi) {
    const double th = pairs.empty() ? 0.0 : pairs.front().xi;
    for (const Pair& p : pairs) tracker.link(p.a, p.b);
    trace.xi_min = trace.xi_max = th;
    trace.degenerate = true;
    const double q = tracker.quality();
    trace.steps.push_back({th, tracker.n_components(), q});
    result.partition = Partition(dims, tracker.labels(), th, q);
    return result;
  }

  trace.xi_min = pairs.front().xi;
  trace.xi_max = pairs.back().xi;
  const double step = (trace.xi_max - trace.xi_min) / static_cast<double>(r);
  double best_q = -std::numeric_limits<double>::infinity();
  double best_th = trace.xi_min;
  std::vector<std::size_t> best_labels;
  std::size_t next = 0;
  for (std::size_t h = 0; h <= r; ++h) {
    const double th =
        h == r ? trace.xi_max : trace.xi_min + static_cast<double>(h) * step;
    while (next < pairs.size() && pairs[next].xi <= th) {
      tracker.link(pairs[next].a, pairs[next].b);
      ++next;
    }
    const double q = tracker.quality();
    trace.steps.push_back({th, tracker.n_components(), q});
    if (q > best_q) {
      best_q = q;
      best_th = th;
      best_labels = tracker.labels();
    }
  }
  result.partition = Partition(dims, std::move(best_labels), best_th, best_q);
  return result;
}

DistanceField detection_distances(const MultilayerNetwork& net, MeanConvention convention) {
  const MultilayerNetwork normalized =
      normalize_strength(symmetrize(net), Normalization::symmetric);
  const CommunicabilityField field = field_from_matrix(
      expm_symmetric(normalized.supra()), net.dims(), true, CommunicabilityMode::weighted);
  return distance_field(field, convention);
}

DetectionResult detect_communities(const MultilayerNetwork& net, const DetectionOptions& opts) {
  if (opts.r < 1) throw ArgumentError("the sweep needs r >= 1");
  return sweep_thresholds(detection_distances(net, opts.convention), net.dims(), opts.r);
}

DetectionResult detect_monolayer(const MultilayerNetwork& net, const DetectionOptions& opts) {
  return detect_communities(aggregate_monolayer(net), opts);
}

}  // namespace mlion
