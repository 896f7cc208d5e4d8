#pragma once

#include <cstddef>
#include <vector>

#include "mlion/network.hpp"

namespace mlion {

// Assignment of every cell (supra order) to a community. Ids are canonical:
// consecutive from 0, ordered by descending size, ties broken by the smallest
// member supra index. Singleton communities are the isolated cells.
class Partition {
 public:
  Partition() = default;
  // Canonicalizes `assignment` (any nonnegative labels).
  Partition(Dims dims, std::vector<std::size_t> assignment, double threshold = 0.0,
            double quality = 0.0);

  Dims dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return assignment_.size(); }
  const std::vector<std::size_t>& assignment() const noexcept { return assignment_; }
  std::size_t community_of(std::size_t supra) const { return assignment_.at(supra); }
  std::size_t community_of(Cell cell) const;

  std::size_t n_communities() const noexcept { return sizes_.size(); }
  const std::vector<std::size_t>& sizes() const noexcept { return sizes_; }
  bool is_isolated(std::size_t supra) const { return sizes_[assignment_.at(supra)] == 1; }
  std::size_t n_isolated() const;
  // Cells of one community, ascending supra order.
  MemberSet members(std::size_t community) const;

  double threshold() const noexcept { return threshold_; }
  double quality() const noexcept { return quality_; }
  void set_quality(double q) noexcept { quality_ = q; }

  bool operator==(const Partition&) const = default;

 private:
  Dims dims_;
  std::vector<std::size_t> assignment_;
  std::vector<std::size_t> sizes_;
  double threshold_ = 0.0;
  double quality_ = 0.0;
};

// Relabels so ids follow the canonical order described above.
std::vector<std::size_t> canonicalize(const std::vector<std::size_t>& assignment);

}  // namespace mlion
