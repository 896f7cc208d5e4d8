#include "mlion/partition.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "mlion/errors.hpp"

namespace mlion {

std::vector<std::size_t> canonicalize(const std::vector<std::size_t>& assignment) {
  struct Group {
    std::size_t label;
    std::size_t size = 0;
    std::size_t first = std::numeric_limits<std::size_t>::max();
  };
  std::unordered_map<std::size_t, std::size_t> slot;
  std::vector<Group> groups;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    auto [it, inserted] = slot.try_emplace(assignment[i], groups.size());
    if (inserted) groups.push_back({assignment[i], 0, i});
    ++groups[it->second].size;
  }
  std::vector<std::size_t> order(groups.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (groups[a].size != groups[b].size) return groups[a].size > groups[b].size;
    return groups[a].first < groups[b].first;
  });
  std::vector<std::size_t> new_id(groups.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) new_id[order[rank]] = rank;

  std::vector<std::size_t> out(assignment.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) out[i] = new_id[slot.at(assignment[i])];
  return out;
}

Partition::Partition(Dims dims, std::vector<std::size_t> assignment, double threshold,
                     double quality)
    : dims_(dims), threshold_(threshold), quality_(quality) {
  if (assignment.size() != dims.cells()) {
    throw ArgumentError("partition covers " + std::to_string(assignment.size()) +
                        " cells, network has " + std::to_string(dims.cells()));
  }
  assignment_ = canonicalize(assignment);
  const std::size_t k =
      assignment_.empty() ? 0 : *std::max_element(assignment_.begin(), assignment_.end()) + 1;
  sizes_.assign(k, 0);
  for (std::size_t c : assignment_) ++sizes_[c];
}

std::size_t Partition::community_of(Cell cell) const {
  return assignment_[supra_index(cell, dims_).value];
}

std::size_t Partition::n_isolated() const {
  return static_cast<std::size_t>(std::count(sizes_.begin(), sizes_.end(), std::size_t{1}));
}

MemberSet Partition::members(std::size_t community) const {
  if (community >= sizes_.size()) {
    throw IndexError("community " + std::to_string(community) + " does not exist (" +
                     std::to_string(sizes_.size()) + " communities)");
  }
  std::vector<Cell> cells;
  cells.reserve(sizes_[community]);
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i] == community) cells.push_back(cell_at(SupraIndex{i}, dims_));
  }
  return MemberSet(std::move(cells));
}

}  // namespace mlion
