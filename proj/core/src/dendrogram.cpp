#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <tuple>

#include "mlion/errors.hpp"
#include "mlion/layers.hpp"

namespace mlion {

namespace {

std::string fmt_length(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string newick_label(const std::string& label) {
  if (label.find_first_of(" ()[]':;,") == std::string::npos) return label;
  std::string out = "'";
  for (char c : label) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

}  // namespace

Dendrogram hcluster_layers(const Matrix& features, std::vector<std::string> leaf_labels) {
  const auto L = static_cast<std::size_t>(features.rows());
  if (L < 2) throw ArgumentError("hierarchical clustering needs at least two rows");
  if (!features.allFinite()) throw ArgumentError("features contain a non-finite value");
  if (leaf_labels.empty()) {
    for (std::size_t i = 0; i < L; ++i) leaf_labels.push_back("L" + std::to_string(i));
  }
  if (leaf_labels.size() != L) throw ArgumentError("leaf label count differs from row count");

  // Cluster slots 0..L-1 are reused in place; `id` maps a slot to its current
  // cluster id and `min_leaf` to the smallest leaf it contains.
  Matrix dist(L, L);
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t j = 0; j < L; ++j) {
      dist(i, j) = (features.row(i) - features.row(j)).norm();
    }
  }
  std::vector<std::size_t> id(L), min_leaf(L), size(L, 1);
  std::vector<bool> active(L, true);
  for (std::size_t i = 0; i < L; ++i) id[i] = min_leaf[i] = i;

  Dendrogram out;
  out.leaf_labels = std::move(leaf_labels);
  for (std::size_t step = 0; step + 1 < L; ++step) {
    std::size_t best_a = 0, best_b = 0;
    double best = std::numeric_limits<double>::infinity();
    std::pair<std::size_t, std::size_t> best_key{L, L};
    for (std::size_t a = 0; a < L; ++a) {
      if (!active[a]) continue;
      for (std::size_t b = a + 1; b < L; ++b) {
        if (!active[b]) continue;
        const double d = dist(a, b);
        const std::pair<std::size_t, std::size_t> key = std::minmax(min_leaf[a], min_leaf[b]);
        if (d < best || (d == best && key < best_key)) {
          best = d;
          best_key = key;
          best_a = a;
          best_b = b;
        }
      }
    }
    const std::size_t na = size[best_a], nb = size[best_b];
    for (std::size_t k = 0; k < L; ++k) {
      if (!active[k] || k == best_a || k == best_b) continue;
      const double d = (static_cast<double>(na) * dist(best_a, k) +
                        static_cast<double>(nb) * dist(best_b, k)) /
                       static_cast<double>(na + nb);
      dist(best_a, k) = dist(k, best_a) = d;
    }
    out.merges.push_back({std::min(id[best_a], id[best_b]), std::max(id[best_a], id[best_b]),
                          best, na + nb});
    id[best_a] = L + step;
    size[best_a] = na + nb;
    min_leaf[best_a] = std::min(min_leaf[best_a], min_leaf[best_b]);
    active[best_b] = false;
  }
  return out;
}

std::string Dendrogram::to_newick() const {
  const std::size_t L = leaf_labels.size();
  if (merges.empty()) return L == 1 ? newick_label(leaf_labels[0]) + ";" : ";";
  auto height = [&](std::size_t c) { return c < L ? 0.0 : merges[c - L].height; };
  auto render = [&](auto&& self, std::size_t c) -> std::string {
    if (c < L) return newick_label(leaf_labels[c]);
    const auto& m = merges[c - L];
    const double h = m.height;
    return "(" + self(self, m.cluster_a) + ":" + fmt_length(h - height(m.cluster_a)) + "," +
           self(self, m.cluster_b) + ":" + fmt_length(h - height(m.cluster_b)) + ")";
  };
  return render(render, L + merges.size() - 1) + ";";
}

}  // namespace mlion
