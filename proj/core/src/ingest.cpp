#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <unordered_map>

#include "mlion/csv.hpp"
#include "mlion/errors.hpp"
#include "mlion/io.hpp"

namespace mlion {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open input '" + path.string() + "'");
  return in;
}

// Collects labels in first-appearance order, or resolves them against a fixed list.
class LabelCollector {
 public:
  explicit LabelCollector(std::vector<std::string> fixed) : fixed_(!fixed.empty()) {
    for (auto& l : fixed) add(std::move(l));
  }

  std::optional<std::size_t> resolve(const std::string& label) {
    if (auto it = index_.find(label); it != index_.end()) return it->second;
    if (fixed_) return std::nullopt;
    return add(label);
  }

  std::vector<std::string> take() { return std::move(labels_); }
  std::size_t size() const noexcept { return labels_.size(); }

 private:
  std::size_t add(std::string label) {
    const auto [it, inserted] = index_.emplace(label, labels_.size());
    if (!inserted) throw ArgumentError("duplicate label '" + label + "' in label list");
    labels_.push_back(std::move(label));
    return it->second;
  }

  bool fixed_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

double checked_value(double v, bool clamp, std::size_t& clamped, std::size_t line) {
  if (v >= 0.0) return v;
  if (!clamp) throw ParseError("negative value with clamping disabled", line);
  ++clamped;
  return 0.0;
}

}  // namespace

MultilayerNetwork parse_long(std::istream& in, const LongCsvOptions& opts) {
  csv::Reader reader(in);
  const auto header = reader.next();
  static const std::vector<std::string> kHeader{"source_country", "source_sector",
                                                "target_country", "target_sector", "value"};
  if (!header) throw ParseError("missing header", reader.line() + 1);
  std::vector<std::string> got;
  for (const auto& f : *header) got.push_back(csv::trim(f));
  if (got != kHeader) {
    throw ParseError("expected header " + csv::join(kHeader), reader.line());
  }

  LabelCollector nodes(opts.node_labels);
  LabelCollector layers(opts.layer_labels);
  struct Edge {
    std::size_t sn, sl, tn, tl;
    double w;
  };
  std::vector<Edge> edges;
  std::size_t clamped = 0;
  while (auto row = reader.next()) {
    if (row->size() != 5) {
      throw ParseError("expected 5 fields, found " + std::to_string(row->size()), reader.line());
    }
    std::array<std::size_t, 4> idx{};
    for (std::size_t k = 0; k < 4; ++k) {
      const std::string label = csv::trim((*row)[k]);
      if (label.empty()) throw ParseError("empty label", reader.line());
      auto& reg = (k % 2 == 0) ? nodes : layers;
      const auto i = reg.resolve(label);
      if (!i) throw ParseError("label '" + label + "' not in label file", reader.line());
      idx[k] = *i;
    }
    const auto v = csv::parse_double((*row)[4]);
    if (!v) throw ParseError("non-numeric value '" + (*row)[4] + "'", reader.line());
    edges.push_back({idx[0], idx[1], idx[2], idx[3],
                     checked_value(*v, opts.clamp_negatives, clamped, reader.line())});
  }
  if (nodes.size() == 0 || layers.size() == 0) {
    throw ParseError("no edges and no label file to declare the network", reader.line());
  }

  const Dims dims{nodes.size(), layers.size()};
  Matrix w = Matrix::Zero(static_cast<Eigen::Index>(dims.cells()),
                          static_cast<Eigen::Index>(dims.cells()));
  for (const Edge& e : edges) {
    const auto a = static_cast<Eigen::Index>(supra_index(e.sn, e.sl, dims).value);
    const auto b = static_cast<Eigen::Index>(supra_index(e.tn, e.tl, dims).value);
    w(a, b) += e.w;
  }
  NetworkMeta meta = opts.meta;
  meta.clamped = clamped;
  return MultilayerNetwork(nodes.take(), layers.take(), std::move(w), std::move(meta));
}

MultilayerNetwork parse_long(const std::filesystem::path& path, const LongCsvOptions& opts) {
  auto in = open_input(path);
  return parse_long(in, opts);
}

void write_long(const MultilayerNetwork& net, std::ostream& out) {
  out << "source_country,source_sector,target_country,target_sector,value\n";
  const Dims dims = net.dims();
  const Matrix& w = net.supra();
  for (std::size_t a = 0; a < dims.cells(); ++a) {
    const Cell ca = cell_at(SupraIndex{a}, dims);
    for (std::size_t b = 0; b < dims.cells(); ++b) {
      const double v = w(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      if (v == 0.0) continue;
      const Cell cb = cell_at(SupraIndex{b}, dims);
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << csv::join({net.nodes()[ca.node], net.layers()[ca.layer], net.nodes()[cb.node],
                        net.layers()[cb.layer], buf})
          << '\n';
    }
  }
}

MultilayerNetwork parse_wiot_wide(std::istream& in, const WiotOptions& opts) {
  const WiotLayout& lay = opts.layout;
  std::vector<std::vector<std::string>> lines;
  std::vector<std::size_t> line_no;
  {
    std::string raw;
    std::size_t n = 0;
    while (std::getline(in, raw)) {
      ++n;
      if (n == 1 && raw.rfind("\xEF\xBB\xBF", 0) == 0) raw.erase(0, 3);
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      if (n <= lay.skip_lines) continue;
      if (csv::trim(raw).empty()) continue;
      lines.push_back(csv::split(raw));
      line_no.push_back(n);
    }
  }
  if (lines.size() < 3) throw FormatError("WIOT table needs two header rows and data rows");
  const auto& hdr_country = lines[0];
  const auto& hdr_sector = lines[1];
  if (hdr_country.size() != hdr_sector.size()) {
    throw FormatError("header rows differ in length (line " + std::to_string(line_no[1]) + ")");
  }
  const std::size_t width = hdr_country.size();
  if (width <= lay.first_value_col) throw FormatError("header has no value columns");
  for (std::size_t r = 2; r < lines.size(); ++r) {
    if (lines[r].size() != width) {
      throw FormatError("ragged row at line " + std::to_string(line_no[r]) + ": " +
                        std::to_string(lines[r].size()) + " fields, header has " +
                        std::to_string(width));
    }
  }

  using Key = std::pair<std::string, std::string>;
  auto col_key = [&](std::size_t k) {
    return Key{csv::trim(hdr_country[lay.first_value_col + k]),
               csv::trim(hdr_sector[lay.first_value_col + k])};
  };
  auto row_key = [&](std::size_t k) {
    const auto& row = lines[2 + k];
    return Key{csv::trim(row.at(lay.row_country_col)), csv::trim(row.at(lay.row_sector_col))};
  };
  auto describe = [](const Key& k) { return k.first + "/" + k.second; };

  const std::size_t n_value_cols = width - lay.first_value_col;
  const std::size_t n_rows = lines.size() - 2;
  std::size_t K = 0;
  while (K < n_value_cols && K < n_rows && row_key(K) == col_key(K)) ++K;
  if (K == 0) {
    throw FormatError("no intermediate block: first row stub " + describe(row_key(0)) +
                      " does not match first column header " + describe(col_key(0)));
  }

  std::set<Key> block_keys;
  std::set<std::string> block_countries;
  std::set<std::string> block_sectors;
  for (std::size_t k = 0; k < K; ++k) {
    const Key key = col_key(k);
    if (!block_keys.insert(key).second) {
      throw FormatError("duplicate intermediate header " + describe(key));
    }
    block_countries.insert(key.first);
    block_sectors.insert(key.second);
  }
  auto looks_intermediate = [&](const Key& k) {
    return block_countries.count(k.first) && block_sectors.count(k.second);
  };
  std::set<Key> all_cols;
  for (std::size_t k = 0; k < n_value_cols; ++k) all_cols.insert(col_key(k));
  std::set<Key> all_rows;
  for (std::size_t k = 0; k < n_rows; ++k) all_rows.insert(row_key(k));
  // The block ends at the first position where row stub and column header
  // differ. Past that point an intermediate-looking label means the axes
  // disagree or the block is not square, not that the block ended.
  if (K < n_rows && looks_intermediate(row_key(K))) {
    throw FormatError((all_cols.count(row_key(K)) ? "label mismatch between axes at row header "
                                                  : "non-square intermediate block at row header ") +
                      describe(row_key(K)));
  }
  if (K < n_value_cols && looks_intermediate(col_key(K))) {
    throw FormatError((all_rows.count(col_key(K)) ? "label mismatch between axes at column header "
                                                  : "non-square intermediate block at column header ") +
                      describe(col_key(K)));
  }

  LabelCollector countries({});
  LabelCollector sectors({});
  std::vector<std::pair<std::size_t, std::size_t>> pos(K);
  for (std::size_t k = 0; k < K; ++k) {
    const Key key = col_key(k);
    pos[k] = {*countries.resolve(key.first), *sectors.resolve(key.second)};
  }
  const Dims dims{countries.size(), sectors.size()};
  if (dims.cells() != K) {
    throw FormatError("intermediate block has " + std::to_string(K) + " rows but " +
                      std::to_string(dims.n_nodes) + " countries x " +
                      std::to_string(dims.n_layers) + " sectors");
  }

  std::vector<Eigen::Index> supra(K);
  for (std::size_t k = 0; k < K; ++k) {
    supra[k] = static_cast<Eigen::Index>(supra_index(pos[k].first, pos[k].second, dims).value);
  }
  Matrix w = Matrix::Zero(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(K));
  std::size_t clamped = 0;
  for (std::size_t r = 0; r < K; ++r) {
    const auto& row = lines[2 + r];
    for (std::size_t c = 0; c < K; ++c) {
      const std::string& field = row[lay.first_value_col + c];
      if (csv::trim(field).empty()) continue;
      const auto v = csv::parse_double(field);
      if (!v) {
        throw ParseError("non-numeric value '" + field + "' in column " + describe(col_key(c)),
                         line_no[2 + r]);
      }
      w(supra[r], supra[c]) = checked_value(*v, opts.clamp_negatives, clamped, line_no[2 + r]);
    }
  }
  NetworkMeta meta = opts.meta;
  meta.clamped = clamped;
  return MultilayerNetwork(countries.take(), sectors.take(), std::move(w), std::move(meta));
}

MultilayerNetwork parse_wiot_wide(const std::filesystem::path& path, const WiotOptions& opts) {
  auto in = open_input(path);
  return parse_wiot_wide(in, opts);
}

MultilayerNetwork drop_zero_layers(const MultilayerNetwork& net) {
  const Dims dims = net.dims();
  const auto N = static_cast<Eigen::Index>(dims.n_nodes);
  const Matrix& w = net.supra();
  std::vector<std::size_t> keep;
  for (std::size_t l = 0; l < dims.n_layers; ++l) {
    const auto off = static_cast<Eigen::Index>(l) * N;
    const bool empty = w.middleRows(off, N).isZero(0.0) && w.middleCols(off, N).isZero(0.0);
    if (!empty) keep.push_back(l);
  }
  if (keep.size() == dims.n_layers) return net;
  if (keep.empty()) throw ArgumentError("every layer is empty");
  std::vector<Eigen::Index> src;
  for (std::size_t l : keep) {
    for (std::size_t n = 0; n < dims.n_nodes; ++n) {
      src.push_back(static_cast<Eigen::Index>(supra_index(n, l, dims).value));
    }
  }
  const auto m = static_cast<Eigen::Index>(src.size());
  Matrix out(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) out(i, j) = w(src[i], src[j]);
  }
  std::vector<std::string> labels;
  for (std::size_t l : keep) labels.push_back(net.layers()[l]);
  return MultilayerNetwork(net.nodes().labels(), std::move(labels), std::move(out), net.meta());
}

std::vector<std::string> read_label_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = csv::trim(line);
    if (!t.empty() && t.front() != '#') labels.push_back(t);
  }
  return labels;
}

MultilayerNetwork ingest(const IngestSpec& spec) {
  if (spec.path.empty()) throw ArgumentError("ingest: input path is required");
  if (spec.year < 1900) throw ArgumentError("ingest: year must be >= 1900");
  NetworkMeta meta;
  meta.year = spec.year;
  meta.source = spec.source.empty() ? spec.path.filename().string() : spec.source;

  auto net = [&]() -> MultilayerNetwork {
    switch (spec.format) {
      case InputFormat::long_csv: {
        LongCsvOptions opts;
        opts.clamp_negatives = spec.clamp_negatives;
        opts.meta = meta;
        if (spec.node_label_file) opts.node_labels = read_label_file(*spec.node_label_file);
        if (spec.layer_label_file) opts.layer_labels = read_label_file(*spec.layer_label_file);
        return parse_long(spec.path, opts);
      }
      case InputFormat::wiot_wide: {
        WiotOptions opts;
        opts.clamp_negatives = spec.clamp_negatives;
        opts.layout = spec.wiot;
        opts.meta = meta;
        return parse_wiot_wide(spec.path, opts);
      }
      case InputFormat::snapshot:
        return read_snapshot(spec.path);
    }
    throw ArgumentError("unknown input format");
  }();
  return spec.drop_zero_layers ? drop_zero_layers(net) : net;
}

}  // namespace mlion
