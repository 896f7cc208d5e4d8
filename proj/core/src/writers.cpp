#include <fstream>
#include <sstream>
#include <system_error>
#include <unordered_map>

#include "mlion/csv.hpp"
#include "mlion/errors.hpp"
#include "mlion/io.hpp"

#ifndef MLION_VERSION_STRING
#define MLION_VERSION_STRING "0.0.0"
#endif

namespace mlion {

namespace {

std::string count_str(std::size_t v) { return std::to_string(v); }

std::string report_rows(const CommunityReport& report, const std::vector<ReportRow>& rows,
                        const std::string& key, const ReportHeader& header) {
  std::ostringstream out;
  out << header.comment_line() << '\n';
  std::vector<std::string> cols{key};
  for (std::size_t c = 0; c < report.top_k; ++c) cols.push_back("community_" + std::to_string(c));
  for (const char* c : {"other", "isolated", "dominant", "gini"}) cols.emplace_back(c);
  out << csv::join(cols) << '\n';
  for (const auto& row : rows) {
    std::vector<std::string> f{row.label};
    for (auto c : row.top_counts) f.push_back(count_str(c));
    f.push_back(count_str(row.other));
    f.push_back(count_str(row.isolated));
    f.push_back(count_str(row.dominant));
    f.push_back(csv::format_number(row.gini));
    out << csv::join(f) << '\n';
  }
  return out.str();
}

}  // namespace

std::string tool_version() { return MLION_VERSION_STRING; }

std::string ReportHeader::comment_line() const {
  std::string line = "# mlion " + (tool_version.empty() ? mlion::tool_version() : tool_version);
  line += " input_sha256=" + (input_digest.empty() ? std::string("-") : input_digest);
  line += " config=" + (config.empty() ? std::string("-") : config);
  return line;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out.flush()) throw Error("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename into '" + path.string() + "': " + ec.message());
  }
}

std::string partition_csv(const Partition& partition, const MultilayerNetwork& net,
                          const ReportHeader& header) {
  if (partition.dims() != net.dims()) throw ArgumentError("partition does not match network");
  std::ostringstream out;
  out << header.comment_line() << '\n' << "country,sector,community_id,is_isolated\n";
  for (std::size_t i = 0; i < partition.size(); ++i) {
    const Cell c = cell_at(SupraIndex{i}, net.dims());
    out << csv::join({net.nodes()[c.node], net.layers()[c.layer],
                      count_str(partition.community_of(i)),
                      partition.is_isolated(i) ? "1" : "0"})
        << '\n';
  }
  return out.str();
}

std::string trace_csv(const SweepTrace& trace, const ReportHeader& header) {
  std::ostringstream out;
  out << header.comment_line() << '\n' << "threshold,components,quality\n";
  for (const auto& s : trace.steps) {
    out << csv::format_number(s.threshold) << ',' << s.n_components << ','
        << csv::format_number(s.quality) << '\n';
  }
  return out.str();
}

std::string report_country_csv(const CommunityReport& report, const ReportHeader& header) {
  return report_rows(report, report.per_country, "country", header);
}

std::string report_sector_csv(const CommunityReport& report, const ReportHeader& header) {
  return report_rows(report, report.per_sector, "sector", header);
}

std::string grid_csv(const CommunityReport& report, const MultilayerNetwork& net,
                     const ReportHeader& header) {
  std::ostringstream out;
  out << header.comment_line() << '\n';
  std::vector<std::string> cols{"country"};
  for (const auto& l : net.layers().labels()) cols.push_back(l);
  out << csv::join(cols) << '\n';
  for (std::size_t n = 0; n < report.membership_grid.size(); ++n) {
    std::vector<std::string> f{net.nodes()[n]};
    for (long long id : report.membership_grid[n]) f.push_back(std::to_string(id));
    out << csv::join(f) << '\n';
  }
  return out.str();
}

std::string layer_table_csv(const LayerPairTable& table, const ReportHeader& header) {
  return matrix_csv(table.values, table.layer_labels, header);
}

std::string ranking_csv(const std::vector<RankedCell>& ranking, const MultilayerNetwork& net,
                        const ReportHeader& header) {
  std::ostringstream out;
  out << header.comment_line() << '\n' << "rank,country,sector,strength\n";
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    const auto& r = ranking[i];
    out << csv::join({count_str(i + 1), net.nodes()[r.cell.node], net.layers()[r.cell.layer],
                      csv::format_number(r.strength)})
        << '\n';
  }
  return out.str();
}

std::string matrix_csv(const Matrix& m, const std::vector<std::string>& labels,
                       const ReportHeader& header) {
  if (labels.size() != static_cast<std::size_t>(m.rows()) || m.rows() != m.cols()) {
    throw ArgumentError("matrix_csv: labels do not match a square matrix");
  }
  std::ostringstream out;
  out << header.comment_line() << '\n';
  std::vector<std::string> cols{"label"};
  cols.insert(cols.end(), labels.begin(), labels.end());
  out << csv::join(cols) << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<std::string> f{labels[static_cast<std::size_t>(i)]};
    for (Eigen::Index j = 0; j < m.cols(); ++j) f.push_back(csv::format_number(m(i, j)));
    out << csv::join(f) << '\n';
  }
  return out.str();
}

PartitionFile read_partition_csv(std::istream& in) {
  csv::Reader reader(in);
  const auto header = reader.next();
  if (!header || header->size() != 4 || csv::trim((*header)[0]) != "country" ||
      csv::trim((*header)[2]) != "community_id") {
    throw ParseError("expected header country,sector,community_id,is_isolated", reader.line());
  }
  struct Row {
    std::size_t node, layer, community;
  };
  std::vector<std::string> nodes, layers;
  std::unordered_map<std::string, std::size_t> node_ix, layer_ix;
  std::vector<Row> rows;
  while (auto f = reader.next()) {
    if (f->size() != 4) throw ParseError("expected 4 fields", reader.line());
    const std::string node = csv::trim((*f)[0]);
    const std::string layer = csv::trim((*f)[1]);
    const auto id = csv::parse_double((*f)[2]);
    if (!id || *id < 0 || *id != static_cast<double>(static_cast<std::size_t>(*id))) {
      throw ParseError("community_id must be a nonnegative integer", reader.line());
    }
    auto [ni, new_node] = node_ix.try_emplace(node, nodes.size());
    if (new_node) nodes.push_back(node);
    auto [li, new_layer] = layer_ix.try_emplace(layer, layers.size());
    if (new_layer) layers.push_back(layer);
    rows.push_back({ni->second, li->second, static_cast<std::size_t>(*id)});
  }
  const Dims dims{nodes.size(), layers.size()};
  if (rows.size() != dims.cells() || rows.empty()) {
    throw FormatError("partition file has " + std::to_string(rows.size()) + " rows for " +
                      std::to_string(dims.n_nodes) + " countries x " +
                      std::to_string(dims.n_layers) + " sectors");
  }
  std::vector<std::size_t> assignment(dims.cells());
  std::vector<bool> seen(dims.cells(), false);
  for (const auto& r : rows) {
    const auto idx = supra_index(r.node, r.layer, dims).value;
    if (seen[idx]) throw FormatError("partition file lists a cell twice");
    seen[idx] = true;
    assignment[idx] = r.community;
  }
  return {std::move(nodes), std::move(layers), Partition(dims, std::move(assignment))};
}

PartitionFile read_partition_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open partition file '" + path.string() + "'");
  return read_partition_csv(in);
}

}  // namespace mlion
