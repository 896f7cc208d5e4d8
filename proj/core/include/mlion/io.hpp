#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "mlion/community.hpp"
#include "mlion/layers.hpp"
#include "mlion/network.hpp"
#include "mlion/partition.hpp"

namespace mlion {

enum class InputFormat { long_csv, wiot_wide, snapshot };

// Column layout of a wide WIOT table. After `skip_lines` preamble lines come
// two header lines (country codes, then sector codes, one per value column),
// then one row per (country, sector) with the row stubs in the given columns.
struct WiotLayout {
  std::size_t skip_lines = 0;
  std::size_t row_country_col = 0;
  std::size_t row_sector_col = 1;
  std::size_t first_value_col = 2;
};

struct IngestSpec {
  InputFormat format = InputFormat::long_csv;
  std::filesystem::path path;
  bool clamp_negatives = true;
  bool drop_zero_layers = false;
  int year = 2014;
  std::string source;
  // Long format only: explicit label order (one label per line files).
  std::optional<std::filesystem::path> node_label_file;
  std::optional<std::filesystem::path> layer_label_file;
  WiotLayout wiot;
};

struct LongCsvOptions {
  bool clamp_negatives = true;
  std::vector<std::string> node_labels;
  std::vector<std::string> layer_labels;
  NetworkMeta meta;
};

// Long CSV: source_country,source_sector,target_country,target_sector,value.
MultilayerNetwork parse_long(std::istream& in, const LongCsvOptions& opts = {});
MultilayerNetwork parse_long(const std::filesystem::path& path, const LongCsvOptions& opts = {});
void write_long(const MultilayerNetwork& net, std::ostream& out);

struct WiotOptions {
  bool clamp_negatives = true;
  WiotLayout layout;
  NetworkMeta meta;
};

// Extracts the square intermediate block (row = seller, column = buyer).
MultilayerNetwork parse_wiot_wide(std::istream& in, const WiotOptions& opts = {});
MultilayerNetwork parse_wiot_wide(const std::filesystem::path& path, const WiotOptions& opts = {});

// Removes layers whose rows and columns are entirely zero.
MultilayerNetwork drop_zero_layers(const MultilayerNetwork& net);

MultilayerNetwork ingest(const IngestSpec& spec);

std::vector<std::string> read_label_file(const std::filesystem::path& path);

// Versioned little-endian binary snapshot ("MLIO" magic).
inline constexpr std::uint32_t kSnapshotVersion = 1;
void write_snapshot(const MultilayerNetwork& net, std::ostream& out);
MultilayerNetwork read_snapshot(std::istream& in);
void write_snapshot(const MultilayerNetwork& net, const std::filesystem::path& path);
MultilayerNetwork read_snapshot(const std::filesystem::path& path);

// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

// Provenance line written as the first line of every report CSV.
struct ReportHeader {
  std::string tool_version;
  std::string input_digest;
  std::string config;

  std::string comment_line() const;
};

std::string tool_version();

// Writes via a temporary sibling file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string partition_csv(const Partition& partition, const MultilayerNetwork& net,
                          const ReportHeader& header);
std::string trace_csv(const SweepTrace& trace, const ReportHeader& header);
std::string report_country_csv(const CommunityReport& report, const ReportHeader& header);
std::string report_sector_csv(const CommunityReport& report, const ReportHeader& header);
std::string grid_csv(const CommunityReport& report, const MultilayerNetwork& net,
                     const ReportHeader& header);
std::string layer_table_csv(const LayerPairTable& table, const ReportHeader& header);
std::string ranking_csv(const std::vector<RankedCell>& ranking, const MultilayerNetwork& net,
                        const ReportHeader& header);
std::string matrix_csv(const Matrix& m, const std::vector<std::string>& labels,
                       const ReportHeader& header);

// Partition file as written by partition_csv. Labels are taken in first
// appearance order.
struct PartitionFile {
  std::vector<std::string> node_labels;
  std::vector<std::string> layer_labels;
  Partition partition;
};
PartitionFile read_partition_csv(std::istream& in);
PartitionFile read_partition_csv(const std::filesystem::path& path);

}  // namespace mlion
