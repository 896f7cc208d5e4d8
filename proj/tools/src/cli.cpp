#include "mlion/cli.hpp"

#include <filesystem>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mlion/community.hpp"
#include "mlion/csv.hpp"
#include "mlion/errors.hpp"
#include "mlion/io.hpp"
#include "mlion/layers.hpp"
#include "mlion/metrics.hpp"

namespace mlion {

namespace {

namespace fs = std::filesystem;

// Bad input or configuration discovered after argument parsing.
struct UsageFailure : Error {
  using Error::Error;
};

struct InputOptions {
  std::string path;
  std::string format = "long";
  bool no_clamp = false;
  bool drop_zero_layers = false;
  int year = 2014;
  std::string node_labels;
  std::string layer_labels;
  std::size_t wiot_skip_lines = 0;
};

struct OutputOptions {
  std::string dir = ".";
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("-i,--input", in.path, "Input file")->required();
  cmd->add_option("-f,--format", in.format, "Input format")
      ->check(CLI::IsMember({"long", "wiot-wide", "snapshot"}));
  cmd->add_flag("--no-clamp", in.no_clamp, "Reject negative values instead of clamping them");
  cmd->add_flag("--drop-zero-layers", in.drop_zero_layers, "Drop sectors with no flows");
  cmd->add_option("--year", in.year, "Table year")->check(CLI::Range(1900, 9999));
  cmd->add_option("--node-labels", in.node_labels, "Country label file (long format)");
  cmd->add_option("--layer-labels", in.layer_labels, "Sector label file (long format)");
  cmd->add_option("--wiot-skip-lines", in.wiot_skip_lines, "Preamble lines before the WIOT headers");
}

void add_output_options(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("-o,--output-dir", o.dir, "Output directory")->envname("MLION_OUTPUT_DIR");
}

struct Loaded {
  MultilayerNetwork net;
  std::string digest;
};

Loaded load(const InputOptions& in) {
  try {
    IngestSpec spec;
    spec.format = in.format == "wiot-wide"  ? InputFormat::wiot_wide
                  : in.format == "snapshot" ? InputFormat::snapshot
                                            : InputFormat::long_csv;
    spec.path = in.path;
    spec.clamp_negatives = !in.no_clamp;
    spec.drop_zero_layers = in.drop_zero_layers;
    spec.year = in.year;
    spec.source = fs::path(in.path).filename().string();
    if (!in.node_labels.empty()) spec.node_label_file = fs::path(in.node_labels);
    if (!in.layer_labels.empty()) spec.layer_label_file = fs::path(in.layer_labels);
    spec.wiot.skip_lines = in.wiot_skip_lines;
    auto net = ingest(spec);
    return {std::move(net), sha256_file(in.path)};
  } catch (const Error& e) {
    throw UsageFailure(std::string("cannot load input: ") + e.what());
  }
}

PartitionFile load_partition(const std::string& path, const MultilayerNetwork& net) {
  PartitionFile file;
  try {
    file = read_partition_csv(fs::path(path));
  } catch (const Error& e) {
    throw UsageFailure(std::string("cannot load partition: ") + e.what());
  }
  if (file.node_labels != net.nodes().labels() || file.layer_labels != net.layers().labels()) {
    throw UsageFailure("partition file labels do not match the network");
  }
  return file;
}

class Output {
 public:
  Output(const std::string& dir, std::string digest, std::string config, std::ostream& log)
      : dir_(dir), header_{tool_version(), std::move(digest), std::move(config)}, log_(log) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) {
      throw UsageFailure("cannot create output directory '" + dir_.string() + "'");
    }
  }

  const ReportHeader& header() const { return header_; }

  void write(const std::string& name, const std::string& content) {
    write_file_atomic(dir_ / name, content);
    log_ << "wrote " << (dir_ / name).string() << '\n';
  }

  fs::path path(const std::string& name) const { return dir_ / name; }

 private:
  fs::path dir_;
  ReportHeader header_;
  std::ostream& log_;
};

std::string num(double v) { return csv::format_number(v); }

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

// ---------------------------------------------------------------------------

void cmd_ingest(const InputOptions& in, const OutputOptions& o, std::ostream& out) {
  const auto loaded = load(in);
  Output dst(o.dir, loaded.digest, "cmd=ingest", out);
  write_snapshot(loaded.net, dst.path("network.mlio"));
  out << "wrote " << dst.path("network.mlio").string() << '\n';
  out << "countries=" << loaded.net.n_nodes() << " sectors=" << loaded.net.n_layers()
      << " cells=" << loaded.net.n_cells() << " clamped=" << loaded.net.meta().clamped << '\n';
}

void cmd_metrics(const InputOptions& in, const OutputOptions& o, bool centrality,
                 std::ostream& out) {
  const auto loaded = load(in);
  const auto& net = loaded.net;
  Output dst(o.dir, loaded.digest, std::string("cmd=metrics;centrality=") + (centrality ? "1" : "0"),
             out);

  struct Column {
    std::string name;
    std::vector<std::string> values;
  };
  std::vector<Column> cols;
  auto add_vector = [&](std::string name, const Vector& v) {
    Column c{std::move(name), {}};
    for (Eigen::Index i = 0; i < v.size(); ++i) c.values.push_back(num(v(i)));
    cols.push_back(std::move(c));
  };
  for (auto dir : {Direction::in, Direction::out}) {
    const std::string d = dir == Direction::in ? "in" : "out";
    add_vector("strength_" + d + "_intra", strength_table(net, dir, StrengthKind::intralayer));
    add_vector("strength_" + d + "_inter", strength_table(net, dir, StrengthKind::total_interlayer));
    add_vector("strength_" + d + "_total", strength_table(net, dir, StrengthKind::total));
  }
  const auto bin = binarize(net);
  add_vector("degree_in", strength_table(bin, Direction::in, StrengthKind::total));
  add_vector("degree_out", strength_table(bin, Direction::out, StrengthKind::total));
  for (auto dir : {Direction::in, Direction::out}) {
    Column c{dir == Direction::in ? "hhi_in" : "hhi_out", {}};
    for (const auto& v : hhi_table(net, dir)) c.values.push_back(opt_num(v));
    cols.push_back(std::move(c));
  }
  if (centrality) {
    for (auto mode : {CommunicabilityMode::binary, CommunicabilityMode::weighted}) {
      const auto field = communicability(net, mode);
      const std::string m = mode == CommunicabilityMode::binary ? "binary" : "weighted";
      add_vector("rc_" + m, receive_totals(field));
      add_vector("bc_" + m, broadcast_totals(field));
    }
  }

  std::ostringstream s;
  s << dst.header().comment_line() << '\n';
  std::vector<std::string> head{"country", "sector"};
  for (const auto& c : cols) head.push_back(c.name);
  s << csv::join(head) << '\n';
  const Dims dims = net.dims();
  for (std::size_t a = 0; a < dims.cells(); ++a) {
    const Cell cell = cell_at(SupraIndex{a}, dims);
    std::vector<std::string> row{net.nodes()[cell.node], net.layers()[cell.layer]};
    for (const auto& c : cols) row.push_back(c.values[a]);
    s << csv::join(row) << '\n';
  }
  dst.write("metrics.csv", s.str());
}

std::vector<PairStat> network_stats() {
  return {PairStat::connectivity, PairStat::intensity, PairStat::intensity_norm,
          PairStat::overlap_bin,  PairStat::overlap_w, PairStat::corr_bin,
          PairStat::corr_w};
}

PairStat parse_stat(const std::string& name) {
  try {
    return pair_stat_from_string(name);
  } catch (const Error& e) {
    throw UsageFailure(e.what());
  }
}

void cmd_layers(const InputOptions& in, const OutputOptions& o, const std::string& stat,
                std::ostream& out) {
  const auto loaded = load(in);
  std::vector<PairStat> stats;
  if (stat == "all") {
    stats = network_stats();
  } else {
    stats = {parse_stat(stat)};
    if (stats[0] == PairStat::jaccard) throw UsageFailure("jaccard tables come from `similarity`");
  }
  Output dst(o.dir, loaded.digest, "cmd=layers;stat=" + stat, out);
  for (auto s : stats) {
    dst.write("layers_" + std::string(to_string(s)) + ".csv",
              layer_table_csv(layer_pair_table(loaded.net, s), dst.header()));
  }
}

void cmd_dendrogram(const InputOptions& in, const OutputOptions& o, const std::string& table,
                    const std::string& partition_path, std::ostream& out) {
  const auto loaded = load(in);
  const PairStat stat = parse_stat(table);
  LayerPairTable t;
  if (stat == PairStat::jaccard) {
    if (partition_path.empty()) throw UsageFailure("--table jaccard needs --partition");
    t = jaccard_table(load_partition(partition_path, loaded.net).partition,
                      loaded.net.layers().labels());
  } else {
    t = layer_pair_table(loaded.net, stat);
  }
  if (!t.values.allFinite()) {
    throw UndefinedStatistic("table '" + table + "' has undefined entries; cannot cluster");
  }
  Output dst(o.dir, loaded.digest, "cmd=dendrogram;table=" + table, out);
  const auto d = hcluster_layers(t.values, t.layer_labels);
  dst.write("dendrogram_" + table + ".nwk", d.to_newick() + "\n");
}

struct DetectOptions {
  std::size_t r = 100;
  std::size_t min_size = 30;
  std::size_t top_k = 2;
  std::string convention = "all";
  std::string gini = "singletons";
  std::vector<std::string> emit{"communities", "trace"};
};

void add_detect_options(CLI::App* cmd, DetectOptions& d) {
  cmd->add_option("--r", d.r, "Threshold steps")->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
  cmd->add_option("--convention", d.convention, "Distance mean convention")
      ->check(CLI::IsMember({"all", "exclude-self"}));
}

MeanConvention convention(const DetectOptions& d) {
  return d.convention == "exclude-self" ? MeanConvention::exclude_self : MeanConvention::all_entries;
}

std::string detect_config(const std::string& cmd, const DetectOptions& d) {
  return "cmd=" + cmd + ";r=" + std::to_string(d.r) + ";convention=" + d.convention +
         ";min_size=" + std::to_string(d.min_size) + ";top_k=" + std::to_string(d.top_k) +
         ";gini=" + d.gini;
}

void cmd_communities(const InputOptions& in, const OutputOptions& o, const DetectOptions& d,
                     std::ostream& out) {
  const auto loaded = load(in);
  const auto& net = loaded.net;
  const std::set<std::string> emit(d.emit.begin(), d.emit.end());
  Output dst(o.dir, loaded.digest, detect_config("communities", d), out);

  const auto dist = detection_distances(net, convention(d));
  const auto result = sweep_thresholds(dist, net.dims(), d.r);
  const auto& p = result.partition;

  if (emit.count("communities")) {
    const auto report = community_report(
        p, net, d.min_size, d.top_k,
        d.gini == "pooled" ? IsolatedGini::single_class : IsolatedGini::singleton_classes);
    dst.write("partition.csv", partition_csv(p, net, dst.header()));
    dst.write("report_country.csv", report_country_csv(report, dst.header()));
    dst.write("report_sector.csv", report_sector_csv(report, dst.header()));
    dst.write("grid.csv", grid_csv(report, net, dst.header()));
  }
  if (emit.count("trace")) dst.write("trace.csv", trace_csv(result.trace, dst.header()));
  if (emit.count("rankings")) {
    for (std::size_t c = 0; c < std::min(d.top_k, p.n_communities()); ++c) {
      dst.write("ranking_" + std::to_string(c) + ".csv",
                ranking_csv(rank_members(net, p.members(c), RankDirection::sum), net, dst.header()));
    }
  }
  if (emit.count("fields")) {
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < net.n_cells(); ++a) labels.push_back(net.cell_label(cell_at(SupraIndex{a}, net.dims())));
    dst.write("distance.csv", matrix_csv(dist.xi, labels, dst.header()));
  }

  out << "communities=" << p.n_communities() << " isolated=" << p.n_isolated()
      << " threshold=" << num(p.threshold()) << " quality=" << num(p.quality());
  if (result.trace.degenerate) out << " degenerate=1";
  out << '\n';
  out << "largest:";
  for (std::size_t c = 0; c < std::min<std::size_t>(5, p.n_communities()); ++c) out << ' ' << p.sizes()[c];
  out << '\n';
}

void cmd_rank(const InputOptions& in, const OutputOptions& o, const DetectOptions& d,
              std::size_t community, const std::string& partition_path,
              const std::string& direction, std::ostream& out) {
  const auto loaded = load(in);
  const auto& net = loaded.net;
  Partition p;
  if (!partition_path.empty()) {
    p = load_partition(partition_path, net).partition;
  } else {
    DetectionOptions opts;
    opts.r = d.r;
    opts.convention = convention(d);
    p = detect_communities(net, opts).partition;
  }
  if (community >= p.n_communities()) {
    throw UsageFailure("community " + std::to_string(community) + " does not exist (" +
                       std::to_string(p.n_communities()) + " communities)");
  }
  const RankDirection dir = direction == "in"    ? RankDirection::in
                            : direction == "out" ? RankDirection::out
                                                 : RankDirection::sum;
  Output dst(o.dir, loaded.digest,
             detect_config("rank", d) + ";community=" + std::to_string(community) +
                 ";direction=" + direction + (partition_path.empty() ? "" : ";partition=file"),
             out);
  dst.write("ranking_" + std::to_string(community) + ".csv",
            ranking_csv(rank_members(net, p.members(community), dir), net, dst.header()));
}

void cmd_aggregate(const InputOptions& in, const OutputOptions& o, const DetectOptions& d,
                   std::ostream& out) {
  const auto loaded = load(in);
  Output dst(o.dir, loaded.digest, detect_config("aggregate", d), out);
  const auto mono = aggregate_monolayer(loaded.net);
  std::ostringstream s;
  write_long(mono, s);
  dst.write("aggregate.csv", s.str());
  DetectionOptions opts;
  opts.r = d.r;
  opts.convention = convention(d);
  const auto result = detect_communities(mono, opts);
  dst.write("partition_monolayer.csv", partition_csv(result.partition, mono, dst.header()));
  dst.write("trace_monolayer.csv", trace_csv(result.trace, dst.header()));
  out << "communities=" << result.partition.n_communities()
      << " isolated=" << result.partition.n_isolated() << '\n';
}

void cmd_similarity(const InputOptions& in, const OutputOptions& o,
                    const std::string& partition_path, std::ostream& out) {
  const auto loaded = load(in);
  const auto file = load_partition(partition_path, loaded.net);
  Output dst(o.dir, loaded.digest, "cmd=similarity", out);
  dst.write("jaccard.csv",
            layer_table_csv(jaccard_table(file.partition, loaded.net.layers().labels()), dst.header()));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multilayer input-output network analysis"};
  app.name("mlion");
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  InputOptions in;
  OutputOptions o;
  DetectOptions d;
  bool no_centrality = false;
  std::string stat = "all";
  std::string table = "overlap_w";
  std::string partition_path;
  std::size_t community = 0;
  std::string direction = "sum";

  auto* ingest_cmd = app.add_subcommand("ingest", "Validate the input and cache it as a snapshot");
  auto* metrics_cmd = app.add_subcommand("metrics", "Strength, degree, HHI and centrality table");
  auto* layers_cmd = app.add_subcommand("layers", "Sector-pair tables");
  auto* dendro_cmd = app.add_subcommand("dendrogram", "Average-linkage tree of sectors (Newick)");
  auto* comm_cmd = app.add_subcommand("communities", "Community detection and reports");
  auto* rank_cmd = app.add_subcommand("rank", "Rank the members of one community");
  auto* agg_cmd = app.add_subcommand("aggregate", "Mono-layer aggregate and its communities");
  auto* sim_cmd = app.add_subcommand("similarity", "Jaccard sector similarity from a partition");

  for (auto* cmd : {ingest_cmd, metrics_cmd, layers_cmd, dendro_cmd, comm_cmd, rank_cmd, agg_cmd, sim_cmd}) {
    add_input_options(cmd, in);
    add_output_options(cmd, o);
  }
  metrics_cmd->add_flag("--no-centrality", no_centrality, "Skip communicability centralities");
  layers_cmd->add_option("--stat", stat, "Table kind or 'all'");
  dendro_cmd->add_option("--table", table, "Table to cluster on");
  dendro_cmd->add_option("--partition", partition_path, "Partition CSV (jaccard table)");
  for (auto* cmd : {comm_cmd, rank_cmd, agg_cmd}) add_detect_options(cmd, d);
  comm_cmd->add_option("--min-size", d.min_size, "Smallest community shown in the grid")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000000000}));
  comm_cmd->add_option("--top-k", d.top_k, "Communities tallied in the reports");
  comm_cmd->add_option("--gini", d.gini, "Isolated cells in the Gini index")
      ->check(CLI::IsMember({"singletons", "pooled"}));
  comm_cmd->add_option("--emit", d.emit, "Outputs to write")
      ->delimiter(',')
      ->check(CLI::IsMember({"communities", "trace", "rankings", "fields"}));
  rank_cmd->add_option("--community", community, "Community id")->required();
  rank_cmd->add_option("--partition", partition_path, "Partition CSV (skips detection)");
  rank_cmd->add_option("--direction", direction, "Strength direction")
      ->check(CLI::IsMember({"in", "out", "sum"}));
  sim_cmd->add_option("--partition", partition_path, "Partition CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ingest_cmd) cmd_ingest(in, o, out);
    if (*metrics_cmd) cmd_metrics(in, o, !no_centrality, out);
    if (*layers_cmd) cmd_layers(in, o, stat, out);
    if (*dendro_cmd) cmd_dendrogram(in, o, table, partition_path, out);
    if (*comm_cmd) cmd_communities(in, o, d, out);
    if (*rank_cmd) cmd_rank(in, o, d, community, partition_path, direction, out);
    if (*agg_cmd) cmd_aggregate(in, o, d, out);
    if (*sim_cmd) cmd_similarity(in, o, partition_path, out);
  } catch (const UsageFailure& e) {
    err << "mlion: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "mlion: " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitOk;
}

}  // namespace mlion
