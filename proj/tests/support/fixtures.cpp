#include "fixtures.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace mlion::testing {

MultilayerNetwork t1() {
  Matrix w(4, 4);
  w << 0, 2, 1, 0,
       1, 0, 0, 3,
       0, 1, 0, 2,
       4, 0, 1, 0;
  return MultilayerNetwork({"u", "v"}, {"x", "y"}, w, {2014, "T1", "USD millions", 0});
}

namespace {

std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

MultilayerNetwork zero_network(std::size_t n_nodes, std::size_t n_layers) {
  const auto n = static_cast<Eigen::Index>(n_nodes * n_layers);
  return MultilayerNetwork(numbered("n", n_nodes), numbered("l", n_layers), Matrix::Zero(n, n));
}

MultilayerNetwork random_network(std::uint64_t seed, std::size_t n_nodes, std::size_t n_layers,
                                 double density) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(n_nodes * n_layers);
  Matrix w = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double keep = unit(rng);
      const double v = 10.0 * (1.0 - unit(rng));
      if (keep < density) w(i, j) = v;
    }
  }
  return MultilayerNetwork(numbered("n", n_nodes), numbered("l", n_layers), std::move(w));
}

MultilayerNetwork random_symmetric_network(std::uint64_t seed, std::size_t n_nodes,
                                           std::size_t n_layers, double density) {
  return symmetrize(random_network(seed, n_nodes, n_layers, density));
}

Matrix random_symmetric_matrix(std::uint64_t seed, std::size_t n, double spectral_norm) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto m = static_cast<Eigen::Index>(n);
  Matrix a(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) a(i, j) = normal(rng);
  }
  Matrix s = 0.5 * (a + a.transpose());
  const double norm = Eigen::SelfAdjointEigenSolver<Matrix>(s, Eigen::EigenvaluesOnly)
                          .eigenvalues()
                          .cwiseAbs()
                          .maxCoeff();
  s *= spectral_norm / norm;
  return 0.5 * (s + s.transpose());
}

PlantedNetwork planted_partition(std::uint64_t seed, std::size_t blocks, std::size_t n_layers,
                                 std::size_t nodes_per_block) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> strong(5.0, 10.0);
  std::uniform_real_distribution<double> weak(0.0, 0.5);
  const std::size_t N = blocks * nodes_per_block;
  const Dims dims{N, n_layers};
  const auto n = static_cast<Eigen::Index>(dims.cells());
  Matrix w = Matrix::Zero(n, n);
  std::vector<std::size_t> truth(dims.cells());
  for (std::size_t a = 0; a < dims.cells(); ++a) {
    const Cell ca = cell_at(SupraIndex{a}, dims);
    truth[a] = ca.node / nodes_per_block;
    for (std::size_t b = 0; b < dims.cells(); ++b) {
      if (a == b) continue;
      const Cell cb = cell_at(SupraIndex{b}, dims);
      const bool same = ca.node / nodes_per_block == cb.node / nodes_per_block;
      w(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = same ? strong(rng) : weak(rng);
    }
  }
  return {MultilayerNetwork(numbered("c", N), numbered("s", n_layers), std::move(w)),
          std::move(truth)};
}

MultilayerNetwork two_cliques(std::size_t size) {
  const auto n = static_cast<Eigen::Index>(2 * size);
  Matrix w = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j && (i < static_cast<Eigen::Index>(size)) == (j < static_cast<Eigen::Index>(size))) {
        w(i, j) = 1.0;
      }
    }
  }
  return MultilayerNetwork(numbered("k", 2 * size), {"all"}, std::move(w));
}

const std::vector<std::string>& wiod_countries() {
  static const std::vector<std::string> kCountries{
      "AUS", "AUT", "BEL", "BGR", "BRA", "CAN", "CHE", "CHN", "CYP", "CZE", "DEU",
      "DNK", "ESP", "EST", "FIN", "FRA", "GBR", "GRC", "HRV", "HUN", "IDN", "IND",
      "IRL", "ITA", "JPN", "KOR", "LTU", "LUX", "LVA", "MEX", "MLT", "NLD", "NOR",
      "POL", "PRT", "ROU", "RUS", "SVK", "SVN", "SWE", "TUR", "TWN", "USA", "ROW"};
  return kCountries;
}

const std::vector<std::string>& wiod_sectors() {
  static const std::vector<std::string> kSectors{
      "A01",     "A02",     "A03",     "B",       "C10-C12", "C13-C15", "C16",
      "C17",     "C18",     "C19",     "C20",     "C21",     "C22",     "C23",
      "C24",     "C25",     "C26",     "C27",     "C28",     "C29",     "C30",
      "C31_C32", "C33",     "D35",     "E36",     "E37-E39", "F",       "G45",
      "G46",     "G47",     "H49",     "H50",     "H51",     "H52",     "H53",
      "I",       "J58",     "J59_J60", "J61",     "J62_J63", "K64",     "K65",
      "K66",     "L68",     "M69_M70", "M71",     "M72",     "M73",     "M74_M75",
      "N",       "O84",     "P85",     "Q",       "R_S",     "T",       "U"};
  return kSectors;
}

MultilayerNetwork wiod_shaped(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::lognormal_distribution<double> flow(0.0, 2.0);
  const auto& countries = wiod_countries();
  const auto& sectors = wiod_sectors();
  const Dims dims{countries.size(), sectors.size()};
  const auto n = static_cast<Eigen::Index>(dims.cells());
  // Country and sector size factors give the flows a realistic spread.
  std::vector<double> country_size(dims.n_nodes), sector_size(dims.n_layers);
  for (auto& s : country_size) s = std::exp(2.0 * unit(rng));
  for (auto& s : sector_size) s = std::exp(1.5 * unit(rng));
  Matrix w = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Cell buyer = cell_at(SupraIndex{static_cast<std::size_t>(j)}, dims);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Cell seller = cell_at(SupraIndex{static_cast<std::size_t>(i)}, dims);
      const double keep = unit(rng);
      const double v = flow(rng);
      if (seller.layer + 1 == dims.n_layers || buyer.layer + 1 == dims.n_layers) continue;
      const bool domestic = seller.node == buyer.node;
      if (!domestic && keep < 0.35) continue;
      w(i, j) = v * country_size[seller.node] * sector_size[seller.layer] * (domestic ? 50.0 : 1.0);
    }
  }
  return MultilayerNetwork(countries, sectors, std::move(w), {2014, "synthetic", "USD millions", 0});
}

std::string wiot_wide_string(const MultilayerNetwork& net) {
  const Dims dims = net.dims();
  std::ostringstream out;
  // Country-major axes as in the published tables.
  std::vector<Cell> order;
  for (std::size_t c = 0; c < dims.n_nodes; ++c) {
    for (std::size_t s = 0; s < dims.n_layers; ++s) order.push_back({c, s});
  }
  out << ",";
  for (const Cell& c : order) out << "," << net.nodes()[c.node];
  out << ",TOT\n,";
  for (const Cell& c : order) out << "," << net.layers()[c.layer];
  out << ",CONS_h\n";
  char buf[40];
  for (const Cell& r : order) {
    out << net.nodes()[r.node] << "," << net.layers()[r.layer];
    double row_total = 0.0;
    for (const Cell& c : order) {
      const double v = net.weight(r, c);
      row_total += v;
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << "," << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", row_total * 0.5);
    out << "," << buf << "\n";
  }
  out << "TOT,II_fob";
  for (std::size_t k = 0; k <= order.size(); ++k) out << ",1";
  out << "\nTOT,VA";
  for (std::size_t k = 0; k <= order.size(); ++k) out << ",2";
  out << "\n";
  return out.str();
}

void write_wiot_wide(const MultilayerNetwork& net, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  out << wiot_wide_string(net);
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("mlion_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace mlion::testing
