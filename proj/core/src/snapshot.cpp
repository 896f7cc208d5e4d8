#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "mlion/errors.hpp"
#include "mlion/io.hpp"

namespace mlion {

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

constexpr std::array<char, 4> kMagic{'M', 'L', 'I', 'O'};

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_string(std::ostream& out, const std::string& s) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

template <typename T>
T get(std::istream& in) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) {
    throw FormatError("snapshot truncated");
  }
  return v;
}

std::string get_string(std::istream& in) {
  const auto n = get<std::uint32_t>(in);
  if (n > (1u << 20)) throw FormatError("snapshot string length " + std::to_string(n) + " too large");
  std::string s(n, '\0');
  if (n && !in.read(s.data(), n)) throw FormatError("snapshot truncated");
  return s;
}

}  // namespace

// Layout: magic, u32 version, u64 N, u64 L, i32 year, u64 clamped,
// source, currency_unit, N node labels, L layer labels (u32 length-prefixed),
// then NL x NL f64 weights in row-major order.
void write_snapshot(const MultilayerNetwork& net, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, kSnapshotVersion);
  put<std::uint64_t>(out, net.n_nodes());
  put<std::uint64_t>(out, net.n_layers());
  put<std::int32_t>(out, net.meta().year);
  put<std::uint64_t>(out, net.meta().clamped);
  put_string(out, net.meta().source);
  put_string(out, net.meta().currency_unit);
  for (const auto& l : net.nodes().labels()) put_string(out, l);
  for (const auto& l : net.layers().labels()) put_string(out, l);
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = net.supra();
  out.write(reinterpret_cast<const char*>(rows.data()),
            static_cast<std::streamsize>(rows.size() * sizeof(double)));
  if (!out) throw Error("failed writing snapshot");
}

MultilayerNetwork read_snapshot(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw FormatError("not an MLIO snapshot (bad magic)");
  }
  const auto version = get<std::uint32_t>(in);
  if (version != kSnapshotVersion) {
    throw FormatError("unsupported snapshot version " + std::to_string(version));
  }
  const auto n = get<std::uint64_t>(in);
  const auto l = get<std::uint64_t>(in);
  if (n == 0 || l == 0 || n * l > 100000) throw FormatError("implausible snapshot dimensions");
  NetworkMeta meta;
  meta.year = get<std::int32_t>(in);
  meta.clamped = get<std::uint64_t>(in);
  meta.source = get_string(in);
  meta.currency_unit = get_string(in);
  std::vector<std::string> nodes(n), layers(l);
  for (auto& s : nodes) s = get_string(in);
  for (auto& s : layers) s = get_string(in);
  const auto cells = static_cast<Eigen::Index>(n * l);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows(cells, cells);
  if (!in.read(reinterpret_cast<char*>(rows.data()),
               static_cast<std::streamsize>(rows.size() * sizeof(double)))) {
    throw FormatError("snapshot truncated in weight block");
  }
  return MultilayerNetwork(std::move(nodes), std::move(layers), Matrix(rows), std::move(meta));
}

void write_snapshot(const MultilayerNetwork& net, const std::filesystem::path& path) {
  std::ostringstream buf(std::ios::binary);
  write_snapshot(net, buf);
  write_file_atomic(path, buf.str());
}

MultilayerNetwork read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open snapshot '" + path.string() + "'");
  return read_snapshot(in);
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open '" + path.string() + "'");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("sha256 initialisation failed");
  }
  std::array<char, 1 << 16> chunk{};
  while (in) {
    in.read(chunk.data(), chunk.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, chunk.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md.data(), &len);
  EVP_MD_CTX_free(ctx);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 0xF];
  }
  return hex;
}

}  // namespace mlion
