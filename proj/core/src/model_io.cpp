#include "lgp/model_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace lgp {

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(bytes, 8);
}

void put_f64(std::ostream& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  if (!in) throw IoError("model: truncated file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

}  // namespace

void write_model(std::ostream& out, const InformationState& state) {
  const UniformGrid& grid = state.grid();
  const HyperParams& hp = state.hyperparams();
  const int d = grid.dim();

  out.write(kModelMagic, sizeof(kModelMagic));
  put_u64(out, kModelFormatVersion);
  put_u64(out, static_cast<std::uint64_t>(d));
  for (int k = 0; k < d; ++k) put_f64(out, grid.lower()[k]);
  put_f64(out, grid.spacing());
  for (int k = 0; k < d; ++k) put_u64(out, static_cast<std::uint64_t>(grid.counts()[k]));
  put_f64(out, hp.sigma_se);
  for (int k = 0; k < d; ++k) put_f64(out, hp.lengthscales[k]);
  put_f64(out, hp.sigma_y);
  put_f64(out, hp.r);
  put_f64(out, hp.r_star);
  put_f64(out, state.y_mean());
  put_u64(out, state.n_measurements());

  const auto iota = state.iota_entries();
  put_u64(out, iota.size());
  for (const auto& [j, v] : iota) {
    put_u64(out, static_cast<std::uint64_t>(j));
    put_f64(out, v);
  }

  const auto imat = state.imat_entries();
  put_u64(out, imat.size());
  for (const auto& [i, j, v] : imat) {
    put_u64(out, static_cast<std::uint64_t>(i));
    put_u64(out, static_cast<std::uint64_t>(j));
    put_f64(out, v);
  }

  if (!out) throw IoError("model: write failed");
}

InformationState read_model(std::istream& in) {
  char magic[sizeof(kModelMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kModelMagic, sizeof(magic)) != 0) {
    throw IoError("model: bad magic, not an LGPIF1 file");
  }
  const std::uint64_t version = get_u64(in);
  if (version != kModelFormatVersion) {
    std::ostringstream msg;
    msg << "model: unsupported format version " << version;
    throw IoError(msg.str());
  }

  const std::uint64_t d64 = get_u64(in);
  if (d64 == 0 || d64 > 64) throw IoError("model: implausible dimension");
  const int d = static_cast<int>(d64);

  Eigen::VectorXd lower(d);
  for (int k = 0; k < d; ++k) lower[k] = get_f64(in);
  const double spacing = get_f64(in);
  std::vector<Index> counts(d);
  for (int k = 0; k < d; ++k) counts[k] = static_cast<Index>(get_u64(in));

  HyperParams hp;
  hp.sigma_se = get_f64(in);
  hp.lengthscales.resize(d);
  for (int k = 0; k < d; ++k) hp.lengthscales[k] = get_f64(in);
  hp.sigma_y = get_f64(in);
  hp.r = get_f64(in);
  hp.r_star = get_f64(in);
  const double y_mean = get_f64(in);
  const std::uint64_t n_measurements = get_u64(in);

  const std::uint64_t iota_nnz = get_u64(in);
  std::vector<std::pair<Index, double>> iota;
  iota.reserve(iota_nnz);
  for (std::uint64_t k = 0; k < iota_nnz; ++k) {
    const Index j = static_cast<Index>(get_u64(in));
    const double v = get_f64(in);
    iota.emplace_back(j, v);
  }

  const std::uint64_t imat_nnz = get_u64(in);
  std::vector<std::tuple<Index, Index, double>> imat;
  imat.reserve(imat_nnz);
  for (std::uint64_t k = 0; k < imat_nnz; ++k) {
    const Index i = static_cast<Index>(get_u64(in));
    const Index j = static_cast<Index>(get_u64(in));
    const double v = get_f64(in);
    imat.emplace_back(i, j, v);
  }

  UniformGrid grid(std::move(lower), spacing, std::move(counts));
  return InformationState::restore(std::move(grid), std::move(hp), y_mean,
                                   n_measurements, std::move(iota),
                                   std::move(imat));
}

void save_model(const InformationState& state, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("model: cannot open '" + path + "' for writing");
  write_model(out, state);
  out.flush();
  if (!out) throw IoError("model: write to '" + path + "' failed");
}

InformationState load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("model: cannot open '" + path + "'");
  return read_model(in);
}

}  // namespace lgp
