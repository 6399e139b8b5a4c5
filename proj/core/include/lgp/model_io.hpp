#pragma once

#include <iosfwd>
#include <string>

#include "lgp/trainer.hpp"

namespace lgp {

// Trained-state file format, magic "LGPIF1". Little-endian layout:
//   magic (6 bytes), version u64, d u64,
//   lower f64[d], spacing f64, counts u64[d],
//   sigma_se f64, lengthscales f64[d], sigma_y f64, r f64, r_star f64,
//   y_mean f64, n_measurements u64,
//   iota nnz u64, (index u64, value f64) pairs sorted by index,
//   imat nnz u64, (i u64, j u64, value f64) triples sorted lexicographically
//   over the upper triangle (i <= j).
// Round-trips are bit-exact: doubles are stored as their IEEE-754 bits.
inline constexpr char kModelMagic[6] = {'L', 'G', 'P', 'I', 'F', '1'};
inline constexpr std::uint64_t kModelFormatVersion = 1;

void write_model(std::ostream& out, const InformationState& state);
InformationState read_model(std::istream& in);

void save_model(const InformationState& state, const std::string& path);
InformationState load_model(const std::string& path);

}  // namespace lgp
