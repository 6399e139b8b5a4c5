#include "lgp/grid.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace lgp {

namespace {

// floor(span / spacing) robust against quotients a few ulps below an integer.
Index robust_floor_ratio(double span, double spacing) {
  const double q = span / spacing * (1.0 + 4.0 * std::numeric_limits<double>::epsilon());
  return static_cast<Index>(std::floor(q));
}

}  // namespace

UniformGrid::UniformGrid(Eigen::VectorXd lower, double spacing,
                         std::vector<Index> counts)
    : lower_(std::move(lower)), spacing_(spacing), counts_(std::move(counts)) {
  if (counts_.empty() || lower_.size() != static_cast<Eigen::Index>(counts_.size())) {
    throw GridSizeError("grid: lower bounds and counts must have equal, nonzero dimension");
  }
  if (!(spacing_ > 0.0)) {
    throw GridSizeError("grid: spacing must be positive");
  }
  size_ = 1;
  for (Index c : counts_) {
    if (c < 1) throw GridSizeError("grid: axis center count must be >= 1");
    if (size_ > std::numeric_limits<Index>::max() / c) {
      throw GridSizeError("grid: center count overflows");
    }
    size_ *= c;
  }
  strides_.assign(counts_.size(), 1);
  for (int k = static_cast<int>(counts_.size()) - 2; k >= 0; --k) {
    strides_[k] = strides_[k + 1] * counts_[k + 1];
  }
}

UniformGrid UniformGrid::from_bounds(const Eigen::Ref<const Eigen::VectorXd>& lo,
                                     const Eigen::Ref<const Eigen::VectorXd>& hi,
                                     double spacing, double margin,
                                     Index max_centers) {
  if (lo.size() == 0 || lo.size() != hi.size()) {
    throw GridSizeError("grid: bounds must be nonempty and of equal dimension");
  }
  if (!(spacing > 0.0)) throw GridSizeError("grid: spacing must be positive");
  if (margin < 0.0) throw GridSizeError("grid: margin must be >= 0");

  const int d = static_cast<int>(lo.size());
  Eigen::VectorXd lower(d);
  std::vector<Index> counts(d);
  Index total = 1;
  for (int k = 0; k < d; ++k) {
    if (!(hi[k] > lo[k])) {
      std::ostringstream msg;
      msg << "grid: axis " << k << " has max <= min (" << hi[k] << " <= " << lo[k] << ")";
      throw GridSizeError(msg.str());
    }
    lower[k] = lo[k] - margin;
    const double span = (hi[k] + margin) - lower[k];
    counts[k] = robust_floor_ratio(span, spacing) + 1;
    if (total > max_centers / counts[k]) {
      total = max_centers + 1;  // saturate, report below
    } else {
      total *= counts[k];
    }
  }
  if (total == 0) throw GridSizeError("grid: zero centers");
  if (total > max_centers) {
    std::ostringstream msg;
    msg << "grid: more than " << max_centers
        << " centers would be required; increase the spacing or the cap";
    throw GridSizeError(msg.str());
  }
  return UniformGrid(std::move(lower), spacing, std::move(counts));
}

Eigen::VectorXd UniformGrid::center_of(Index j) const {
  if (j < 0 || j >= size_) throw DimensionError("grid: center index out of range");
  const int d = dim();
  Eigen::VectorXd center(d);
  for (int k = 0; k < d; ++k) {
    const Index coord = (j / strides_[k]) % counts_[k];
    center[k] = lower_[k] + static_cast<double>(coord) * spacing_;
  }
  return center;
}

std::vector<Index> UniformGrid::coords_of(Index j) const {
  if (j < 0 || j >= size_) throw DimensionError("grid: center index out of range");
  const int d = dim();
  std::vector<Index> coords(d);
  for (int k = 0; k < d; ++k) {
    coords[k] = (j / strides_[k]) % counts_[k];
  }
  return coords;
}

Index UniformGrid::index_of(const std::vector<Index>& coords) const {
  if (coords.size() != counts_.size()) {
    throw DimensionError("grid: coordinate dimension mismatch");
  }
  Index j = 0;
  for (int k = 0; k < dim(); ++k) {
    if (coords[k] < 0 || coords[k] >= counts_[k]) {
      throw DimensionError("grid: coordinate out of range");
    }
    j += coords[k] * strides_[k];
  }
  return j;
}

std::vector<Index> UniformGrid::support_set(
    const Eigen::Ref<const Eigen::VectorXd>& z, double radius,
    SupportQueryStats* stats) const {
  const int d = dim();
  if (z.size() != d) throw DimensionError("grid: query point dimension mismatch");

  // Per-axis candidate ranges. The arithmetic range is widened by one and
  // trimmed with the same |center - z| <= radius comparison a brute-force
  // scan would use, so boundary ties resolve identically.
  std::vector<Index> first(d), last(d);
  std::int64_t axis_candidates = 0;
  for (int k = 0; k < d; ++k) {
    Index lo = static_cast<Index>(std::ceil((z[k] - radius - lower_[k]) / spacing_)) - 1;
    Index hi = static_cast<Index>(std::floor((z[k] + radius - lower_[k]) / spacing_)) + 1;
    lo = std::max<Index>(lo, 0);
    hi = std::min<Index>(hi, counts_[k] - 1);
    axis_candidates += (hi >= lo) ? (hi - lo + 1) : 0;
    while (lo <= hi && std::abs(lower_[k] + static_cast<double>(lo) * spacing_ - z[k]) > radius) ++lo;
    while (lo <= hi && std::abs(lower_[k] + static_cast<double>(hi) * spacing_ - z[k]) > radius) --hi;
    if (lo > hi) {
      if (stats) {
        stats->axis_candidates = axis_candidates;
        stats->centers_enumerated = 0;
      }
      return {};
    }
    first[k] = lo;
    last[k] = hi;
  }

  Index count = 1;
  for (int k = 0; k < d; ++k) count *= last[k] - first[k] + 1;

  std::vector<Index> result;
  result.reserve(static_cast<std::size_t>(count));
  std::vector<Index> coords(first);
  Index j = 0;
  for (int k = 0; k < d; ++k) j += coords[k] * strides_[k];
  // Odometer over the axis ranges; row-major order keeps indices ascending.
  while (true) {
    result.push_back(j);
    int k = d - 1;
    while (k >= 0 && coords[k] == last[k]) {
      j -= (coords[k] - first[k]) * strides_[k];
      coords[k] = first[k];
      --k;
    }
    if (k < 0) break;
    ++coords[k];
    j += strides_[k];
  }

  if (stats) {
    stats->axis_candidates = axis_candidates;
    stats->centers_enumerated = static_cast<std::int64_t>(result.size());
  }
  return result;
}

bool UniformGrid::operator==(const UniformGrid& other) const {
  return spacing_ == other.spacing_ && counts_ == other.counts_ &&
         lower_.size() == other.lower_.size() && lower_ == other.lower_;
}

}  // namespace lgp
