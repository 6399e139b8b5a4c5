#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "lgp/errors.hpp"

namespace lgp {

using Index = std::int64_t;

// Instrumentation for support-set queries. Lets tests verify that the
// per-axis range computation touches O(|S|) centers rather than scanning
// the whole grid.
struct SupportQueryStats {
  std::int64_t axis_candidates = 0;     // per-axis integer positions examined
  std::int64_t centers_enumerated = 0;  // centers produced by the product loop
};

// Uniform d-dimensional grid of basis-function centers, expressed in
// lengthscale-normalized coordinates. Center j sits at
// lower + coords(j) * spacing componentwise; linear indices are row-major
// with the last axis varying fastest.
class UniformGrid {
 public:
  static constexpr Index kDefaultMaxCenters = 100'000'000;

  // Direct construction from already-known layout (deserialization path).
  UniformGrid(Eigen::VectorXd lower, double spacing, std::vector<Index> counts);

  // Builds a grid covering [lo_k - margin, hi_k + margin] on every axis with
  // counts_k = floor(span_k / spacing) + 1. Throws GridSizeError when the
  // total center count is zero or exceeds max_centers.
  static UniformGrid from_bounds(const Eigen::Ref<const Eigen::VectorXd>& lo,
                                 const Eigen::Ref<const Eigen::VectorXd>& hi,
                                 double spacing, double margin,
                                 Index max_centers = kDefaultMaxCenters);

  int dim() const { return static_cast<int>(counts_.size()); }
  double spacing() const { return spacing_; }
  const Eigen::VectorXd& lower() const { return lower_; }
  const std::vector<Index>& counts() const { return counts_; }

  // Total number of centers m.
  Index size() const { return size_; }

  Eigen::VectorXd center_of(Index j) const;
  std::vector<Index> coords_of(Index j) const;
  Index index_of(const std::vector<Index>& coords) const;

  // All center indices within sup-norm `radius` of z, in ascending order.
  // Computed by per-axis integer range intersection; the work done is
  // proportional to the result size, never to m. Returns an empty vector
  // when z is farther than `radius` outside the grid on some axis.
  std::vector<Index> support_set(const Eigen::Ref<const Eigen::VectorXd>& z,
                                 double radius,
                                 SupportQueryStats* stats = nullptr) const;

  bool operator==(const UniformGrid& other) const;
  bool operator!=(const UniformGrid& other) const { return !(*this == other); }

 private:
  Eigen::VectorXd lower_;
  double spacing_ = 1.0;
  std::vector<Index> counts_;
  std::vector<Index> strides_;  // strides_[d-1] == 1
  Index size_ = 0;
};

}  // namespace lgp
