#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lgp/grid.hpp"
#include "lgp/kernel.hpp"

namespace lgp {

enum class OutOfGridPolicy {
  kThrow,         // reject the batch at the offending row
  kSkipAndCount,  // skip the measurement, keep a running reject count
};

struct TrainOptions {
  bool compensated_summation = false;  // Kahan-compensated accumulation
};

// Sparse information-form state: iota = Phi(x_{1:N}) y_{1:N} and
// I = Phi(x_{1:N}) Phi(x_{1:N})^T accumulated one measurement at a time.
// Each update touches only the basis functions whose support contains the
// measurement. The information matrix stores the upper triangle (i <= j).
//
// Accumulation runs on hash maps keyed by index (pairs); finalize() converts
// them to sorted per-row adjacency for fast subset extraction and makes the
// state immutable. A single state is exclusively owned while updating; to
// train in parallel, shard the measurement stream, train one state per
// shard and merge.
class InformationState {
 public:
  InformationState(UniformGrid grid, HyperParams hp, double y_mean,
                   TrainOptions opts = {});

  const UniformGrid& grid() const { return grid_; }
  const HyperParams& hyperparams() const { return hp_; }
  double y_mean() const { return y_mean_; }
  std::uint64_t n_measurements() const { return n_measurements_; }
  std::uint64_t n_rejected() const { return n_rejected_; }
  bool finalized() const { return finalized_; }

  // Accumulates one measurement with pre-centered target y. Cost O(|S|^2)
  // where S is the support set of x. Throws OutOfGridError when S is empty.
  void update(const Eigen::Ref<const Eigen::VectorXd>& x, double y);

  struct BatchResult {
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;
  };

  // Folds update over the rows of xs. With kThrow, an out-of-grid row aborts
  // the batch with its row index in the message.
  BatchResult train_batch(const Eigen::Ref<const Eigen::MatrixXd>& xs,
                          const Eigen::Ref<const Eigen::VectorXd>& ys,
                          OutOfGridPolicy policy = OutOfGridPolicy::kThrow);

  // Entrywise sum of two states accumulated from disjoint shards. Requires
  // identical grid, hyperparameters and y_mean.
  static InformationState merge(const InformationState& a,
                                const InformationState& b);
  bool compatible_with(const InformationState& other) const;

  // Reads are exact zeros for entries never stored.
  double iota_at(Index j) const;
  double imat_at(Index i, Index j) const;
  std::size_t iota_nnz() const;
  std::size_t imat_nnz() const;

  // Gathers the dense subsystem for an ascending index subset. Returns true
  // when any gathered entry is nonzero.
  bool extract(const std::vector<Index>& subset, Eigen::VectorXd& iota_sub,
               Eigen::MatrixXd& imat_sub) const;

  // Sorted snapshots (by index, and lexicographically by (i, j)).
  std::vector<std::pair<Index, double>> iota_entries() const;
  std::vector<std::tuple<Index, Index, double>> imat_entries() const;

  // Converts the accumulation maps into sorted per-row adjacency. After this
  // the state is read-only: update() and train_batch() throw.
  void finalize();

  // Rebuilds a finalized state from sorted entry lists (deserialization).
  static InformationState restore(
      UniformGrid grid, HyperParams hp, double y_mean,
      std::uint64_t n_measurements,
      std::vector<std::pair<Index, double>> iota_entries,
      std::vector<std::tuple<Index, Index, double>> imat_entries);

 private:
  static std::uint64_t pair_key(Index i, Index j) {
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(j);
  }

  void add_iota(Index j, double value);
  void add_imat(Index i, Index j, double value);  // requires i <= j
  double imat_at_compact(Index i, Index j) const;  // requires i <= j

  UniformGrid grid_;
  HyperParams hp_;
  double y_mean_ = 0.0;
  TrainOptions opts_;
  std::uint64_t n_measurements_ = 0;
  std::uint64_t n_rejected_ = 0;

  // Accumulation form.
  std::unordered_map<Index, double> iota_;
  std::unordered_map<std::uint64_t, double> imat_;
  std::unordered_map<Index, double> iota_comp_;          // Kahan carry
  std::unordered_map<std::uint64_t, double> imat_comp_;  // Kahan carry

  // Finalized form: sorted iota and per-row sorted adjacency over the upper
  // triangle.
  bool finalized_ = false;
  std::vector<Index> iota_idx_;
  std::vector<double> iota_val_;
  std::vector<Index> row_ids_;            // distinct rows, ascending
  std::vector<std::size_t> row_ptr_;      // row_ids_.size() + 1 offsets
  std::vector<Index> cols_;
  std::vector<double> vals_;
};

}  // namespace lgp
