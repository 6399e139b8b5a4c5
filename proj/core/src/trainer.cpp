#include "lgp/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lgp {

namespace {

void kahan_add(double& sum, double& comp, double term) {
  const double y = term - comp;
  const double t = sum + y;
  comp = (t - sum) - y;
  sum = t;
}

}  // namespace

InformationState::InformationState(UniformGrid grid, HyperParams hp,
                                   double y_mean, TrainOptions opts)
    : grid_(std::move(grid)), hp_(std::move(hp)), y_mean_(y_mean), opts_(opts) {
  hp_.validate(/*require_fast_prior=*/false);
  if (grid_.dim() != hp_.dim()) {
    throw DimensionError("trainer: grid dimension does not match lengthscales");
  }
  // Pair keys pack two indices into 64 bits.
  if (grid_.size() > static_cast<Index>(0xFFFFFFFFu)) {
    throw GridSizeError("trainer: grids beyond 2^32 centers are not supported");
  }
  if (!std::isfinite(y_mean_)) throw DataError("trainer: y_mean must be finite");
}

void InformationState::add_iota(Index j, double value) {
  if (opts_.compensated_summation) {
    kahan_add(iota_[j], iota_comp_[j], value);
  } else {
    iota_[j] += value;
  }
}

void InformationState::add_imat(Index i, Index j, double value) {
  const std::uint64_t key = pair_key(i, j);
  if (opts_.compensated_summation) {
    kahan_add(imat_[key], imat_comp_[key], value);
  } else {
    imat_[key] += value;
  }
}

void InformationState::update(const Eigen::Ref<const Eigen::VectorXd>& x,
                              double y) {
  if (finalized_) throw Error("trainer: state is finalized and read-only");
  if (!std::isfinite(y)) throw DataError("trainer: target must be finite");

  const Eigen::VectorXd z = to_normalized(x, hp_);
  const std::vector<Index> support = grid_.support_set(z, hp_.r);
  if (support.empty()) {
    ++n_rejected_;
    std::ostringstream msg;
    msg << "trainer: measurement at normalized position [";
    for (int k = 0; k < z.size(); ++k) msg << (k ? ", " : "") << z[k];
    msg << "] overlaps no basis function (support radius " << hp_.r << ")";
    throw OutOfGridError(msg.str());
  }

  const std::size_t n = support.size();
  Eigen::VectorXd phi(static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < n; ++a) {
    phi[static_cast<Eigen::Index>(a)] =
        kernel_eval_normalized(z, grid_.center_of(support[a]), hp_.sigma_se);
  }

  for (std::size_t a = 0; a < n; ++a) {
    add_iota(support[a], phi[static_cast<Eigen::Index>(a)] * y);
    for (std::size_t b = a; b < n; ++b) {
      add_imat(support[a], support[b],
               phi[static_cast<Eigen::Index>(a)] * phi[static_cast<Eigen::Index>(b)]);
    }
  }
  ++n_measurements_;
}

InformationState::BatchResult InformationState::train_batch(
    const Eigen::Ref<const Eigen::MatrixXd>& xs,
    const Eigen::Ref<const Eigen::VectorXd>& ys, OutOfGridPolicy policy) {
  if (xs.rows() != ys.size()) {
    throw DimensionError("trainer: input and target counts differ");
  }
  BatchResult result;
  for (Eigen::Index t = 0; t < xs.rows(); ++t) {
    try {
      update(xs.row(t).transpose(), ys[t]);
      ++result.accepted;
    } catch (const OutOfGridError& e) {
      if (policy == OutOfGridPolicy::kThrow) {
        std::ostringstream msg;
        msg << "row " << t << ": " << e.what();
        throw OutOfGridError(msg.str());
      }
      ++result.rejected;
    }
  }
  return result;
}

bool InformationState::compatible_with(const InformationState& other) const {
  return grid_ == other.grid_ && hp_ == other.hp_ && y_mean_ == other.y_mean_;
}

InformationState InformationState::merge(const InformationState& a,
                                         const InformationState& b) {
  if (!a.compatible_with(b)) {
    throw IncompatibleStateError(
        "merge: states differ in grid, hyperparameters or y_mean");
  }
  InformationState out(a.grid_, a.hp_, a.y_mean_, a.opts_);
  for (const auto& [j, v] : a.iota_entries()) out.iota_[j] = v;
  for (const auto& [i, j, v] : a.imat_entries()) out.imat_[pair_key(i, j)] = v;
  for (const auto& [j, v] : b.iota_entries()) out.iota_[j] += v;
  for (const auto& [i, j, v] : b.imat_entries()) out.imat_[pair_key(i, j)] += v;
  out.n_measurements_ = a.n_measurements_ + b.n_measurements_;
  out.n_rejected_ = a.n_rejected_ + b.n_rejected_;
  return out;
}

double InformationState::iota_at(Index j) const {
  if (finalized_) {
    const auto it = std::lower_bound(iota_idx_.begin(), iota_idx_.end(), j);
    if (it == iota_idx_.end() || *it != j) return 0.0;
    return iota_val_[static_cast<std::size_t>(it - iota_idx_.begin())];
  }
  const auto it = iota_.find(j);
  return it == iota_.end() ? 0.0 : it->second;
}

double InformationState::imat_at_compact(Index i, Index j) const {
  const auto row_it = std::lower_bound(row_ids_.begin(), row_ids_.end(), i);
  if (row_it == row_ids_.end() || *row_it != i) return 0.0;
  const std::size_t row = static_cast<std::size_t>(row_it - row_ids_.begin());
  const auto begin = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
  const auto end = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
  const auto col_it = std::lower_bound(begin, end, j);
  if (col_it == end || *col_it != j) return 0.0;
  return vals_[static_cast<std::size_t>(col_it - cols_.begin())];
}

double InformationState::imat_at(Index i, Index j) const {
  if (i > j) std::swap(i, j);
  if (finalized_) return imat_at_compact(i, j);
  const auto it = imat_.find(pair_key(i, j));
  return it == imat_.end() ? 0.0 : it->second;
}

std::size_t InformationState::iota_nnz() const {
  return finalized_ ? iota_idx_.size() : iota_.size();
}

std::size_t InformationState::imat_nnz() const {
  return finalized_ ? cols_.size() : imat_.size();
}

bool InformationState::extract(const std::vector<Index>& subset,
                               Eigen::VectorXd& iota_sub,
                               Eigen::MatrixXd& imat_sub) const {
  const Eigen::Index n = static_cast<Eigen::Index>(subset.size());
  iota_sub.setZero(n);
  imat_sub.setZero(n, n);
  bool any_nonzero = false;

  for (Eigen::Index a = 0; a < n; ++a) {
    const double v = iota_at(subset[static_cast<std::size_t>(a)]);
    iota_sub[a] = v;
    any_nonzero |= (v != 0.0);
  }

  if (finalized_) {
    // Merge-walk each subset row against its stored adjacency; both sides
    // are sorted, and rows keep only columns >= row (upper triangle).
    for (Eigen::Index a = 0; a < n; ++a) {
      const Index row = subset[static_cast<std::size_t>(a)];
      const auto row_it = std::lower_bound(row_ids_.begin(), row_ids_.end(), row);
      if (row_it == row_ids_.end() || *row_it != row) continue;
      const std::size_t r = static_cast<std::size_t>(row_it - row_ids_.begin());
      std::size_t p = row_ptr_[r];
      const std::size_t p_end = row_ptr_[r + 1];
      std::size_t b = static_cast<std::size_t>(a);
      while (p < p_end && b < subset.size()) {
        const Index col = cols_[p];
        const Index want = subset[b];
        if (col < want) {
          ++p;
        } else if (col > want) {
          ++b;
        } else {
          const double v = vals_[p];
          imat_sub(a, static_cast<Eigen::Index>(b)) = v;
          imat_sub(static_cast<Eigen::Index>(b), a) = v;
          any_nonzero |= (v != 0.0);
          ++p;
          ++b;
        }
      }
    }
  } else {
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = a; b < n; ++b) {
        const auto it = imat_.find(pair_key(subset[static_cast<std::size_t>(a)],
                                            subset[static_cast<std::size_t>(b)]));
        if (it == imat_.end()) continue;
        imat_sub(a, b) = it->second;
        imat_sub(b, a) = it->second;
        any_nonzero |= (it->second != 0.0);
      }
    }
  }
  return any_nonzero;
}

std::vector<std::pair<Index, double>> InformationState::iota_entries() const {
  std::vector<std::pair<Index, double>> entries;
  if (finalized_) {
    entries.reserve(iota_idx_.size());
    for (std::size_t k = 0; k < iota_idx_.size(); ++k) {
      entries.emplace_back(iota_idx_[k], iota_val_[k]);
    }
    return entries;
  }
  entries.assign(iota_.begin(), iota_.end());
  std::sort(entries.begin(), entries.end());
  return entries;
}

std::vector<std::tuple<Index, Index, double>> InformationState::imat_entries() const {
  std::vector<std::tuple<Index, Index, double>> entries;
  if (finalized_) {
    entries.reserve(cols_.size());
    for (std::size_t r = 0; r + 1 < row_ptr_.size(); ++r) {
      for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
        entries.emplace_back(row_ids_[r], cols_[p], vals_[p]);
      }
    }
    return entries;
  }
  entries.reserve(imat_.size());
  for (const auto& [key, v] : imat_) {
    entries.emplace_back(static_cast<Index>(key >> 32),
                         static_cast<Index>(key & 0xFFFFFFFFu), v);
  }
  std::sort(entries.begin(), entries.end());
  return entries;
}

void InformationState::finalize() {
  if (finalized_) return;

  auto iota_sorted = iota_entries();
  iota_idx_.resize(iota_sorted.size());
  iota_val_.resize(iota_sorted.size());
  for (std::size_t k = 0; k < iota_sorted.size(); ++k) {
    iota_idx_[k] = iota_sorted[k].first;
    iota_val_[k] = iota_sorted[k].second;
  }

  auto imat_sorted = imat_entries();
  cols_.resize(imat_sorted.size());
  vals_.resize(imat_sorted.size());
  row_ids_.clear();
  row_ptr_.clear();
  for (std::size_t k = 0; k < imat_sorted.size(); ++k) {
    const auto& [i, j, v] = imat_sorted[k];
    if (row_ids_.empty() || row_ids_.back() != i) {
      row_ids_.push_back(i);
      row_ptr_.push_back(k);
    }
    cols_[k] = j;
    vals_[k] = v;
  }
  row_ptr_.push_back(imat_sorted.size());

  iota_.clear();
  imat_.clear();
  iota_comp_.clear();
  imat_comp_.clear();
  finalized_ = true;
}

InformationState InformationState::restore(
    UniformGrid grid, HyperParams hp, double y_mean,
    std::uint64_t n_measurements,
    std::vector<std::pair<Index, double>> iota_entries,
    std::vector<std::tuple<Index, Index, double>> imat_entries) {
  InformationState state(std::move(grid), std::move(hp), y_mean);
  const Index m = state.grid_.size();

  state.iota_idx_.resize(iota_entries.size());
  state.iota_val_.resize(iota_entries.size());
  for (std::size_t k = 0; k < iota_entries.size(); ++k) {
    const auto& [j, v] = iota_entries[k];
    if (j < 0 || j >= m) throw DataError("restore: iota index out of range");
    if (k > 0 && j <= state.iota_idx_[k - 1]) {
      throw DataError("restore: iota entries must be strictly ascending");
    }
    state.iota_idx_[k] = j;
    state.iota_val_[k] = v;
  }

  state.cols_.resize(imat_entries.size());
  state.vals_.resize(imat_entries.size());
  for (std::size_t k = 0; k < imat_entries.size(); ++k) {
    const auto& [i, j, v] = imat_entries[k];
    if (i < 0 || j < i || j >= m) {
      throw DataError("restore: information matrix entry out of range");
    }
    if (k > 0) {
      const auto& [pi, pj, pv] = imat_entries[k - 1];
      (void)pv;
      if (std::make_pair(i, j) <= std::make_pair(pi, pj)) {
        throw DataError("restore: information matrix entries must be strictly ascending");
      }
    }
    if (state.row_ids_.empty() || state.row_ids_.back() != i) {
      state.row_ids_.push_back(i);
      state.row_ptr_.push_back(k);
    }
    state.cols_[k] = j;
    state.vals_[k] = v;
  }
  state.row_ptr_.push_back(imat_entries.size());

  state.n_measurements_ = n_measurements;
  state.finalized_ = true;
  return state;
}

}  // namespace lgp
