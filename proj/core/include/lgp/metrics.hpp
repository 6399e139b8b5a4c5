#pragma once

#include <Eigen/Core>

#include "lgp/errors.hpp"

namespace lgp {

// Standardized metrics against the trivial predictor that always outputs the
// training mean (and, for MSLL, the training variance). A perfect prediction
// scores 0; predicting the training mean scores 1 (0 for MSLL).

// Mean absolute error divided by the MAE of the constant train_mean
// prediction.
double smae(const Eigen::Ref<const Eigen::VectorXd>& pred,
            const Eigen::Ref<const Eigen::VectorXd>& target, double train_mean);

// Mean squared error divided by the mean squared deviation of the test
// targets about train_mean.
double smse(const Eigen::Ref<const Eigen::VectorXd>& pred,
            const Eigen::Ref<const Eigen::VectorXd>& target, double train_mean);

// Mean negative predictive log density minus the same quantity scored by the
// Gaussian fit (train_mean, train_var) to the training targets.
double msll(const Eigen::Ref<const Eigen::VectorXd>& pred_mean,
            const Eigen::Ref<const Eigen::VectorXd>& pred_var,
            const Eigen::Ref<const Eigen::VectorXd>& target, double train_mean,
            double train_var);

}  // namespace lgp
