#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tmpca/matrix.hpp"

namespace tmpca {

/// Binary linear classifier: predict sign(weights . x + bias).
struct SvmModel {
  std::vector<double> weights;
  double bias = 0.0;
  double lambda = 0.0;
  std::size_t epochs_trained = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const SvmModel&, const SvmModel&) = default;
};

struct SvmFitOptions {
  double lambda = 1e-4;
  std::size_t epochs = 50;
  std::uint64_t seed = 17;
};

/// Trains by stochastic sub-gradient descent on the L2-regularized hinge
/// loss: the weights take steps of size 1/(lambda * t) at global step t,
/// visiting examples in a freshly shuffled order each epoch (deterministic
/// per seed). The bias follows the same hinge sub-gradient but is not
/// regularized, so it steps at the 1/sqrt(t) rate suited to that
/// unregularized direction.
///
/// Labels must be +1/-1 with both classes present. When `objective_trace`
/// is non-null it receives, per step, the regularized hinge objective on
/// that step's example evaluated before the update.
SvmModel svm_fit(const Matrix& features, const std::vector<int>& labels,
                 const SvmFitOptions& options = {},
                 std::vector<double>* objective_trace = nullptr);

/// Decision value weights . x + bias.
double svm_decision(const SvmModel& model, std::span<const double> x);

/// sign(decision), with sign(0) defined as +1.
int svm_predict(const SvmModel& model, std::span<const double> x);

/// Fraction of rows whose prediction differs from the label. Throws
/// InvalidArgumentError on an empty evaluation set.
double error_rate(const SvmModel& model, const Matrix& features,
                  const std::vector<int>& labels);

}  // namespace tmpca
