#include "tmpca/svm.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "tmpca/errors.hpp"
#include "tmpca/rng.hpp"

namespace tmpca {

SvmModel svm_fit(const Matrix& features, const std::vector<int>& labels,
                 const SvmFitOptions& options,
                 std::vector<double>* objective_trace) {
  const std::size_t m = features.rows();
  const std::size_t d = features.cols();
  if (labels.size() != m) {
    throw ShapeError("svm_fit: " + std::to_string(m) + " feature rows but " +
                     std::to_string(labels.size()) + " labels");
  }
  if (m < 2) {
    throw InvalidInputError("svm_fit: need at least 2 training examples");
  }
  bool has_positive = false;
  bool has_negative = false;
  for (int label : labels) {
    if (label == 1) {
      has_positive = true;
    } else if (label == -1) {
      has_negative = true;
    } else {
      throw InvalidInputError("svm_fit: labels must be +1 or -1, got " +
                              std::to_string(label));
    }
  }
  if (!has_positive || !has_negative) {
    throw InvalidInputError("svm_fit: training data contains a single class");
  }
  for (double v : features.storage()) {
    if (!std::isfinite(v)) {
      throw InvalidInputError("svm_fit: features contain a non-finite entry");
    }
  }
  if (!(options.lambda > 0.0)) {
    throw InvalidArgumentError("svm_fit: lambda must be positive");
  }
  if (options.epochs == 0) {
    throw InvalidArgumentError("svm_fit: need at least one epoch");
  }

  SvmModel model;
  model.weights.assign(d, 0.0);
  model.lambda = options.lambda;
  model.epochs_trained = options.epochs;
  model.seed = options.seed;

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 rng(options.seed);
  if (objective_trace != nullptr) {
    objective_trace->clear();
    objective_trace->reserve(m * options.epochs);
  }

  double* w = model.weights.data();
  std::size_t step = 0;
  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    shuffle(order, rng);
    for (std::size_t pick : order) {
      ++step;
      const double eta = 1.0 / (options.lambda * static_cast<double>(step));
      const double* x = features.row(pick).data();
      const double y = static_cast<double>(labels[pick]);

      double dot = model.bias;
      for (std::size_t c = 0; c < d; ++c) dot += w[c] * x[c];

      if (objective_trace != nullptr) {
        double norm_sq = 0.0;
        for (std::size_t c = 0; c < d; ++c) norm_sq += w[c] * w[c];
        const double hinge = std::max(0.0, 1.0 - y * dot);
        objective_trace->push_back(0.5 * options.lambda * norm_sq + hinge);
      }

      const double keep = 1.0 - eta * options.lambda;  // = 1 - 1/step
      if (y * dot < 1.0) {
        const double boost = eta * y;
        for (std::size_t c = 0; c < d; ++c) w[c] = keep * w[c] + boost * x[c];
        // The bias has no regularizer, so the strongly-convex 1/(lambda*t)
        // schedule would start with a 1/lambda-sized jump that decays only
        // harmonically and can park the boundary off-center for thousands of
        // epochs. The standard 1/sqrt(t) sub-gradient rate for the
        // non-strongly-convex direction converges without introducing a
        // tunable constant.
        model.bias += y / std::sqrt(static_cast<double>(step));
      } else {
        for (std::size_t c = 0; c < d; ++c) w[c] *= keep;
      }
    }
  }
  return model;
}

double svm_decision(const SvmModel& model, std::span<const double> x) {
  if (x.size() != model.weights.size()) {
    throw InvalidArgumentError("svm_decision: expected " +
                               std::to_string(model.weights.size()) +
                               " features, got " + std::to_string(x.size()));
  }
  double dot = model.bias;
  for (std::size_t c = 0; c < x.size(); ++c) dot += model.weights[c] * x[c];
  return dot;
}

int svm_predict(const SvmModel& model, std::span<const double> x) {
  return svm_decision(model, x) < 0.0 ? -1 : 1;
}

double error_rate(const SvmModel& model, const Matrix& features,
                  const std::vector<int>& labels) {
  if (features.rows() == 0) {
    throw InvalidArgumentError("error_rate: empty evaluation set");
  }
  if (labels.size() != features.rows()) {
    throw ShapeError("error_rate: " + std::to_string(features.rows()) +
                     " feature rows but " + std::to_string(labels.size()) +
                     " labels");
  }
  std::size_t wrong = 0;
  for (std::size_t r = 0; r < features.rows(); ++r) {
    if (svm_predict(model, features.row(r)) != labels[r]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(features.rows());
}

}  // namespace tmpca
