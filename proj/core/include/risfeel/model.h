// Copyright 2026 The risfeel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RISFEEL_MODEL_H_
#define RISFEEL_MODEL_H_

#include <memory>
#include <span>

#include "absl/status/statusor.h"
#include "risfeel/dataset.h"
#include "risfeel/linalg.h"
#include "risfeel/random.h"

namespace risfeel {

struct LossGradient {
  double loss = 0.0;
  ModelVector gradient;
};

// A classifier over flat parameter vectors trained with mean cross-entropy.
class Model {
 public:
  virtual ~Model() = default;

  virtual int dimension() const = 0;
  virtual int num_features() const = 0;
  virtual int num_classes() const = 0;

  // Class scores, one row per sample.
  virtual absl::StatusOr<Eigen::MatrixXd> Logits(
      const ModelVector& params, const Eigen::MatrixXd& features) const = 0;

  // Mean cross-entropy over `rows` of `data` and its exact gradient.
  virtual absl::StatusOr<LossGradient> LossAndGradient(
      const ModelVector& params, const Dataset& data,
      std::span<const int> rows) const = 0;

  virtual ModelVector InitialParameters(RandomStream& stream) const = 0;

  // Over every row of `data`.
  absl::StatusOr<LossGradient> LossAndGradient(const ModelVector& params,
                                               const Dataset& data) const;

 protected:
  absl::Status CheckShapes(const ModelVector& params,
                           Eigen::Index feature_cols) const;
};

// Multinomial logistic regression. Parameters: the C x F weight matrix in
// row-major order followed by C biases (d = F * C + C).
class SoftmaxRegression : public Model {
 public:
  SoftmaxRegression(int num_features, int num_classes)
      : features_(num_features), classes_(num_classes) {}

  int dimension() const override { return features_ * classes_ + classes_; }
  int num_features() const override { return features_; }
  int num_classes() const override { return classes_; }

  absl::StatusOr<Eigen::MatrixXd> Logits(
      const ModelVector& params,
      const Eigen::MatrixXd& features) const override;
  absl::StatusOr<LossGradient> LossAndGradient(
      const ModelVector& params, const Dataset& data,
      std::span<const int> rows) const override;
  using Model::LossAndGradient;

  // Zero weights and biases.
  ModelVector InitialParameters(RandomStream& stream) const override;

 private:
  int features_;
  int classes_;
};

// One tanh hidden layer. Parameters: W1 (H x F, row-major), b1 (H),
// W2 (C x H, row-major), b2 (C).
class Perceptron : public Model {
 public:
  Perceptron(int num_features, int hidden, int num_classes)
      : features_(num_features), hidden_(hidden), classes_(num_classes) {}

  int dimension() const override {
    return hidden_ * features_ + hidden_ + classes_ * hidden_ + classes_;
  }
  int num_features() const override { return features_; }
  int num_classes() const override { return classes_; }
  int hidden() const { return hidden_; }

  absl::StatusOr<Eigen::MatrixXd> Logits(
      const ModelVector& params,
      const Eigen::MatrixXd& features) const override;
  absl::StatusOr<LossGradient> LossAndGradient(
      const ModelVector& params, const Dataset& data,
      std::span<const int> rows) const override;
  using Model::LossAndGradient;

  // Gaussian weights with variance 1 / fan-in, zero biases.
  ModelVector InitialParameters(RandomStream& stream) const override;

 private:
  int features_;
  int hidden_;
  int classes_;
};

}  // namespace risfeel

#endif  // RISFEEL_MODEL_H_
