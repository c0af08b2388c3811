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

#include "risfeel/model.h"

#include <cmath>
#include <numeric>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "risfeel/status_macros.h"

namespace risfeel {
namespace {

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMatrixMap = Eigen::Map<const RowMajorMatrix>;
using MatrixMap = Eigen::Map<RowMajorMatrix>;

Eigen::MatrixXd Gather(const Dataset& data, std::span<const int> rows) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()),
                    data.features.cols());
  for (size_t i = 0; i < rows.size(); ++i) {
    x.row(static_cast<Eigen::Index>(i)) = data.features.row(rows[i]);
  }
  return x;
}

// Turns logits into (softmax - onehot) / n in place and returns the mean
// cross-entropy.
double SoftmaxResidual(Eigen::MatrixXd& logits, const Dataset& data,
                       std::span<const int> rows) {
  const double n = static_cast<double>(rows.size());
  double loss = 0.0;
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double peak = logits.row(i).maxCoeff();
    logits.row(i) = (logits.row(i).array() - peak).exp();
    const double sum = logits.row(i).sum();
    const int y = data.labels[rows[i]];
    loss += std::log(sum) - std::log(logits(i, y));
    logits.row(i) /= sum;
    logits(i, y) -= 1.0;
  }
  logits /= n;
  return loss / n;
}

absl::Status CheckRows(const Dataset& data, std::span<const int> rows) {
  if (rows.empty()) return absl::InvalidArgumentError("empty batch");
  for (int r : rows) {
    if (r < 0 || r >= data.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("batch row ", r, " outside dataset"));
    }
    const int y = data.labels[r];
    if (y < 0 || y >= data.num_classes) {
      return absl::InvalidArgumentError(absl::StrCat("label ", y, " invalid"));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<LossGradient> Model::LossAndGradient(const ModelVector& params,
                                                    const Dataset& data) const {
  std::vector<int> rows(data.size());
  std::iota(rows.begin(), rows.end(), 0);
  return LossAndGradient(params, data, rows);
}

absl::Status Model::CheckShapes(const ModelVector& params,
                                Eigen::Index feature_cols) const {
  if (params.size() != dimension()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "model has ", params.size(), " parameters; expected ", dimension()));
  }
  if (feature_cols != num_features()) {
    return absl::InvalidArgumentError(absl::StrCat("data has ", feature_cols,
                                                   " features; model expects ",
                                                   num_features()));
  }
  return absl::OkStatus();
}

absl::StatusOr<Eigen::MatrixXd> SoftmaxRegression::Logits(
    const ModelVector& params, const Eigen::MatrixXd& features) const {
  RISFEEL_RETURN_IF_ERROR(CheckShapes(params, features.cols()));
  ConstMatrixMap w(params.data(), classes_, features_);
  const auto b = params.tail(classes_);
  Eigen::MatrixXd z = features * w.transpose();
  z.rowwise() += b.transpose();
  return z;
}

absl::StatusOr<LossGradient> SoftmaxRegression::LossAndGradient(
    const ModelVector& params, const Dataset& data,
    std::span<const int> rows) const {
  RISFEEL_RETURN_IF_ERROR(CheckShapes(params, data.features.cols()));
  RISFEEL_RETURN_IF_ERROR(CheckRows(data, rows));
  if (data.num_classes != classes_) {
    return absl::InvalidArgumentError("dataset class count mismatch");
  }
  const Eigen::MatrixXd x = Gather(data, rows);
  RISFEEL_ASSIGN_OR_RETURN(Eigen::MatrixXd residual, Logits(params, x));
  LossGradient out;
  out.loss = SoftmaxResidual(residual, data, rows);
  out.gradient.resize(dimension());
  MatrixMap dw(out.gradient.data(), classes_, features_);
  dw = residual.transpose() * x;
  out.gradient.tail(classes_) = residual.colwise().sum().transpose();
  return out;
}

ModelVector SoftmaxRegression::InitialParameters(RandomStream&) const {
  return ModelVector::Zero(dimension());
}

absl::StatusOr<Eigen::MatrixXd> Perceptron::Logits(
    const ModelVector& params, const Eigen::MatrixXd& features) const {
  RISFEEL_RETURN_IF_ERROR(CheckShapes(params, features.cols()));
  const double* p = params.data();
  ConstMatrixMap w1(p, hidden_, features_);
  p += hidden_ * features_;
  Eigen::Map<const Eigen::VectorXd> b1(p, hidden_);
  p += hidden_;
  ConstMatrixMap w2(p, classes_, hidden_);
  p += classes_ * hidden_;
  Eigen::Map<const Eigen::VectorXd> b2(p, classes_);

  Eigen::MatrixXd a = features * w1.transpose();
  a.rowwise() += b1.transpose();
  Eigen::MatrixXd z = a.array().tanh().matrix() * w2.transpose();
  z.rowwise() += b2.transpose();
  return z;
}

absl::StatusOr<LossGradient> Perceptron::LossAndGradient(
    const ModelVector& params, const Dataset& data,
    std::span<const int> rows) const {
  RISFEEL_RETURN_IF_ERROR(CheckShapes(params, data.features.cols()));
  RISFEEL_RETURN_IF_ERROR(CheckRows(data, rows));
  if (data.num_classes != classes_) {
    return absl::InvalidArgumentError("dataset class count mismatch");
  }
  const double* p = params.data();
  ConstMatrixMap w1(p, hidden_, features_);
  p += hidden_ * features_;
  Eigen::Map<const Eigen::VectorXd> b1(p, hidden_);
  p += hidden_;
  ConstMatrixMap w2(p, classes_, hidden_);
  p += classes_ * hidden_;
  Eigen::Map<const Eigen::VectorXd> b2(p, classes_);

  const Eigen::MatrixXd x = Gather(data, rows);
  Eigen::MatrixXd a = x * w1.transpose();
  a.rowwise() += b1.transpose();
  const Eigen::MatrixXd h = a.array().tanh().matrix();
  Eigen::MatrixXd residual = h * w2.transpose();
  residual.rowwise() += b2.transpose();

  LossGradient out;
  out.loss = SoftmaxResidual(residual, data, rows);
  out.gradient.resize(dimension());
  double* g = out.gradient.data();
  MatrixMap dw1(g, hidden_, features_);
  g += hidden_ * features_;
  Eigen::Map<Eigen::VectorXd> db1(g, hidden_);
  g += hidden_;
  MatrixMap dw2(g, classes_, hidden_);
  g += classes_ * hidden_;
  Eigen::Map<Eigen::VectorXd> db2(g, classes_);

  dw2 = residual.transpose() * h;
  db2 = residual.colwise().sum().transpose();
  const Eigen::MatrixXd dh = residual * w2;
  const Eigen::MatrixXd da = (dh.array() * (1.0 - h.array().square())).matrix();
  dw1 = da.transpose() * x;
  db1 = da.colwise().sum().transpose();
  return out;
}

ModelVector Perceptron::InitialParameters(RandomStream& stream) const {
  ModelVector params = ModelVector::Zero(dimension());
  const double s1 = 1.0 / std::sqrt(static_cast<double>(features_));
  const double s2 = 1.0 / std::sqrt(static_cast<double>(hidden_));
  int i = 0;
  for (int n = 0; n < hidden_ * features_; ++n)
    params[i++] = s1 * stream.Normal();
  i += hidden_;
  for (int n = 0; n < classes_ * hidden_; ++n)
    params[i++] = s2 * stream.Normal();
  return params;
}

}  // namespace risfeel
