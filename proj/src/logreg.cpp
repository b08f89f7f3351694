// Copyright 2026 The Emokit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "emokit/logreg.hpp"

#include <cmath>

namespace emokit {
namespace logreg {

namespace {

Matrix with_bias_row(const Matrix& x) {
  Matrix xb(x.rows() + 1, x.cols());
  xb.topRows(x.rows()) = x;
  xb.row(x.rows()).setOnes();
  return xb;
}

// Column-wise softmax of logits, shifted by the column max for stability.
Matrix softmax_columns(const Matrix& logits) {
  Matrix p(logits.rows(), logits.cols());
  for (Eigen::Index c = 0; c < logits.cols(); ++c) {
    const Vector z = logits.col(c);
    const double m = z.maxCoeff();
    Vector e = (z.array() - m).exp();
    p.col(c) = e / e.sum();
  }
  return p;
}

void check_shapes(const Matrix& weights, const Matrix& x,
                  const std::vector<int>& labels) {
  if (weights.cols() != x.rows() + 1) {
    throw ValidationError("weight/feature dimension mismatch");
  }
  if (static_cast<Eigen::Index>(labels.size()) != x.cols()) {
    throw ValidationError("label count does not match feature columns");
  }
  for (const int y : labels) {
    if (y < 0 || y >= weights.rows()) {
      throw ValidationError("label out of range: " + std::to_string(y));
    }
  }
}

}  // namespace

Matrix predict_probs(const Matrix& weights, const Matrix& x) {
  if (weights.cols() != x.rows() + 1) {
    throw ValidationError("weight/feature dimension mismatch");
  }
  return softmax_columns(weights * with_bias_row(x));
}

Vector predict_one(const Matrix& weights, const Vector& x) {
  return predict_probs(weights, x).col(0);
}

double loss(const Matrix& weights, const Matrix& x,
            const std::vector<int>& labels, double l2) {
  check_shapes(weights, x, labels);
  const Matrix xb = with_bias_row(x);
  const Matrix logits = weights * xb;
  double total = 0.0;
  for (Eigen::Index c = 0; c < logits.cols(); ++c) {
    const Vector z = logits.col(c);
    const double m = z.maxCoeff();
    const double lse = m + std::log((z.array() - m).exp().sum());
    total += lse - z[labels[static_cast<size_t>(c)]];
  }
  const double data = total / static_cast<double>(x.cols());
  const double penalty =
      0.5 * l2 * weights.leftCols(weights.cols() - 1).squaredNorm();
  return data + penalty;
}

Matrix gradient(const Matrix& weights, const Matrix& x,
                const std::vector<int>& labels, double l2) {
  check_shapes(weights, x, labels);
  const Matrix xb = with_bias_row(x);
  Matrix delta = softmax_columns(weights * xb);
  for (Eigen::Index c = 0; c < delta.cols(); ++c) {
    delta(labels[static_cast<size_t>(c)], c) -= 1.0;
  }
  Matrix g = (delta * xb.transpose()) / static_cast<double>(x.cols());
  g.leftCols(g.cols() - 1) += l2 * weights.leftCols(weights.cols() - 1);
  return g;
}

Matrix fit(const Matrix& x, const std::vector<int>& labels, int n_classes,
           const Hyper& hyper) {
  if (n_classes < 2) throw ValidationError("need at least two classes");
  if (x.cols() == 0) throw ValidationError("cannot fit on zero examples");
  if (hyper.lr <= 0.0 || hyper.epochs < 0 || hyper.l2 < 0.0) {
    throw ConfigError("lr must be > 0, epochs >= 0, l2 >= 0");
  }
  Matrix weights = Matrix::Zero(n_classes, x.rows() + 1);
  const Matrix xb = with_bias_row(x);
  const double shrink = 1.0 / (1.0 + hyper.lr * hyper.l2);
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    Matrix delta = softmax_columns(weights * xb);
    for (Eigen::Index c = 0; c < delta.cols(); ++c) {
      delta(labels[static_cast<size_t>(c)], c) -= 1.0;
    }
    const Matrix g = (delta * xb.transpose()) / static_cast<double>(x.cols());
    weights -= hyper.lr * g;
    weights.leftCols(weights.cols() - 1) *= shrink;
  }
  if (!weights.allFinite()) {
    throw NumericError("logistic regression diverged; reduce lr");
  }
  return weights;
}

}  // namespace logreg
}  // namespace emokit
