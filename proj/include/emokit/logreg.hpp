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

// Multinomial logistic (softmax) regression on dense features, fit by
// full-batch gradient descent. The l2 penalty covers weights only, never
// the bias column.

#ifndef EMOKIT_LOGREG_HPP_
#define EMOKIT_LOGREG_HPP_

#include <vector>

#include "emokit/common.hpp"

namespace emokit {
namespace logreg {

struct Hyper {
  double l2 = 1e-4;
  int epochs = 500;
  double lr = 0.1;
  // Kept for interface stability; the fit is deterministic regardless
  // (zero initialization, fixed iteration order).
  long long seed = 0;
};

// Class probabilities for feature columns. weights is [C][d+1] with the
// bias in the last column; x columns are d-dimensional (bias appended
// internally).
Matrix predict_probs(const Matrix& weights, const Matrix& x);
Vector predict_one(const Matrix& weights, const Vector& x);

// Mean cross-entropy over columns plus l2/2 * ||W||^2 (bias excluded).
double loss(const Matrix& weights, const Matrix& x,
            const std::vector<int>& labels, double l2);

// Analytic gradient of loss() with respect to weights, same shape.
Matrix gradient(const Matrix& weights, const Matrix& x,
                const std::vector<int>& labels, double l2);

// Full-batch fit from zero initialization. The data term takes a plain
// gradient step; the ridge term is applied as its exact proximal update
// (weights /= 1 + lr*l2), which stays contractive for any l2 >= 0 where
// a plain penalty gradient step would diverge once lr*l2 > 2.
Matrix fit(const Matrix& x, const std::vector<int>& labels, int n_classes,
           const Hyper& hyper);

}  // namespace logreg
}  // namespace emokit

#endif  // EMOKIT_LOGREG_HPP_
