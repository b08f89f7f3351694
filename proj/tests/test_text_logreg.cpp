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

#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "emokit/logreg.hpp"
#include "emokit/rng.hpp"
#include "emokit/text.hpp"

using emokit::Matrix;
using emokit::Rng;
using emokit::Vector;
namespace text = emokit::text;
namespace logreg = emokit::logreg;

TEST_CASE("tokenize lowercases and splits on non-alphanumerics") {
  CHECK(text::tokenize("Hello, WORLD!") ==
        std::vector<std::string>{"hello", "world"});
  CHECK(text::tokenize("a-b_c  d\te") ==
        std::vector<std::string>{"a", "b", "c", "d", "e"});
  CHECK(text::tokenize("it's 42 things") ==
        std::vector<std::string>{"it", "s", "42", "things"});
  CHECK(text::tokenize("") == std::vector<std::string>{});
  CHECK(text::tokenize("!!! ???") == std::vector<std::string>{});
  // Multi-byte UTF-8 sequences act as separators, not letters.
  CHECK(text::tokenize("h\xc3\xa9llo") ==
        std::vector<std::string>{"h", "llo"});
}

TEST_CASE("vocabulary keeps frequent tokens in lexicographic order") {
  const std::vector<std::vector<std::string>> docs = {
      {"dog", "cat", "dog"},
      {"cat", "bird"},
      {"zebra"},
  };
  const auto vocab = text::Vocabulary::build(docs, 2);
  // dog appears twice in one doc, cat once in each of two docs; bird and
  // zebra appear once overall and are dropped.
  REQUIRE(vocab.size() == 2);
  CHECK(vocab.tokens() == std::vector<std::string>{"cat", "dog"});
  CHECK(vocab.index("cat") == 0);
  CHECK(vocab.index("dog") == 1);
  CHECK(vocab.index("bird") == -1);
  CHECK(vocab.index("never-seen") == -1);

  const Vector counts = vocab.count_features({"dog", "dog", "bird", "cat"});
  REQUIRE(counts.size() == 2);
  CHECK(counts[0] == 1.0);
  CHECK(counts[1] == 2.0);

  SUBCASE("min_freq of one keeps everything") {
    const auto all = text::Vocabulary::build(docs, 1);
    CHECK(all.size() == 4);
    CHECK(all.tokens() ==
          std::vector<std::string>{"bird", "cat", "dog", "zebra"});
  }
  SUBCASE("from_tokens rebuilds the same mapping") {
    const auto copy = text::Vocabulary::from_tokens(vocab.tokens());
    CHECK(copy.size() == vocab.size());
    CHECK(copy.index("dog") == vocab.index("dog"));
  }
}

namespace {

// Random multiclass problem with a known generating structure.
struct Problem {
  Matrix x;        // d x n
  std::vector<int> labels;
};

Problem random_problem(Rng& rng, int d, int n, int n_classes) {
  Problem p;
  p.x = Matrix(d, n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < d; ++r) p.x(r, c) = rng.gaussian();
    p.labels.push_back(static_cast<int>(rng.uniform_int(n_classes)));
  }
  return p;
}

}  // namespace

TEST_CASE("logreg gradient matches central finite differences") {
  Rng rng(101);
  const int d = 3, n = 20, n_classes = 3;
  const auto p = random_problem(rng, d, n, n_classes);
  Matrix w(n_classes, d + 1);
  for (int r = 0; r < n_classes; ++r) {
    for (int c = 0; c <= d; ++c) w(r, c) = 0.3 * rng.gaussian();
  }
  const double l2 = 0.05;
  const Matrix g = logreg::gradient(w, p.x, p.labels, l2);
  const double h = 1e-6;
  for (int r = 0; r < n_classes; ++r) {
    for (int c = 0; c <= d; ++c) {
      Matrix wp = w, wm = w;
      wp(r, c) += h;
      wm(r, c) -= h;
      const double numeric =
          (logreg::loss(wp, p.x, p.labels, l2) -
           logreg::loss(wm, p.x, p.labels, l2)) /
          (2.0 * h);
      CHECK(g(r, c) == doctest::Approx(numeric).epsilon(1e-5));
    }
  }
}

TEST_CASE("predicted probabilities form a distribution") {
  Rng rng(103);
  const int d = 4, n = 30, n_classes = 6;
  const auto p = random_problem(rng, d, n, n_classes);
  Matrix w(n_classes, d + 1);
  for (int r = 0; r < n_classes; ++r) {
    for (int c = 0; c <= d; ++c) w(r, c) = rng.gaussian();
  }
  const Matrix probs = logreg::predict_probs(w, p.x);
  REQUIRE(probs.rows() == n_classes);
  REQUIRE(probs.cols() == n);
  for (int c = 0; c < n; ++c) {
    CHECK(probs.col(c).sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(probs.col(c).minCoeff() >= 0.0);
  }
  // predict_one agrees with the matrix path.
  const Vector one = logreg::predict_one(w, p.x.col(0));
  CHECK((one - probs.col(0)).cwiseAbs().maxCoeff() < 1e-15);
  // Softmax stays finite under extreme logits.
  Matrix big = w;
  big.row(0).setConstant(400.0);
  const Matrix extreme = logreg::predict_probs(big, p.x);
  CHECK(extreme.allFinite());
}

TEST_CASE("fit separates linearly separable classes") {
  Rng rng(107);
  const int n_per = 40;
  Matrix x(2, 3 * n_per);
  std::vector<int> labels;
  const double centers[3][2] = {{4.0, 0.0}, {-4.0, 4.0}, {0.0, -4.0}};
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < n_per; ++i) {
      const int c = k * n_per + i;
      x(0, c) = centers[k][0] + 0.3 * rng.gaussian();
      x(1, c) = centers[k][1] + 0.3 * rng.gaussian();
      labels.push_back(k);
    }
  }
  logreg::Hyper hyper;
  hyper.epochs = 300;
  const Matrix w = logreg::fit(x, labels, 3, hyper);
  const Matrix probs = logreg::predict_probs(w, x);
  int correct = 0;
  for (int c = 0; c < 3 * n_per; ++c) {
    int best = 0;
    for (int r = 1; r < 3; ++r) {
      if (probs(r, c) > probs(best, c)) best = r;
    }
    if (best == labels[static_cast<size_t>(c)]) ++correct;
  }
  CHECK(correct == 3 * n_per);
  // Training reduced the loss from its zero-weight starting point.
  CHECK(logreg::loss(w, x, labels, hyper.l2) <
        logreg::loss(Matrix::Zero(3, 3), x, labels, hyper.l2));
}

TEST_CASE("huge l2 shrinks weights but not biases") {
  Rng rng(109);
  const auto p = random_problem(rng, 3, 60, 3);
  std::vector<int> labels = p.labels;
  // Skew the label marginals so the optimal bias is nonzero.
  for (size_t i = 0; i < labels.size(); ++i) {
    if (i % 4 != 0) labels[i] = 0;
  }
  logreg::Hyper hyper;
  hyper.l2 = 1e6;
  hyper.epochs = 200;
  const Matrix w = logreg::fit(p.x, labels, 3, hyper);
  CHECK(w.allFinite());
  // Weight block collapses under the penalty.
  CHECK(w.leftCols(3).cwiseAbs().maxCoeff() < 1e-3);
  // Bias block still reflects the skewed marginals.
  CHECK(w.col(3).cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("fit is deterministic") {
  Rng rng(113);
  const auto p = random_problem(rng, 4, 50, 6);
  logreg::Hyper hyper;
  hyper.epochs = 50;
  const Matrix a = logreg::fit(p.x, p.labels, 6, hyper);
  const Matrix b = logreg::fit(p.x, p.labels, 6, hyper);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}
