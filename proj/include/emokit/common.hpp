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

#ifndef EMOKIT_COMMON_HPP_
#define EMOKIT_COMMON_HPP_

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace emokit {

using Scalar = double;
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using Vector6 = Eigen::Matrix<Scalar, 6, 1>;
using ComplexMatrix =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr int kNumClasses = 6;

// Base class for all emokit failures.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Data violates a documented invariant (bad simplex, duplicate id, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A file or payload could not be decoded.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Bad settings: missing env var, impossible parameter combination.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Filesystem or network failure.
class IoError : public Error {
 public:
  using Error::Error;
};

// Non-finite values or numerical divergence.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace emokit

#endif  // EMOKIT_COMMON_HPP_
