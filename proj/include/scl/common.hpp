// Copyright 2026 The scl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace scl {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using QubitSet = std::vector<int>;

// Base error for every rejected input or failed precondition.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a learning pipeline cannot produce an answer.
class LearningFailure : public Error {
 public:
  explicit LearningFailure(const std::string& what) : Error(what) {}
};

inline constexpr int kFormatVersion = 1;
inline constexpr int kDefaultDenseCap = 14;
inline constexpr int kDefaultKMax = 8;

// Dense-simulation qubit cap; SCL_DENSE_CAP overrides the default.
int dense_cap();
void check_dense_cap(int n, const std::string& what);

// Sorted, deduplicated copy.
QubitSet normalized(QubitSet s);
QubitSet set_union(const QubitSet& a, const QubitSet& b);
bool contains(const QubitSet& s, int q);
int index_in(const QubitSet& s, int q);

// Runs fn(i) for i in [0, count) on up to `jobs` threads, in contiguous
// chunks. The first exception thrown by a worker is rethrown.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace scl
