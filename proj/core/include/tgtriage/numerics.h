// Copyright 2026 The tgtriage Authors.
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

#ifndef TGTRIAGE_NUMERICS_H_
#define TGTRIAGE_NUMERICS_H_

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tgtriage::numerics {

// Dense row-major matrix of doubles. Column vectors are n x 1.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  // Throws DimensionError if data.size() != rows * cols.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix Identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double &operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  Matrix Transposed() const;
  bool AllFinite() const;
  void Fill(double value);
  bool SameShape(const Matrix &other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  bool operator==(const Matrix &) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Throws DimensionError unless a.cols() == b.rows().
Matrix MatMul(const Matrix &a, const Matrix &b);

// SplitMix64 generator. Every draw is derived from Next(), so the stream is
// fully determined by the seed.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next();

  // Uniform on [0, 1) from the top 53 bits.
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform on [0, n) by multiply-high scaling (no rejection). n > 0.
  std::uint64_t UniformInt(std::uint64_t n);

  // Standard normal via Box-Muller; the second variate is cached.
  double Normal();

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// In-place Fisher-Yates, walking i from n-1 down to 1.
template <typename T>
void Shuffle(std::span<T> items, Prng &rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = rng.UniformInt(i);
    std::swap(items[i - 1], items[j]);
  }
}

struct AdamConfig {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  bool operator==(const AdamConfig &) const = default;
};

// Moment accumulators for one parameter tensor.
struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  std::int64_t t = 0;

  explicit AdamState(std::size_t n = 0) : m(n, 0.0), v(n, 0.0) {}
};

// One bias-corrected Adam update. Throws DimensionError on size mismatch.
void AdamStep(std::span<double> params, std::span<const double> grads,
              AdamState &state, const AdamConfig &config = {});
void AdamStep(Matrix &params, const Matrix &grads, AdamState &state,
              const AdamConfig &config = {});

using ScalarFunction = std::function<double(std::span<const double>)>;

// Central differences (f(x + h e_i) - f(x - h e_i)) / 2h. Throws
// NumericalError if f returns a non-finite value.
std::vector<double> FiniteDifferenceGradient(const ScalarFunction &f,
                                             std::span<const double> x,
                                             double h = 1e-5);

// Same, restricted to the listed coordinates of x.
std::vector<double> FiniteDifferenceGradient(
    const ScalarFunction &f, std::span<const double> x,
    std::span<const std::size_t> coordinates, double h = 1e-5);

inline double Sigmoid(double z) {
  if (z >= 0) {
    double e = std::exp(-z);
    return 1.0 / (1.0 + e);
  }
  double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace tgtriage::numerics

#endif  // TGTRIAGE_NUMERICS_H_
