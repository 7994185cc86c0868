// Copyright 2026 The coreg Authors
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

#ifndef COREG_CATEGORICAL_H_
#define COREG_CATEGORICAL_H_

#include <stdexcept>

#include <Eigen/Core>

namespace coreg {

// Inputs whose total deviates from 1 by less than this are renormalized;
// larger deviations are rejected.
inline constexpr double kNormalizationSlack = 1e-6;

// Floor applied to the reference distribution before a KL divergence.
inline constexpr double kKlFloor = 1e-12;

// Thrown when two distributions or matrices have incompatible shapes.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A probability vector over a finite support {0, ..., size-1}.
//
// Entries are non-negative and sum to one within 1e-9. Values are immutable
// once constructed.
class Categorical {
 public:
  // Throws std::invalid_argument on empty input, negative or non-finite
  // entries, or a total further than kNormalizationSlack from 1.
  explicit Categorical(Eigen::VectorXd probs);

  static Categorical Uniform(int size);
  static Categorical OneHot(int size, int index);

  // Normalizes an arbitrary non-negative weight vector with positive mass.
  static Categorical FromWeights(const Eigen::VectorXd& weights);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[i]; }
  const Eigen::VectorXd& probs() const { return probs_; }

  bool IsOneHot() const;

 private:
  Eigen::VectorXd probs_;
};

// Shannon entropy in nats, with 0 ln 0 taken as 0.
double Entropy(const Categorical& p);

// KL(p || q) in nats. Entries of q below kKlFloor are raised to the floor
// and q is renormalized first, so the result is always finite.
double KlDivergence(const Categorical& p, const Categorical& q);

// Jensen-Shannon divergence in nats; symmetric and bounded by ln 2.
double JsDivergence(const Categorical& p, const Categorical& q);

// exp(-v_i) / sum_j exp(-v_j), evaluated with the minimum subtracted.
Categorical SoftmaxNeg(const Eigen::VectorXd& values);

}  // namespace coreg

#endif  // COREG_CATEGORICAL_H_
