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

#include "coreg/categorical.h"

#include <cmath>
#include <string>
#include <utility>

namespace coreg {
namespace {

void CheckSameSize(const Categorical& p, const Categorical& q) {
  if (p.size() != q.size()) {
    throw DimensionError("support size mismatch: " + std::to_string(p.size()) +
                         " vs " + std::to_string(q.size()));
  }
}

// Plain KL without smoothing; caller guarantees q_i > 0 wherever p_i > 0.
double RawKl(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) total += p[i] * std::log(p[i] / q[i]);
  }
  return total;
}

}  // namespace

Categorical::Categorical(Eigen::VectorXd probs) : probs_(std::move(probs)) {
  if (probs_.size() == 0) {
    throw std::invalid_argument("categorical support must be non-empty");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < probs_.size(); ++i) {
    const double v = probs_[i];
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("categorical entry " + std::to_string(i) +
                                  " is negative or not finite");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) >= kNormalizationSlack) {
    throw std::invalid_argument("categorical entries sum to " +
                                std::to_string(sum));
  }
  if (sum != 1.0) probs_ /= sum;
}

Categorical Categorical::Uniform(int size) {
  if (size <= 0) throw std::invalid_argument("uniform size must be positive");
  return Categorical(Eigen::VectorXd::Constant(size, 1.0 / size));
}

Categorical Categorical::OneHot(int size, int index) {
  if (index < 0 || index >= size) {
    throw std::out_of_range("one-hot index out of range");
  }
  Eigen::VectorXd probs = Eigen::VectorXd::Zero(size);
  probs[index] = 1.0;
  return Categorical(std::move(probs));
}

Categorical Categorical::FromWeights(const Eigen::VectorXd& weights) {
  const double total = weights.sum();
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw std::invalid_argument("weights must have positive finite mass");
  }
  return Categorical(weights / total);
}

bool Categorical::IsOneHot() const {
  int nonzero = 0;
  for (Eigen::Index i = 0; i < probs_.size(); ++i) {
    if (probs_[i] > 0.0) ++nonzero;
  }
  return nonzero == 1;
}

double Entropy(const Categorical& p) {
  double h = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) h -= p[i] * std::log(p[i]);
  }
  return h < 0.0 ? 0.0 : h;
}

double KlDivergence(const Categorical& p, const Categorical& q) {
  CheckSameSize(p, q);
  Eigen::VectorXd smoothed = q.probs().cwiseMax(kKlFloor);
  smoothed /= smoothed.sum();
  const double kl = RawKl(p.probs(), smoothed);
  return kl < 0.0 ? 0.0 : kl;
}

double JsDivergence(const Categorical& p, const Categorical& q) {
  CheckSameSize(p, q);
  // The mixture is positive wherever either input is, so no floor is needed.
  const Eigen::VectorXd mixture = 0.5 * (p.probs() + q.probs());
  const double js =
      0.5 * RawKl(p.probs(), mixture) + 0.5 * RawKl(q.probs(), mixture);
  return js < 0.0 ? 0.0 : js;
}

Categorical SoftmaxNeg(const Eigen::VectorXd& values) {
  if (values.size() == 0) {
    throw std::invalid_argument("softmax of an empty vector");
  }
  const double lowest = values.minCoeff();
  Eigen::VectorXd weights = (-(values.array() - lowest)).exp().matrix();
  return Categorical(weights / weights.sum());
}

}  // namespace coreg
