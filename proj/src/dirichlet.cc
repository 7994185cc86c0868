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

#include "coreg/dirichlet.h"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace coreg {
namespace {

void CheckCounts(const Eigen::VectorXd& counts) {
  for (Eigen::Index i = 0; i < counts.size(); ++i) {
    if (!std::isfinite(counts[i]) || counts[i] < 0.0) {
      throw std::invalid_argument("Dirichlet counts must be non-negative");
    }
  }
}

}  // namespace

DirichletParams::DirichletParams(int rows, int cols, double prior) {
  if (rows <= 0 || cols <= 0) {
    throw std::invalid_argument("Dirichlet shape must be positive");
  }
  if (!(prior > 0.0) || !std::isfinite(prior)) {
    throw std::invalid_argument("Dirichlet prior concentration must be > 0");
  }
  concentrations_ = Eigen::MatrixXd::Constant(rows, cols, prior);
}

DirichletParams::DirichletParams(Eigen::MatrixXd concentrations)
    : concentrations_(std::move(concentrations)) {
  if (concentrations_.size() == 0) {
    throw std::invalid_argument("Dirichlet shape must be positive");
  }
  for (Eigen::Index i = 0; i < concentrations_.size(); ++i) {
    const double v = concentrations_.data()[i];
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("Dirichlet concentrations must be > 0");
    }
  }
}

void DirichletParams::AddToRow(int row, const Eigen::VectorXd& counts) {
  if (row < 0 || row >= rows()) throw std::out_of_range("Dirichlet row");
  if (counts.size() != cols()) {
    throw DimensionError("Dirichlet row update has wrong length");
  }
  CheckCounts(counts);
  concentrations_.row(row) += counts.transpose();
}

void DirichletParams::AddOuter(const Eigen::VectorXd& row_weights,
                               const Eigen::VectorXd& col_weights) {
  if (row_weights.size() != rows() || col_weights.size() != cols()) {
    throw DimensionError("Dirichlet outer update has wrong shape");
  }
  CheckCounts(row_weights);
  CheckCounts(col_weights);
  concentrations_.noalias() += row_weights * col_weights.transpose();
}

Eigen::MatrixXd DirichletParams::Mean() const {
  const Eigen::RowVectorXd totals = concentrations_.colwise().sum();
  return concentrations_.array().rowwise() / totals.array();
}

Categorical DirichletParams::ColumnMean(int col) const {
  if (col < 0 || col >= cols()) throw std::out_of_range("Dirichlet column");
  return Categorical::FromWeights(concentrations_.col(col));
}

}  // namespace coreg
