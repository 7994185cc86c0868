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

#ifndef COREG_DIRICHLET_H_
#define COREG_DIRICHLET_H_

#include <Eigen/Core>

#include "coreg/categorical.h"

namespace coreg {

// Concentration parameters for a matrix whose columns are independent
// Dirichlet-distributed categoricals. Entry (r, c) is the concentration of
// outcome r in column c. All entries stay strictly positive; updates only
// ever add non-negative soft counts.
class DirichletParams {
 public:
  DirichletParams(int rows, int cols, double prior);
  explicit DirichletParams(Eigen::MatrixXd concentrations);

  int rows() const { return static_cast<int>(concentrations_.rows()); }
  int cols() const { return static_cast<int>(concentrations_.cols()); }
  const Eigen::MatrixXd& concentrations() const { return concentrations_; }

  // Adds counts[c] to cell (row, c) for every column c.
  void AddToRow(int row, const Eigen::VectorXd& counts);
  // Adds the outer product rows_weights * cols_weights^T.
  void AddOuter(const Eigen::VectorXd& row_weights,
                const Eigen::VectorXd& col_weights);

  // Column-normalized concentrations: the posterior mean matrix.
  Eigen::MatrixXd Mean() const;
  Categorical ColumnMean(int col) const;
  double TotalMass() const { return concentrations_.sum(); }

 private:
  Eigen::MatrixXd concentrations_;
};

}  // namespace coreg

#endif  // COREG_DIRICHLET_H_
