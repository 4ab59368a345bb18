// Copyright 2026 The sampamp Authors
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

#ifndef SAMPAMP_LINALG_HPP_
#define SAMPAMP_LINALG_HPP_

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "sampamp/error.hpp"

namespace sampamp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
// Symmetric d x d matrix; symmetry is checked where it matters.
using SymMatrix = Eigen::MatrixXd;

inline double max_abs_entry(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_symmetric(const Matrix& m, double rel_tol = 1e-12) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, max_abs_entry(m));
  return max_abs_entry(m - m.transpose()) <= rel_tol * scale;
}

inline void require_symmetric(const Matrix& m, const std::string& what) {
  require(is_symmetric(m), ErrorCode::kValidation, what + " must be square and symmetric");
}

// Eigenvalues in [-1e-10 ||M||, 0] are clipped to zero; anything lower fails.
struct PsdEigen {
  Vector values;
  Matrix vectors;
  double norm = 0.0;
};

inline PsdEigen psd_eigen(const SymMatrix& m) {
  require_symmetric(m, "matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.transpose()));
  require(solver.info() == Eigen::Success, ErrorCode::kNotPsd, "eigendecomposition failed");
  PsdEigen out;
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  out.norm = out.values.size() == 0 ? 0.0 : out.values.cwiseAbs().maxCoeff();
  const double floor = -1e-10 * out.norm;
  for (Eigen::Index i = 0; i < out.values.size(); ++i) {
    require(out.values(i) >= floor, ErrorCode::kNotPsd,
            "eigenvalue " + std::to_string(out.values(i)) + " below tolerance floor");
    if (out.values(i) < 0.0) out.values(i) = 0.0;
  }
  return out;
}

// Symmetric square root R with R R = M. With pseudo set, returns the inverse
// square root on the positive eigenspace and zero on the kernel.
inline SymMatrix sym_sqrt(const SymMatrix& m, bool pseudo = false) {
  const PsdEigen e = psd_eigen(m);
  const double kernel = 1e-10 * e.norm;
  Vector roots(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    const double v = e.values(i);
    if (pseudo) {
      roots(i) = v > kernel ? 1.0 / std::sqrt(v) : 0.0;
    } else {
      roots(i) = std::sqrt(v);
    }
  }
  return e.vectors * roots.asDiagonal() * e.vectors.transpose();
}

}  // namespace sampamp

#endif  // SAMPAMP_LINALG_HPP_
