#pragma once

#include <Eigen/Dense>

namespace biharm {

/// Eigenvalues of a Hermitian matrix, ascending (LAPACK-style QR via Eigen).
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& H);

/// Same spectrum by cyclic Jacobi rotations on the real 2n x 2n embedding
/// [[Re H, -Im H], [Im H, Re H]]; each eigenvalue appears twice there and is
/// reported once. Used as an independent cross-check for small matrices.
Eigen::VectorXd hermitian_eigenvalues_jacobi(const Eigen::MatrixXcd& H, double tol = 1e-15,
                                             int max_sweeps = 100);

/// Largest deviation from Hermitian symmetry, max |H - H^*|.
double hermitian_defect(const Eigen::MatrixXcd& H);

}  // namespace biharm
