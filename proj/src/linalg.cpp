#include "biharm/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace biharm {

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& H) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

Eigen::VectorXd hermitian_eigenvalues_jacobi(const Eigen::MatrixXcd& H, double tol,
                                             int max_sweeps) {
    const Eigen::Index n = H.rows();
    const Eigen::Index m = 2 * n;
    Eigen::MatrixXd A(m, m);
    A.topLeftCorner(n, n) = H.real();
    A.topRightCorner(n, n) = -H.imag();
    A.bottomLeftCorner(n, n) = H.imag();
    A.bottomRightCorner(n, n) = H.real();
    A = 0.5 * (A + A.transpose()).eval();

    auto off_norm = [&] {
        double s = 0.0;
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j)
                if (i != j) s += A(i, j) * A(i, j);
        return std::sqrt(s);
    };
    const double scale = std::max(A.norm(), 1e-300);

    for (int sweep = 0; sweep < max_sweeps && off_norm() > tol * scale; ++sweep) {
        for (Eigen::Index p = 0; p < m - 1; ++p) {
            for (Eigen::Index q = p + 1; q < m; ++q) {
                const double apq = A(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < m; ++k) {
                    const double akp = A(k, p);
                    const double akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < m; ++k) {
                    const double apk = A(p, k);
                    const double aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
            }
        }
    }

    std::vector<double> diag(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) diag[static_cast<std::size_t>(i)] = A(i, i);
    std::sort(diag.begin(), diag.end());
    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i)
        out[i] = 0.5 * (diag[static_cast<std::size_t>(2 * i)] + diag[static_cast<std::size_t>(2 * i + 1)]);
    return out;
}

double hermitian_defect(const Eigen::MatrixXcd& H) {
    return (H - H.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace biharm
