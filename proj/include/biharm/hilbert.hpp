#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "biharm/spectrum.hpp"

namespace biharm {

using cplx = std::complex<double>;

/// Coefficients against the orthonormal sine basis, aligned with `modes`.
struct CoeffState {
    ModeList modes;
    Eigen::VectorXcd coeffs;
    std::string label;

    CoeffState() = default;
    CoeffState(ModeList modes_, Eigen::VectorXcd coeffs_, std::string label_ = {});

    Eigen::Index size() const noexcept { return coeffs.size(); }

    /// Position of mode index n in `modes`, or -1.
    Eigen::Index position_of(int n) const noexcept;
};

CoeffState zero_state(ModeList modes);
CoeffState unit_state(ModeList modes, int n);

/// Weights |lambda_n|^(2 theta); a zero eigenvalue gets weight 1 and is listed
/// in `substituted`.
struct ThetaWeight {
    double theta = 0.0;
    std::vector<double> weights;
    std::vector<int> substituted;
};

ThetaWeight make_theta_weight(const MediumParams& params, const ModeList& modes, double theta);

double norm_theta(const CoeffState& state, const ThetaWeight& w);

/// Sum_n a_n conj(b_n); both states must share the same mode order.
cplx inner(const CoeffState& a, const CoeffState& b);

/// Composite Simpson weights for `points` uniform nodes over a length `length`
/// (Simpson 3/8 closes an odd interval count).
std::vector<double> simpson_weights(std::size_t points, double length);

/// Samples a uniform grid on [0, ell] that includes both endpoints.
CoeffState project(std::span<const cplx> samples, const MediumParams& params, int N,
                   double int_tol = kDefaultIntTol);

std::vector<cplx> synthesize(const CoeffState& state, const MediumParams& params,
                             std::span<const double> xgrid);

std::vector<double> uniform_grid(double a, double b, std::size_t points);

}  // namespace biharm
