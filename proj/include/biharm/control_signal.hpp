#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace biharm {

/// Integral of exp(i omega t) over (0, T); series form near omega T = 0.
std::complex<double> exp_integral(double omega, double T) noexcept;

/// Boundary control f(t) = sum_m beta_m exp(i lambda_m t) on (0, T).
struct ControlSignal {
    std::vector<double> lambdas;
    Eigen::VectorXcd betas;
    double T = 0.0;

    std::complex<double> operator()(double t) const;
    std::vector<std::complex<double>> sample(std::span<const double> times) const;

    /// ||f||^2 over (0, T) in closed form, beta^* G beta.
    double l2_norm_squared() const;
    double l2_norm() const;

    /// Integral of exp(-i omega s) f(s) ds over (0, T), closed form.
    std::complex<double> moment(double omega) const;
};

ControlSignal zero_control(double T);

}  // namespace biharm
