#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "biharm/control_signal.hpp"
#include "biharm/hilbert.hpp"

namespace biharm {

/// Samples of d/dx z(t, 0).
struct TraceSeries {
    std::vector<double> times;
    std::vector<cplx> values;
};

CoeffState free_evolve(const CoeffState& state, double t);

TraceSeries boundary_trace(const CoeffState& state, std::span<const double> times);
cplx boundary_trace_at(const CoeffState& state, double t);

double energy(const CoeffState& state, const ThetaWeight& w, double t);

// The controlled modal equation, obtained by testing the equation against
// Phi_n and integrating by parts twice, is
//     y_n'(t) = i lambda_n y_n(t) + i Phi_n'(0) f(t),
// so y_n(T) = exp(i lambda_n T) [y_n(0) + i Phi_n'(0) int_0^T exp(-i lambda_n s) f(s) ds].
inline const cplx kBoundaryForcingSign{0.0, 1.0};

/// Exact Duhamel propagation with closed-form exponential integrals.
CoeffState controlled_evolve(const CoeffState& y0, const ControlSignal& f, double T);

/// Duhamel propagation for a control only available pointwise; the forcing
/// integrals use composite Gauss-Legendre panels.
CoeffState controlled_evolve_sampled(const CoeffState& y0,
                                     const std::function<cplx(double)>& f, double T,
                                     int panels, int order = 16);

/// Classical RK4 on the modal ODE system; independent of the closed form.
CoeffState rk4_oracle(const CoeffState& y0, const ControlSignal& f, double T, long steps);

/// Smallest step count satisfying the RK4 resolution bound max|lambda| dt <= phase_step.
long rk4_steps_for(const CoeffState& y0, double T, double phase_step = 0.1);

struct DualityCheck {
    double max_abs_defect = 0.0;   // max |lhs - sigma' rhs|
    double max_rel_defect = 0.0;   // same, relative to max(|lhs|, |rhs|)
    cplx fitted_sigma{0.0, 0.0};   // lhs / rhs of the first triple
    int trials = 0;
};

/// Transposition identity
///     <y(T), z(T)> - <y0, z0> = i int_0^T f(t) conj(d/dx z(t, 0)) dt
/// on random triples. The right side is integrated in time by Gauss-Legendre
/// panels, independently of the Duhamel closed form on the left.
DualityCheck duality_check(const MediumParams& params, int N, int trials, unsigned seed,
                           double T = 1.0);

/// Runs duality_check once per process; throws UnresolvedSignConvention if the
/// identity fails to 1e-8.
void ensure_sign_convention();

}  // namespace biharm
