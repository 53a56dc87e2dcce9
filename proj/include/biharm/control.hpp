#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "biharm/control_signal.hpp"
#include "biharm/evolution.hpp"
#include "biharm/observability.hpp"

namespace biharm {

struct ControlReport {
    std::vector<double> residual_modal;  // |y_n(T)| in mode order
    double residual_theta = 0.0;         // ||y(T)||_{-1/4}
    double gram_cond = 0.0;
    double control_energy = 0.0;         // ||f||_{L^2(0,T)}
    bool verified_by_oracle = false;
    double oracle_discrepancy = 0.0;     // max_n |y_rk4 - y_exact| / max(||y0||, 1e-300)
    double tail_energy = 0.0;            // L^2 energy of y0 beyond mode N
    double irreducible_residual = 0.0;   // ||invisible part of y0||_{-1/4}
    double initial_norm = 0.0;           // ||y0||_{L^2} on modes 1..N
    double reg = 0.0;
    CoeffState final_state;
};

/// d_n with int_0^T exp(-i lambda_n s) f(s) ds = d_n  =>  y_n(T) = 0.
Eigen::VectorXcd moment_rhs(const CoeffState& y0);

/// Solves (G + reg I) beta = d. With reg = 0 a numerically singular G raises
/// SingularGram.
Eigen::VectorXcd solve_moment(const GramData& gram, const Eigen::VectorXcd& d, double reg = 0.0);

struct NullControlOptions {
    double reg = 0.0;
    double int_tol = kDefaultIntTol;
    bool verify_with_oracle = true;
    double oracle_phase_step = 0.02;  // max |lambda| dt for the RK4 check
    double oracle_tol = 1e-6;
};

/// Controls modes 1..N of y0 to zero at time T. Components of y0 beyond N are
/// left alone and reported in tail_energy.
std::pair<ControlSignal, ControlReport> null_control(const MediumParams& params,
                                                     const CoeffState& y0, double T, int N,
                                                     const NullControlOptions& options = {});

/// For resonant gamma: controls the part of y0 orthogonal to the invisible
/// directions and reports what survives.
std::pair<ControlSignal, ControlReport> diagnose_resonant_full(
    const MediumParams& params, const CoeffState& y0, double T, int N,
    const NullControlOptions& options = {});

ControlReport diagnose_resonant(const MediumParams& params, const CoeffState& y0, double T,
                                int N, const NullControlOptions& options = {});

/// Restricts or zero-pads y0 onto enumerate_modes(params, N).
CoeffState restrict_to_modes(const CoeffState& y0, const ModeList& modes);

}  // namespace biharm
