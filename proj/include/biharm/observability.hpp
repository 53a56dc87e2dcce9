#pragma once

#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "biharm/hilbert.hpp"

namespace biharm {

/// Gram matrix of {exp(i lambda_n t)} on (0, T):
/// G[n][m] = int_0^T exp(i (lambda_m - lambda_n) t) dt.
struct GramData {
    double T = 0.0;
    std::vector<double> lambdas;
    Eigen::MatrixXcd G;
    double min_eig = 0.0;
    double max_eig = 0.0;
    double cond_proxy = std::numeric_limits<double>::infinity();
};

GramData gram_matrix(std::span<const double> lambdas, double T);

/// D^{-1/2} Ghat D^{-1/2} with Ghat[n][m] = Phi_n'(0) Phi_m'(0) G[n][m] and
/// D the theta = 1/4 weights.
Eigen::MatrixXcd weighted_gramian(const MediumParams& params, const ModeList& modes, double T);

struct ObservabilityBounds {
    double lower = 0.0;  // best c with int |z_x(t,0)|^2 >= c ||z0||_{1/4}^2
    double upper = 0.0;
    double lower_jacobi = 0.0;  // second-method value of `lower`
};

ObservabilityBounds observability_bounds(const MediumParams& params, int N, double T,
                                         double int_tol = kDefaultIntTol);

double observability_constant(const MediumParams& params, int N, double T,
                              double int_tol = kDefaultIntTol);

/// Boundary observation energy int_0^T |z_x(t,0)|^2 as c^* Ghat c.
double observation_energy(const CoeffState& z0, double T);

/// Normalized combination (q, -p)/sqrt(p^2+q^2) on modes (p, q) whose boundary
/// slope vanishes identically. The state is expressed on modes 1..N (N >= q;
/// N = 0 means N = q).
CoeffState invisible_mode(const MediumParams& params, std::pair<int, int> pair, int N = 0,
                          double int_tol = kDefaultIntTol);

enum class ScanStatus { controllable, ill_conditioned, resonant };

const char* to_string(ScanStatus status) noexcept;

struct ScanRow {
    double gamma = 0.0;
    double constant = 0.0;
    bool resonant = false;  // resonance_check at int_tol
    ScanStatus status = ScanStatus::controllable;
    double nearest_critical = 0.0;  // nearest point of the critical set
    double distance = 0.0;
};

/// Closest gamma = -pi^2 (p^2 + q^2) / ell^2, p < q.
double nearest_critical_gamma(double gamma, double ell);

/// One row per gamma, in input order. Rows run on up to `workers` threads
/// (0 = BIHARM_NUM_THREADS or hardware concurrency).
std::vector<ScanRow> resonance_scan(std::span<const double> gamma_grid, double ell, int N,
                                    double T, double int_tol = kDefaultIntTol,
                                    unsigned workers = 0);

unsigned worker_count_from_env();

}  // namespace biharm
