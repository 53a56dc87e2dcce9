#include "biharm/observability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "biharm/control_signal.hpp"
#include "biharm/errors.hpp"
#include "biharm/linalg.hpp"

namespace biharm {

namespace {

constexpr double pi = std::numbers::pi;

// Relative slack under which an integer relation is treated as exact rather
// than merely near-resonant.
constexpr double kExactTol = 1e-13;

Eigen::MatrixXcd scaled_gram(const ModeList& modes, double T) {
    std::vector<double> lambdas;
    lambdas.reserve(modes.size());
    for (const auto& m : modes) lambdas.push_back(m.lambda);
    Eigen::MatrixXcd G = gram_matrix(lambdas, T).G;
    for (Eigen::Index i = 0; i < G.rows(); ++i)
        for (Eigen::Index j = 0; j < G.cols(); ++j)
            G(i, j) *= modes[static_cast<std::size_t>(i)].trace0 *
                       modes[static_cast<std::size_t>(j)].trace0;
    return G;
}

}  // namespace

GramData gram_matrix(std::span<const double> lambdas, double T) {
    if (!(T > 0.0)) throw Error(ErrorCode::InvalidArgument, "T must be positive");
    GramData g;
    g.T = T;
    g.lambdas.assign(lambdas.begin(), lambdas.end());
    const auto n = static_cast<Eigen::Index>(lambdas.size());
    g.G.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        g.G(i, i) = cplx{T, 0.0};
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const auto e = exp_integral(lambdas[static_cast<std::size_t>(j)] -
                                            lambdas[static_cast<std::size_t>(i)],
                                        T);
            g.G(i, j) = e;
            g.G(j, i) = std::conj(e);
        }
    }
    if (n > 0) {
        const Eigen::VectorXd ev = hermitian_eigenvalues(g.G);
        g.min_eig = ev[0];
        g.max_eig = ev[n - 1];
        g.cond_proxy = g.min_eig > 0.0 ? g.max_eig / g.min_eig
                                       : std::numeric_limits<double>::infinity();
    }
    return g;
}

Eigen::MatrixXcd weighted_gramian(const MediumParams& params, const ModeList& modes, double T) {
    Eigen::MatrixXcd W = scaled_gram(modes, T);
    const ThetaWeight w = make_theta_weight(params, modes, 0.25);
    for (Eigen::Index i = 0; i < W.rows(); ++i)
        for (Eigen::Index j = 0; j < W.cols(); ++j)
            W(i, j) /= std::sqrt(w.weights[static_cast<std::size_t>(i)] *
                                 w.weights[static_cast<std::size_t>(j)]);
    return W;
}

ObservabilityBounds observability_bounds(const MediumParams& params, int N, double T,
                                         double int_tol) {
    if (!(T > 0.0)) throw Error(ErrorCode::InvalidArgument, "T must be positive");
    const ModeList modes = enumerate_modes(params, N, int_tol);
    const Eigen::MatrixXcd W = weighted_gramian(params, modes, T);
    const Eigen::VectorXd ev = hermitian_eigenvalues(W);
    ObservabilityBounds b;
    b.lower = ev[0];
    b.upper = ev[ev.size() - 1];
    b.lower_jacobi = N <= 128 ? hermitian_eigenvalues_jacobi(W)[0]
                              : std::numeric_limits<double>::quiet_NaN();
    return b;
}

double observability_constant(const MediumParams& params, int N, double T, double int_tol) {
    return observability_bounds(params, N, T, int_tol).lower;
}

double observation_energy(const CoeffState& z0, double T) {
    const Eigen::MatrixXcd G = scaled_gram(z0.modes, T);
    return std::real(z0.coeffs.dot(G * z0.coeffs));
}

CoeffState invisible_mode(const MediumParams& params, std::pair<int, int> pair, int N,
                          double int_tol) {
    const auto [p, q] = pair;
    const double s = -params.gamma * params.ell * params.ell / (pi * pi);
    const double rel = static_cast<double>(p) * p + static_cast<double>(q) * q - s;
    if (p < 1 || q <= p || std::abs(rel) > int_tol * std::max(1.0, s))
        throw Error(ErrorCode::NotResonantPair,
                    "(" + std::to_string(p) + ", " + std::to_string(q) +
                        ") is not a resonant pair for this gamma");
    if (N == 0) N = q;
    if (N < q) throw Error(ErrorCode::InvalidArgument, "N must cover the pair");
    CoeffState state = zero_state(enumerate_modes(params, N, int_tol));
    const double norm = std::hypot(static_cast<double>(p), static_cast<double>(q));
    state.coeffs[state.position_of(p)] = q / norm;
    state.coeffs[state.position_of(q)] = -p / norm;
    state.label = "invisible(" + std::to_string(p) + "," + std::to_string(q) + ")";
    return state;
}

const char* to_string(ScanStatus status) noexcept {
    switch (status) {
        case ScanStatus::controllable: return "controllable";
        case ScanStatus::ill_conditioned: return "ill_conditioned";
        case ScanStatus::resonant: return "resonant";
    }
    return "unknown";
}

double nearest_critical_gamma(double gamma, double ell) {
    const double s = -gamma * ell * ell / (pi * pi);
    const int top = static_cast<int>(std::ceil(std::sqrt(std::max(s, 0.0)))) + 2;
    double best = 5.0;
    for (int q = 2; q <= top; ++q)
        for (int p = 1; p < q; ++p) {
            const double m = static_cast<double>(p) * p + static_cast<double>(q) * q;
            if (std::abs(m - s) < std::abs(best - s)) best = m;
        }
    return -pi * pi * best / (ell * ell);
}

unsigned worker_count_from_env() {
    if (const char* env = std::getenv("BIHARM_NUM_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<ScanRow> resonance_scan(std::span<const double> gamma_grid, double ell, int N,
                                    double T, double int_tol, unsigned workers) {
    if (gamma_grid.empty()) throw Error(ErrorCode::InvalidArgument, "gamma grid is empty");
    for (double g : gamma_grid)
        if (!(g < 0.0)) throw Error(ErrorCode::NonNegativeGamma, "scan grid must be negative");

    std::vector<ScanRow> rows(gamma_grid.size());
    std::vector<std::exception_ptr> errors(gamma_grid.size());
    auto run_row = [&](std::size_t i) {
        try {
            const MediumParams params = make_params(gamma_grid[i], ell);
            ScanRow& row = rows[i];
            row.gamma = params.gamma;
            row.constant = observability_constant(params, N, T, int_tol);
            row.resonant = resonance_check(params, int_tol).resonant;
            const bool exact = resonance_check(params, kExactTol).resonant;
            row.status = exact ? ScanStatus::resonant
                               : (row.resonant ? ScanStatus::ill_conditioned
                                               : ScanStatus::controllable);
            row.nearest_critical = nearest_critical_gamma(params.gamma, ell);
            row.distance = std::abs(params.gamma - row.nearest_critical);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    if (workers == 0) workers = worker_count_from_env();
    workers = std::min<unsigned>(workers, static_cast<unsigned>(gamma_grid.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < rows.size(); ++i) run_row(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < rows.size(); i = next++) run_row(i);
            });
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

}  // namespace biharm
