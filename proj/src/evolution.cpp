#include "biharm/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "biharm/errors.hpp"
#include "biharm/quadrature.hpp"

namespace biharm {

namespace {

double max_abs_lambda(const ModeList& modes) {
    double m = 0.0;
    for (const auto& mode : modes) m = std::max(m, std::abs(mode.lambda));
    return m;
}

void require_horizon(double T) {
    if (!(T > 0.0) || !std::isfinite(T))
        throw Error(ErrorCode::InvalidArgument, "time horizon T must be positive and finite");
}

// Duhamel with closed-form forcing integrals over (0, T).
CoeffState duhamel(const CoeffState& y0, const ControlSignal& f, double T) {
    CoeffState out = y0;
    for (std::size_t j = 0; j < y0.modes.size(); ++j) {
        const auto& m = y0.modes[j];
        cplx forcing{0.0, 0.0};
        for (std::size_t k = 0; k < f.lambdas.size(); ++k)
            forcing += f.betas[static_cast<Eigen::Index>(k)] * exp_integral(f.lambdas[k] - m.lambda, T);
        const auto i = static_cast<Eigen::Index>(j);
        out.coeffs[i] = std::polar(1.0, m.lambda * T) *
                        (y0.coeffs[i] + kBoundaryForcingSign * m.trace0 * forcing);
    }
    return out;
}

Eigen::VectorXcd random_complex(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = cplx{g(rng), g(rng)};
    return v;
}

}  // namespace

CoeffState free_evolve(const CoeffState& state, double t) {
    CoeffState out = state;
    for (std::size_t j = 0; j < state.modes.size(); ++j)
        out.coeffs[static_cast<Eigen::Index>(j)] *= std::polar(1.0, state.modes[j].lambda * t);
    return out;
}

cplx boundary_trace_at(const CoeffState& state, double t) {
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < state.modes.size(); ++j) {
        const auto& m = state.modes[j];
        acc += state.coeffs[static_cast<Eigen::Index>(j)] * std::polar(m.trace0, m.lambda * t);
    }
    return acc;
}

TraceSeries boundary_trace(const CoeffState& state, std::span<const double> times) {
    TraceSeries series;
    series.times.assign(times.begin(), times.end());
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw Error(ErrorCode::InvalidArgument, "trace times must be strictly increasing");
    series.values.reserve(times.size());
    for (double t : times) series.values.push_back(boundary_trace_at(state, t));
    return series;
}

double energy(const CoeffState& state, const ThetaWeight& w, double t) {
    const double n = norm_theta(free_evolve(state, t), w);
    return n * n;
}

CoeffState controlled_evolve(const CoeffState& y0, const ControlSignal& f, double T) {
    require_horizon(T);
    ensure_sign_convention();
    return duhamel(y0, f, T);
}

CoeffState controlled_evolve_sampled(const CoeffState& y0,
                                     const std::function<cplx(double)>& f, double T,
                                     int panels, int order) {
    require_horizon(T);
    ensure_sign_convention();
    if (panels < 1 || order < 2)
        throw Error(ErrorCode::InvalidArgument, "need panels >= 1 and order >= 2");
    const double h = T / panels;
    if (max_abs_lambda(y0.modes) * h > std::numbers::pi)
        throw Error(ErrorCode::QuadratureUnderResolved,
                    "panel width too large for the fastest mode: increase panels");
    const PanelRule rule = composite_gauss(0.0, T, panels, order);
    std::vector<cplx> fv(rule.nodes.size());
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) fv[q] = f(rule.nodes[q]);

    CoeffState out = y0;
    for (std::size_t j = 0; j < y0.modes.size(); ++j) {
        const auto& m = y0.modes[j];
        cplx forcing{0.0, 0.0};
        for (std::size_t q = 0; q < rule.nodes.size(); ++q)
            forcing += rule.weights[q] * std::polar(1.0, -m.lambda * rule.nodes[q]) * fv[q];
        const auto i = static_cast<Eigen::Index>(j);
        out.coeffs[i] = std::polar(1.0, m.lambda * T) *
                        (y0.coeffs[i] + kBoundaryForcingSign * m.trace0 * forcing);
    }
    return out;
}

long rk4_steps_for(const CoeffState& y0, double T, double phase_step) {
    const double lam = std::max(max_abs_lambda(y0.modes), 1e-12);
    return std::max(1L, static_cast<long>(std::ceil(lam * T / phase_step)));
}

CoeffState rk4_oracle(const CoeffState& y0, const ControlSignal& f, double T, long steps) {
    require_horizon(T);
    if (steps < 1) throw Error(ErrorCode::StepTooLarge, "step count must be >= 1");
    const double h = T / static_cast<double>(steps);
    if (max_abs_lambda(y0.modes) * h > 0.1 + 1e-12)
        throw Error(ErrorCode::StepTooLarge,
                    "max|lambda| * dt must be <= 0.1; need at least " +
                        std::to_string(rk4_steps_for(y0, T)) + " steps");

    const auto nm = y0.modes.size();
    const auto nf = f.lambdas.size();
    std::vector<cplx> a(nm), b(nm), y(nm);
    for (std::size_t j = 0; j < nm; ++j) {
        a[j] = cplx{0.0, y0.modes[j].lambda};
        b[j] = kBoundaryForcingSign * y0.modes[j].trace0;
        y[j] = y0.coeffs[static_cast<Eigen::Index>(j)];
    }

    // f at t, t+h/2, t+h through phasors, resynchronised periodically.
    std::vector<cplx> phase(nf), half(nf);
    for (std::size_t m = 0; m < nf; ++m) half[m] = std::polar(1.0, 0.5 * f.lambdas[m] * h);
    auto resync = [&](double t) {
        for (std::size_t m = 0; m < nf; ++m) phase[m] = std::polar(1.0, f.lambdas[m] * t);
    };
    resync(0.0);

    for (long s = 0; s < steps; ++s) {
        if (s % 256 == 0) resync(h * static_cast<double>(s));
        cplx f0{0.0, 0.0}, f1{0.0, 0.0}, f2{0.0, 0.0};
        for (std::size_t m = 0; m < nf; ++m) {
            const cplx beta = f.betas[static_cast<Eigen::Index>(m)];
            const cplx p0 = phase[m];
            const cplx p1 = p0 * half[m];
            const cplx p2 = p1 * half[m];
            f0 += beta * p0;
            f1 += beta * p1;
            f2 += beta * p2;
            phase[m] = p2;
        }
        for (std::size_t j = 0; j < nm; ++j) {
            const cplx k1 = a[j] * y[j] + b[j] * f0;
            const cplx k2 = a[j] * (y[j] + 0.5 * h * k1) + b[j] * f1;
            const cplx k3 = a[j] * (y[j] + 0.5 * h * k2) + b[j] * f1;
            const cplx k4 = a[j] * (y[j] + h * k3) + b[j] * f2;
            y[j] += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    }

    CoeffState out = y0;
    for (std::size_t j = 0; j < nm; ++j) out.coeffs[static_cast<Eigen::Index>(j)] = y[j];
    return out;
}

DualityCheck duality_check(const MediumParams& params, int N, int trials, unsigned seed,
                           double T) {
    require_horizon(T);
    if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
    const ModeList modes = enumerate_modes(params, N);
    std::mt19937_64 rng(seed);
    const auto n = static_cast<Eigen::Index>(modes.size());
    const double lmin = modes.front().lambda;
    const double lmax = modes.back().lambda;
    std::uniform_real_distribution<double> freq(lmin, lmax);

    const double fastest = std::max({std::abs(lmin), std::abs(lmax), 1.0});
    // about one period of the fastest beat per 16-point panel
    const int panels = static_cast<int>(std::ceil(2.0 * fastest * T / std::numbers::pi)) + 4;
    const PanelRule rule = composite_gauss(0.0, T, panels, 16);

    const auto nodes = static_cast<Eigen::Index>(rule.nodes.size());
    Eigen::MatrixXcd phase(nodes, n);
    for (Eigen::Index q = 0; q < nodes; ++q)
        for (Eigen::Index k = 0; k < n; ++k) {
            const auto& m = modes[static_cast<std::size_t>(k)];
            phase(q, k) = std::polar(m.trace0, m.lambda * rule.nodes[static_cast<std::size_t>(q)]);
        }

    DualityCheck result;
    result.trials = trials;
    for (int trial = 0; trial < trials; ++trial) {
        const CoeffState y0(modes, random_complex(rng, n));
        const CoeffState z0(modes, random_complex(rng, n));
        ControlSignal f;
        f.T = T;
        f.betas = random_complex(rng, n);
        for (Eigen::Index k = 0; k < n; ++k) f.lambdas.push_back(freq(rng));

        const cplx lhs = inner(duhamel(y0, f, T), free_evolve(z0, T)) - inner(y0, z0);
        const Eigen::VectorXcd trace = phase * z0.coeffs;
        cplx rhs{0.0, 0.0};
        for (Eigen::Index q = 0; q < nodes; ++q) {
            const auto i = static_cast<std::size_t>(q);
            rhs += rule.weights[i] * f(rule.nodes[i]) * std::conj(trace[q]);
        }
        const double defect = std::abs(lhs - cplx{0.0, 1.0} * rhs);
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        result.max_abs_defect = std::max(result.max_abs_defect, defect);
        result.max_rel_defect = std::max(result.max_rel_defect, defect / scale);
        if (trial == 0) result.fitted_sigma = lhs / rhs;
    }
    return result;
}

void ensure_sign_convention() {
    static const DualityCheck check =
        duality_check(make_params(-3.0, std::numbers::pi), 8, 8, 20240601u);
    if (!(check.max_rel_defect <= 1e-8))
        throw Error(ErrorCode::UnresolvedSignConvention,
                    "duality identity fails (relative defect " +
                        std::to_string(check.max_rel_defect) + ")");
}

}  // namespace biharm
