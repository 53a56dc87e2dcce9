#include "biharm/hilbert.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "biharm/errors.hpp"

namespace biharm {

CoeffState::CoeffState(ModeList modes_, Eigen::VectorXcd coeffs_, std::string label_)
    : modes(std::move(modes_)), coeffs(std::move(coeffs_)), label(std::move(label_)) {
    if (static_cast<Eigen::Index>(modes.size()) != coeffs.size())
        throw Error(ErrorCode::DimensionMismatch, "coefficient count differs from mode count");
    if (!coeffs.allFinite())
        throw Error(ErrorCode::InvalidArgument, "coefficients must be finite");
}

Eigen::Index CoeffState::position_of(int n) const noexcept {
    for (std::size_t i = 0; i < modes.size(); ++i)
        if (modes[i].n == n) return static_cast<Eigen::Index>(i);
    return -1;
}

CoeffState zero_state(ModeList modes) {
    const auto size = static_cast<Eigen::Index>(modes.size());
    return CoeffState(std::move(modes), Eigen::VectorXcd::Zero(size));
}

CoeffState unit_state(ModeList modes, int n) {
    CoeffState s = zero_state(std::move(modes));
    const auto pos = s.position_of(n);
    if (pos < 0) throw Error(ErrorCode::InvalidArgument, "mode " + std::to_string(n) + " not in basis");
    s.coeffs[pos] = 1.0;
    return s;
}

ThetaWeight make_theta_weight(const MediumParams& params, const ModeList& modes, double theta) {
    ThetaWeight w;
    w.theta = theta;
    w.weights.reserve(modes.size());
    for (const auto& m : modes) {
        if (is_zero_eigenvalue(params, m.lambda)) {
            w.weights.push_back(1.0);
            w.substituted.push_back(m.n);
        } else {
            w.weights.push_back(std::pow(std::abs(m.lambda), 2.0 * theta));
        }
    }
    return w;
}

double norm_theta(const CoeffState& state, const ThetaWeight& w) {
    if (static_cast<Eigen::Index>(w.weights.size()) != state.size())
        throw Error(ErrorCode::DimensionMismatch, "weight vector length differs from state length");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < state.size(); ++i)
        acc += w.weights[static_cast<std::size_t>(i)] * std::norm(state.coeffs[i]);
    return std::sqrt(acc);
}

cplx inner(const CoeffState& a, const CoeffState& b) {
    if (a.size() != b.size())
        throw Error(ErrorCode::DimensionMismatch, "states have different lengths");
    for (std::size_t i = 0; i < a.modes.size(); ++i)
        if (a.modes[i].n != b.modes[i].n)
            throw Error(ErrorCode::DimensionMismatch, "states use different mode orders");
    return b.coeffs.dot(a.coeffs);  // Eigen's dot conjugates its left operand
}

std::vector<double> simpson_weights(std::size_t points, double length) {
    if (points < 3) throw Error(ErrorCode::GridTooCoarse, "Simpson rule needs >= 3 points");
    const std::size_t intervals = points - 1;
    const double h = length / static_cast<double>(intervals);
    std::vector<double> w(points, 0.0);
    // Simpson 1/3 over an even prefix, 3/8 over the last three intervals if odd.
    const std::size_t simpson_end = (intervals % 2 == 0) ? intervals : intervals - 3;
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if (simpson_end != intervals) {
        const std::size_t i = simpson_end;
        w[i] += 3.0 * h / 8.0;
        w[i + 1] += 9.0 * h / 8.0;
        w[i + 2] += 9.0 * h / 8.0;
        w[i + 3] += 3.0 * h / 8.0;
    }
    return w;
}

std::vector<double> uniform_grid(double a, double b, std::size_t points) {
    if (points < 2) throw Error(ErrorCode::InvalidArgument, "grid needs >= 2 points");
    std::vector<double> x(points);
    const double span = b - a;
    const double last = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) x[i] = a + span * (static_cast<double>(i) / last);
    x.back() = b;
    return x;
}

CoeffState project(std::span<const cplx> samples, const MediumParams& params, int N,
                   double int_tol) {
    ModeList modes = enumerate_modes(params, N, int_tol);
    const std::size_t M = samples.size();
    if (M < static_cast<std::size_t>(2 * N + 2))
        throw Error(ErrorCode::GridTooCoarse,
                    "need at least 2N+2 samples to resolve mode N = " + std::to_string(N));
    for (const auto& v : samples)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw Error(ErrorCode::InvalidArgument, "samples must be finite");
    const auto w = simpson_weights(M, params.ell);
    const auto x = uniform_grid(0.0, params.ell, M);
    const double amp = std::sqrt(2.0 / params.ell);

    Eigen::VectorXcd c(static_cast<Eigen::Index>(modes.size()));
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const double k = modes[j].k;
        cplx acc{0.0, 0.0};
        // interior points only; every basis function vanishes at both ends
        for (std::size_t i = 1; i + 1 < M; ++i) acc += w[i] * samples[i] * std::sin(k * x[i]);
        c[static_cast<Eigen::Index>(j)] = amp * acc;
    }
    return CoeffState(std::move(modes), std::move(c));
}

std::vector<cplx> synthesize(const CoeffState& state, const MediumParams& params,
                             std::span<const double> xgrid) {
    const double amp = std::sqrt(2.0 / params.ell);
    std::vector<cplx> out(xgrid.size(), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < xgrid.size(); ++i) {
        const double x = xgrid[i];
        if (x <= 0.0 || x >= params.ell) continue;
        cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < state.modes.size(); ++j)
            acc += state.coeffs[static_cast<Eigen::Index>(j)] * std::sin(state.modes[j].k * x);
        out[i] = amp * acc;
    }
    return out;
}

}  // namespace biharm
