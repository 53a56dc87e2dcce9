#include "biharm/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "biharm/errors.hpp"

namespace biharm {

namespace {

constexpr double pi = std::numbers::pi;

double tol_scale(double s) { return std::max(1.0, std::abs(s)); }

void require_index(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "mode index must be >= 1, got " + std::to_string(n));
}

}  // namespace

MediumParams make_params(double gamma, double ell) {
    if (!std::isfinite(ell) || ell <= 0.0)
        throw Error(ErrorCode::NonPositiveLength, "ell must be positive and finite");
    if (!std::isfinite(gamma) || gamma >= 0.0)
        throw Error(ErrorCode::NonNegativeGamma, "gamma must be strictly negative");
    MediumParams p;
    p.gamma = gamma;
    p.ell = ell;
    p.n0 = static_cast<int>(std::floor(ell * std::sqrt(-gamma) / pi)) + 1;
    return p;
}

const char* to_string(ModeKind kind) noexcept {
    switch (kind) {
        case ModeKind::negative: return "negative";
        case ModeKind::zero: return "zero";
        case ModeKind::positive: return "positive";
    }
    return "unknown";
}

double wavenumber(const MediumParams& params, int n) {
    require_index(n);
    return n * pi / params.ell;
}

double eigenvalue(const MediumParams& params, int n) {
    const double k2 = std::pow(wavenumber(params, n), 2);
    return k2 * (k2 + params.gamma);
}

double boundary_slope(const MediumParams& params, int n) {
    return std::sqrt(2.0 / params.ell) * wavenumber(params, n);
}

double spectral_floor(const MediumParams& params) noexcept {
    return -params.gamma * params.gamma / 4.0;
}

bool is_zero_eigenvalue(const MediumParams& params, double lambda) noexcept {
    return std::abs(lambda) <= 1e-9 * std::max(1.0, params.gamma * params.gamma / 4.0);
}

ResonanceInfo resonance_check(const MediumParams& params, double int_tol) {
    if (int_tol < 0.0) throw Error(ErrorCode::InvalidArgument, "int_tol must be >= 0");
    ResonanceInfo info;
    info.s_value = -params.gamma * params.ell * params.ell / (pi * pi);
    const double s = info.s_value;
    const double slack = int_tol * tol_scale(s);
    const int top = static_cast<int>(std::ceil(std::sqrt(s)));
    for (int p = 1; p <= top; ++p) {
        const double p2 = static_cast<double>(p) * p;
        if (!info.zero_mode && std::abs(p2 - s) <= slack) info.zero_mode = p;
        for (int q = p + 1; q <= top; ++q) {
            const double q2 = static_cast<double>(q) * q;
            if (std::abs(p2 + q2 - s) <= slack) info.pairs.emplace_back(p, q);
        }
    }
    info.resonant = !info.pairs.empty();
    return info;
}

ModeList enumerate_modes(const MediumParams& params, int N, double int_tol) {
    if (N < 1) throw Error(ErrorCode::InvalidArgument, "N must be >= 1");
    ModeList modes;
    modes.reserve(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        Mode m;
        m.n = n;
        m.k = wavenumber(params, n);
        m.lambda = eigenvalue(params, n);
        m.trace0 = boundary_slope(params, n);
        if (is_zero_eigenvalue(params, m.lambda))
            m.kind = ModeKind::zero;
        else
            m.kind = m.lambda < 0.0 ? ModeKind::negative : ModeKind::positive;
        modes.push_back(m);
    }
    const ResonanceInfo info = resonance_check(params, int_tol);
    for (auto [p, q] : info.pairs) {
        if (q > N) continue;
        modes[static_cast<std::size_t>(p - 1)].partner = q;
        modes[static_cast<std::size_t>(q - 1)].partner = p;
    }
    std::stable_sort(modes.begin(), modes.end(),
                     [](const Mode& a, const Mode& b) { return a.lambda < b.lambda; });
    return modes;
}

CharacteristicFactors characteristic_factors(const MediumParams& params, double lambda) {
    const double g = params.gamma;
    const double disc = g * g + 4.0 * lambda;
    if (disc < 0.0 || std::isnan(lambda))
        throw Error(ErrorCode::LambdaBelowSpectralFloor,
                    "lambda below the spectral floor -gamma^2/4");
    const double root = std::sqrt(disc);
    CharacteristicFactors f;
    // eta for lambda > 0 and xi for lambda < 0 share one formula.
    f.primary = std::sin(params.ell * std::sqrt((root - g) / 2.0));
    if (lambda < 0.0) {
        const double xibar = std::sqrt(std::max(0.0, (-root - g) / 2.0));
        f.secondary = std::sin(params.ell * xibar);
    }
    return f;
}

double characteristic_residual(const MediumParams& params, double lambda) {
    const auto f = characteristic_factors(params, lambda);
    return f.primary * f.secondary;
}

double spectral_gap_floor(const MediumParams& params, int N) {
    if (N <= params.n0)
        throw Error(ErrorCode::InvalidArgument, "spectral_gap_floor needs N > n0");
    double floor = std::numeric_limits<double>::infinity();
    double prev = eigenvalue(params, params.n0);
    for (int n = params.n0 + 1; n <= N; ++n) {
        const double cur = eigenvalue(params, n);
        floor = std::min(floor, cur - prev);
        prev = cur;
    }
    return floor;
}

double trace_ratio(const MediumParams& params, int n) {
    const double lambda = eigenvalue(params, n);
    if (lambda <= 0.0 || is_zero_eigenvalue(params, lambda))
        throw Error(ErrorCode::NonPositiveEigenvalue,
                    "trace_ratio needs a positive eigenvalue (n >= n0)");
    return std::abs(boundary_slope(params, n)) / std::pow(lambda, 0.25);
}

double upper_density_estimate(const MediumParams& params, double r, int N) {
    if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "window length r must be positive");
    if (N < 1) throw Error(ErrorCode::InvalidArgument, "N must be >= 1");
    std::vector<double> lam(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) lam[static_cast<std::size_t>(n - 1)] = eigenvalue(params, n);
    std::sort(lam.begin(), lam.end());
    const double lo = lam.front();
    const double hi = lam.back();
    if (!(hi > lo + r))
        throw Error(ErrorCode::InsufficientModes, "need lambda_max > lambda_min + r");

    // The densest window can be taken with one endpoint on an eigenvalue.
    auto count_in = [&](double a) {
        const auto first = std::lower_bound(lam.begin(), lam.end(), a);
        const auto last = std::upper_bound(lam.begin(), lam.end(), a + r);
        return static_cast<double>(last - first);
    };
    double best = 0.0;
    for (double x : lam) {
        best = std::max(best, count_in(std::min(x, hi - r)));
        best = std::max(best, count_in(std::max(x - r, lo)));
    }
    return best / r;
}

}  // namespace biharm
