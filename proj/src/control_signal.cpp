#include "biharm/control_signal.hpp"

#include <cmath>

namespace biharm {

std::complex<double> exp_integral(double omega, double T) noexcept {
    const double x = omega * T;
    if (std::abs(x) < 0.5) {
        // T * sum_k (i x)^k / (k+1)!
        const std::complex<double> z{0.0, x};
        std::complex<double> term{1.0, 0.0};
        std::complex<double> sum{1.0, 0.0};
        for (int k = 1; k < 24; ++k) {
            term *= z / static_cast<double>(k + 1);
            sum += term;
        }
        return T * sum;
    }
    const std::complex<double> e{std::cos(x) - 1.0, std::sin(x)};
    return e / std::complex<double>{0.0, omega};
}

std::complex<double> ControlSignal::operator()(double t) const {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t m = 0; m < lambdas.size(); ++m)
        acc += betas[static_cast<Eigen::Index>(m)] * std::polar(1.0, lambdas[m] * t);
    return acc;
}

std::vector<std::complex<double>> ControlSignal::sample(std::span<const double> times) const {
    std::vector<std::complex<double>> out;
    out.reserve(times.size());
    for (double t : times) out.push_back((*this)(t));
    return out;
}

double ControlSignal::l2_norm_squared() const {
    double acc = 0.0;
    const auto M = lambdas.size();
    for (std::size_t n = 0; n < M; ++n) {
        const auto bn = betas[static_cast<Eigen::Index>(n)];
        acc += std::norm(bn) * T;
        for (std::size_t m = n + 1; m < M; ++m) {
            const auto bm = betas[static_cast<Eigen::Index>(m)];
            acc += 2.0 * std::real(std::conj(bn) * bm * exp_integral(lambdas[m] - lambdas[n], T));
        }
    }
    return std::max(acc, 0.0);
}

double ControlSignal::l2_norm() const { return std::sqrt(l2_norm_squared()); }

std::complex<double> ControlSignal::moment(double omega) const {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t m = 0; m < lambdas.size(); ++m)
        acc += betas[static_cast<Eigen::Index>(m)] * exp_integral(lambdas[m] - omega, T);
    return acc;
}

ControlSignal zero_control(double T) {
    ControlSignal f;
    f.T = T;
    f.betas = Eigen::VectorXcd(0);
    return f;
}

}  // namespace biharm
