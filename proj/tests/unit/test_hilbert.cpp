#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "biharm/errors.hpp"
#include "biharm/hilbert.hpp"
#include "oracles.hpp"

using namespace biharm;
using std::numbers::pi;

namespace {

std::vector<cplx> sample(double ell, std::size_t points, auto&& fn) {
    std::vector<cplx> out;
    for (double x : uniform_grid(0.0, ell, points)) out.push_back(fn(x));
    return out;
}

}  // namespace

TEST_CASE("project recovers a single eigenfunction") {
    const auto p = make_params(-3.0, pi);
    const auto samples = sample(pi, 4097, [](double x) {
        return cplx{std::sqrt(2.0 / pi) * std::sin(3.0 * x), 0.0};
    });
    const auto c = project(samples, p, 8);
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        const double expected = c.modes[static_cast<std::size_t>(i)].n == 3 ? 1.0 : 0.0;
        CHECK(std::abs(c.coeffs[i] - expected) <= 1e-8);
    }
}

TEST_CASE("project matches the hand-integrated parabola coefficients") {
    const auto p = make_params(-3.0, pi);
    const auto samples = sample(pi, 4097, [](double x) { return cplx{x * (pi - x), 0.0}; });
    const auto c = project(samples, p, 4);
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        const int n = c.modes[static_cast<std::size_t>(i)].n;
        CHECK(std::abs(c.coeffs[i] - oracle::parabola_sine_coefficient(n)) <= 1e-10);
    }
    const auto zero = project(std::vector<cplx>(513, cplx{}), p, 4);
    CHECK(zero.coeffs.norm() == 0.0);
}

TEST_CASE("project refuses under-resolved grids and odd grid sizes still integrate") {
    const auto p = make_params(-3.0, pi);
    CHECK_THROWS_AS(project(std::vector<cplx>(17, cplx{}), p, 8), Error);
    try {
        project(std::vector<cplx>(17, cplx{}), p, 8);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::GridTooCoarse);
    }
    // even point count exercises the 3/8 closing panel
    const auto samples = sample(pi, 4096, [](double x) { return cplx{x * (pi - x), 0.0}; });
    const auto c = project(samples, p, 3);
    CHECK(std::abs(c.coeffs[c.position_of(1)] - oracle::parabola_sine_coefficient(1)) < 1e-10);
}

TEST_CASE("theta norms") {
    const auto p = make_params(-3.0, pi);
    const auto modes = enumerate_modes(p, 4);
    for (const auto& m : modes) {
        const auto u = unit_state(modes, m.n);
        CHECK(norm_theta(u, make_theta_weight(p, modes, 0.0)) == doctest::Approx(1.0));
        CHECK(norm_theta(u, make_theta_weight(p, modes, 0.25)) ==
              doctest::Approx(std::pow(std::abs(m.lambda), 0.25)));
    }
    CoeffState s = zero_state(modes);
    s.coeffs[s.position_of(1)] = 1.0;
    s.coeffs[s.position_of(2)] = 1.0;
    CHECK(norm_theta(s, make_theta_weight(p, modes, 0.25)) ==
          doctest::Approx(std::sqrt(std::sqrt(2.0) + 2.0)));

    const auto short_w = make_theta_weight(p, enumerate_modes(p, 3), 0.0);
    CHECK_THROWS_AS(norm_theta(s, short_w), Error);
}

TEST_CASE("zero eigenvalue gets unit weight and is recorded") {
    const auto p = make_params(-1.0, pi);
    const auto modes = enumerate_modes(p, 3);
    const auto w = make_theta_weight(p, modes, -0.25);
    REQUIRE(w.substituted.size() == 1);
    CHECK(w.substituted[0] == 1);
    for (double v : w.weights) CHECK(v > 0.0);
}

TEST_CASE("synthesize evaluates the sine series") {
    const auto p = make_params(-3.0, pi);
    const auto modes = enumerate_modes(p, 5);
    const auto x = uniform_grid(0.0, pi, 101);
    const auto v = synthesize(unit_state(modes, 4), p, x);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(std::abs(v[i] - std::sqrt(2.0 / pi) * std::sin(4.0 * x[i])) < 1e-14);
    CHECK(v.front() == cplx{});
    CHECK(v.back() == cplx{});
    for (const auto& z : synthesize(zero_state(modes), p, x)) CHECK(z == cplx{});
}

TEST_CASE("projection and synthesis round trips") {
    const auto p = make_params(-3.0, pi);
    SUBCASE("parabola at N = 64") {
        const auto x = uniform_grid(0.0, pi, 8193);
        std::vector<cplx> f;
        for (double xi : x) f.emplace_back(xi * (pi - xi), 0.0);
        const auto c = project(f, p, 64);
        const auto back = synthesize(c, p, x);
        double err = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) err = std::max(err, std::abs(back[i] - f[i]));
        // bounded by the truncation tail sum_{n > 64} |c_n| sqrt(2/pi)
        double tail = 0.0;
        for (int n = 65; n < 200000; ++n) tail += oracle::parabola_sine_coefficient(n) * std::sqrt(2.0 / pi);
        CHECK(err <= tail);
        CHECK(err >= 0.5 * tail);
        // Parseval at theta = 0: ||f||^2 = pi^5 / 30
        const double l2 = std::sqrt(std::pow(pi, 5) / 30.0);
        CHECK(std::abs(norm_theta(c, make_theta_weight(p, c.modes, 0.0)) - l2) / l2 <= 1e-6);
    }
    SUBCASE("random element of span{Phi_1..Phi_N}") {
        std::mt19937_64 rng(3);
        std::normal_distribution<double> g;
        const int N = 12;
        const auto modes = enumerate_modes(p, N);
        Eigen::VectorXcd c(N);
        for (int i = 0; i < N; ++i) c[i] = cplx{g(rng), g(rng)};
        const CoeffState s(modes, c);
        const auto x = uniform_grid(0.0, pi, 2049);
        const auto back = project(synthesize(s, p, x), p, N);
        CHECK((back.coeffs - s.coeffs).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("weighted Cauchy-Schwarz between dual theta norms") {
    const auto p = make_params(-6.5, 1.9);
    const auto modes = enumerate_modes(p, 16);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::VectorXcd a(16), c(16);
        for (int i = 0; i < 16; ++i) {
            a[i] = cplx{g(rng), g(rng)};
            c[i] = cplx{g(rng), g(rng)};
        }
        const CoeffState A(modes, a), C(modes, c);
        for (double theta : {0.25, 0.5, 1.0}) {
            const double bound = norm_theta(A, make_theta_weight(p, modes, -theta)) *
                                 norm_theta(C, make_theta_weight(p, modes, theta));
            CHECK(std::abs(inner(A, C)) <= bound * (1 + 1e-12));
        }
    }
}
