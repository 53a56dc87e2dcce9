#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "biharm/cli/commands.hpp"
#include "biharm/control.hpp"
#include "biharm/errors.hpp"
#include "biharm/linalg.hpp"
#include "biharm/quadrature.hpp"
#include "oracles.hpp"

using namespace biharm;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void run(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < budget_s;
    const bool ok = out.pass && in_time;
    if (!ok) ++failures;
    std::printf("%s %2d %-28s %s; %.3f s (budget %.1f s%s)\n", ok ? "PASS" : "FAIL", id, name,
                out.detail.c_str(), secs, budget_s, in_time ? "" : ", exceeded");
    std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

CoeffState parabola_state(const MediumParams& p, int N) {
    std::vector<cplx> f;
    for (double x : uniform_grid(0.0, p.ell, 4097)) f.emplace_back(x * (p.ell - x), 0.0);
    return project(f, p, N);
}

CoeffState random_state(const ModeList& modes, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::VectorXcd c(static_cast<Eigen::Index>(modes.size()));
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = cplx{g(rng), g(rng)};
    return CoeffState(modes, c);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome spectral_closed_form() {
    double worst = 0.0;
    bool multiplicity_ok = true;
    for (double gamma : {-3.0, -5.0, -25.0, -1.0}) {
        const auto p = make_params(gamma, pi);
        const int N = 50;
        std::vector<double> closed;
        for (const auto& m : enumerate_modes(p, N)) closed.push_back(m.lambda);
        const double top = eigenvalue(p, N) + 0.5 * (eigenvalue(p, N + 1) - eigenvalue(p, N));
        const auto roots = oracle::characteristic_roots(p, top);
        if (roots.size() != closed.size()) return {false, "root count mismatch"};
        for (std::size_t i = 0; i < roots.size(); ++i)
            worst = std::max(worst, std::abs(roots[i] - closed[i]) /
                                        std::max(std::abs(closed[i]), 1.0));

        int doubles = 0;
        for (std::size_t i = 1; i < roots.size(); ++i)
            if (std::abs(roots[i] - roots[i - 1]) <= 1e-10 * std::max(std::abs(roots[i]), 1.0))
                ++doubles;
        const auto info = resonance_check(p);
        std::vector<std::pair<int, int>> expected;
        if (gamma == -5.0) expected = {{1, 2}};
        if (gamma == -25.0) expected = {{3, 4}};
        if (info.pairs != expected || doubles != static_cast<int>(expected.size()))
            multiplicity_ok = false;
    }
    return {worst <= 1e-10 && multiplicity_ok,
            fmt("max rel root error %.2e", worst) +
                (multiplicity_ok ? ", doubles at -5 (1,2) and -25 (3,4)" : ", multiplicity wrong")};
}

Outcome lower_bound_and_gap() {
    std::mt19937_64 rng(2002);
    std::uniform_real_distribution<double> u(-50.0, 0.0);
    const int N = 10000;
    double min_margin = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (int trial = 0; trial < 100; ++trial) {
        double gamma = u(rng);
        while (gamma == 0.0) gamma = u(rng);
        const auto p = make_params(gamma, pi);
        const double floor = spectral_floor(p);
        double prev = eigenvalue(p, 1);
        min_margin = std::min(min_margin, prev - floor);
        for (int n = 2; n <= N; ++n) {
            const double lam = eigenvalue(p, n);
            min_margin = std::min(min_margin, lam - floor);
            if (n - 1 >= p.n0 && !(lam - prev > 0.0)) ok = false;
            prev = lam;
        }
        if (!(spectral_gap_floor(p, N) > 0.0)) ok = false;
    }
    ok = ok && min_margin >= 0.0;
    return {ok, fmt("min lambda - floor %.3e, gaps positive beyond n0", min_margin)};
}

Outcome trace_asymptotics() {
    const auto p = make_params(-3.0, pi);
    const double limit = std::sqrt(2.0 / p.ell);
    auto err = [&](int n) { return std::abs(trace_ratio(p, n) - limit); };
    const double e1000 = err(1000);
    const double order = std::log2(err(500) / e1000);
    const double scaled = e1000 * 1000.0 * 1000.0;
    const double scaled2 = err(2000) * 2000.0 * 2000.0;
    const bool ok = e1000 <= 1e-3 && std::abs(order - 2.0) < 0.05 &&
                    std::abs(scaled2 / scaled - 1.0) < 1e-3;
    return {ok, fmt("err(1000) %.2e", e1000) + fmt(", observed order %.3f", order)};
}

Outcome energy_conservation() {
    std::mt19937_64 rng(4004);
    const auto p = make_params(-3.0, pi);
    const auto modes = enumerate_modes(p, 32);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = random_state(modes, rng);
        for (double theta : {0.0, 0.25}) {
            const auto w = make_theta_weight(p, modes, theta);
            const double e0 = energy(s, w, 0.0);
            for (double t : {0.37, 5.0, 50.0})
                worst = std::max(worst, std::abs(energy(s, w, t) - e0) / e0);
        }
    }
    return {worst <= 1e-12, fmt("max relative drift %.2e", worst)};
}

Outcome observability_dichotomy() {
    const int N = 8;
    const auto res = make_params(-5.0, pi);
    const auto good = make_params(-3.0, pi);
    const auto b5 = observability_bounds(res, N, 1.0);
    const auto b3 = observability_bounds(good, N, 1.0);
    const auto v = invisible_mode(res, {1, 2}, N);
    const auto tr = boundary_trace(v, uniform_grid(0.0, 1.0, 1000));
    double sup = 0.0;
    for (const auto& z : tr.values) sup = std::max(sup, std::abs(z));
    const bool agree = std::abs(b5.lower - b5.lower_jacobi) <= 1e-12 &&
                       std::abs(b3.lower - b3.lower_jacobi) <= 1e-10 * b3.lower;
    const bool ok = b5.lower <= 1e-10 && b5.lower_jacobi <= 1e-10 && b3.lower >= 1e-6 &&
                    b3.lower_jacobi >= 1e-6 && sup <= 1e-12 && agree;
    return {ok, fmt("c(-5) %.2e", b5.lower) + fmt(", c(-3) %.3e", b3.lower) +
                    fmt(", invisible trace sup %.2e", sup) +
                    (agree ? ", Jacobi agrees" : ", Jacobi disagrees")};
}

Outcome quadratic_form() {
    std::mt19937_64 rng(6006);
    const auto p = make_params(-3.0, pi);
    const int N = 8;
    const double T = 1.0;
    const auto modes = enumerate_modes(p, N);
    double spread = 0.0;
    for (const auto& m : modes) spread = std::max(spread, std::abs(m.lambda));
    // 16-point panels, each panel spanning at most ~1 period of the fastest beat.
    const int panels = static_cast<int>(std::ceil(2.0 * spread * T / (2.0 * pi))) + 8;
    const auto rule = composite_gauss(0.0, T, panels, 16);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto z0 = random_state(modes, rng);
        const auto tr = boundary_trace(z0, rule.nodes);
        double q = 0.0;
        for (std::size_t i = 0; i < tr.values.size(); ++i) q += rule.weights[i] * std::norm(tr.values[i]);
        const double form = observation_energy(z0, T);
        worst = std::max(worst, std::abs(q - form) / form);
    }
    return {worst <= 1e-8, fmt("max relative mismatch %.2e", worst)};
}

Outcome null_control_positive() {
    const auto p = make_params(-3.0, pi);
    const int N = 16;
    const auto y0 = parabola_state(p, N);
    NullControlOptions opts;
    opts.oracle_phase_step = 0.02;
    std::string detail;
    bool ok = true;
    for (double T : {1.0, 0.1}) {
        const auto [f, r] = null_control(p, y0, T, N, opts);
        double worst = 0.0;
        for (double res : r.residual_modal) worst = std::max(worst, res);
        const double rel = worst / r.initial_norm;
        ok = ok && rel <= 1e-8 && r.verified_by_oracle && r.oracle_discrepancy <= 1e-6;
        detail += fmt("T=%g: ", T) + fmt("residual %.2e", rel) +
                  fmt(", rk4 gap %.2e", r.oracle_discrepancy) + fmt(", |f| %.3g", r.control_energy) +
                  (T == 1.0 ? "; " : "");
    }
    return {ok, detail};
}

Outcome duality() {
    ensure_sign_convention();
    double worst = 0.0;
    for (auto [gamma, ell] : {std::pair{-3.0, pi}, std::pair{-7.3, 2.8}, std::pair{-5.0, pi}}) {
        const auto c = duality_check(make_params(gamma, ell), 8, 8, 8008, 1.0);
        worst = std::max(worst, c.max_rel_defect);
    }
    return {worst <= 1e-8, fmt("max relative defect %.2e, sign convention confirmed", worst)};
}

Outcome negative_result() {
    const auto p = make_params(-5.0, pi);
    const int N = 8;
    const auto v = invisible_mode(p, {1, 2}, N);
    NullControlOptions opts;
    opts.verify_with_oracle = false;
    const auto r = diagnose_resonant(p, v, 1.0, N, opts);
    const double norm = norm_theta(v, make_theta_weight(p, v.modes, -0.25));
    const double gap = std::abs(r.irreducible_residual - norm);
    const double final_gap = std::abs(r.residual_theta - norm);

    bool singular = false;
    std::vector<double> lambdas;
    for (const auto& m : v.modes) lambdas.push_back(m.lambda);
    const auto gram = gram_matrix(lambdas, 1.0);
    // the moments of the invisible mode cannot be met by any f
    try {
        solve_moment(gram, moment_rhs(v), 0.0);
    } catch (const Error& e) {
        singular = e.code() == ErrorCode::SingularGram;
    }
    return {gap <= 1e-10 && final_gap <= 1e-10 && singular,
            fmt("|irreducible - |y0|| %.2e", gap) +
                (singular ? ", SingularGram raised" : ", SingularGram missing")};
}

Outcome scan_reproduction() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::path(BIHARM_TEST_TMP) / "acceptance";
    fs::create_directories(dir);
    cli::Scenario s;
    s.ell = pi;
    s.n_modes = 8;
    s.T = 1.0;
    s.gamma_grid = uniform_grid(-6.0, -4.0, 201);
    const auto a = cli::cmd_scan(s, (dir / "scan_a").string());
    const auto b = cli::cmd_scan(s, (dir / "scan_b").string());
    const bool same = slurp(a.files.at(0)) == slurp(b.files.at(0));

    const auto rows = resonance_scan(s.gamma_grid, pi, 8, 1.0);
    const double spacing = 2.0 / 200.0;
    int dips = 0;
    double dip_gamma = 0.0, smallest_other = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
        if (r.constant <= 1e-8) {
            ++dips;
            dip_gamma = r.gamma;
        } else {
            smallest_other = std::min(smallest_other, r.constant);
        }
    }
    const bool ok = same && dips == 1 && std::abs(dip_gamma + 5.0) <= spacing;
    return {ok, fmt("%.0f dip", dips) + fmt(" at gamma %.4f", dip_gamma) +
                    fmt(", next smallest %.2e", smallest_other) +
                    (same ? ", CSV byte-identical" : ", CSV differs")};
}

}  // namespace

int main() {
    run(1, "spectral closed form", 1.0, spectral_closed_form);
    run(2, "lower bound and gap", 1.0, lower_bound_and_gap);
    run(3, "trace asymptotics", 0.1, trace_asymptotics);
    run(4, "energy conservation", 1.0, energy_conservation);
    run(5, "observability dichotomy", 1.0, observability_dichotomy);
    run(6, "quadratic-form consistency", 5.0, quadratic_form);
    run(7, "null control", 10.0, null_control_positive);
    run(8, "duality sign check", 1.0, duality);
    run(9, "negative result", 1.0, negative_result);
    run(10, "scan reproduction", 30.0, scan_reproduction);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
