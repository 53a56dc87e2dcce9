#include "biharm/control.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>

#include "biharm/errors.hpp"

namespace biharm {

namespace {

// Below this ratio of extreme eigenvalues G is treated as singular.
constexpr double kSingularRatio = 1e-12;

std::vector<double> lambdas_of(const ModeList& modes) {
    std::vector<double> out;
    out.reserve(modes.size());
    for (const auto& m : modes) out.push_back(m.lambda);
    return out;
}

double tail_energy_beyond(const CoeffState& y0, int N) {
    double acc = 0.0;
    for (std::size_t j = 0; j < y0.modes.size(); ++j)
        if (y0.modes[j].n > N) acc += std::norm(y0.coeffs[static_cast<Eigen::Index>(j)]);
    return acc;
}

void certify(const MediumParams& params, const CoeffState& y0N, const ControlSignal& f,
             double T, const NullControlOptions& options, ControlReport& report) {
    report.final_state = controlled_evolve(y0N, f, T);
    report.residual_modal.clear();
    for (Eigen::Index i = 0; i < report.final_state.size(); ++i)
        report.residual_modal.push_back(std::abs(report.final_state.coeffs[i]));
    report.residual_theta =
        norm_theta(report.final_state, make_theta_weight(params, y0N.modes, -0.25));
    report.control_energy = f.l2_norm();
    report.initial_norm = y0N.coeffs.norm();
    report.reg = options.reg;
    if (options.verify_with_oracle) {
        const long steps = rk4_steps_for(y0N, T, std::min(options.oracle_phase_step, 0.1));
        const CoeffState approx = rk4_oracle(y0N, f, T, steps);
        const double scale = std::max(report.initial_norm, 1e-300);
        report.oracle_discrepancy =
            (approx.coeffs - report.final_state.coeffs).cwiseAbs().maxCoeff() / scale;
        if (report.initial_norm == 0.0) report.oracle_discrepancy = 0.0;
        report.verified_by_oracle = report.oracle_discrepancy <= options.oracle_tol;
    }
}

}  // namespace

CoeffState restrict_to_modes(const CoeffState& y0, const ModeList& modes) {
    CoeffState out = zero_state(modes);
    out.label = y0.label;
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const auto pos = y0.position_of(modes[j].n);
        if (pos >= 0) out.coeffs[static_cast<Eigen::Index>(j)] = y0.coeffs[pos];
    }
    return out;
}

Eigen::VectorXcd moment_rhs(const CoeffState& y0) {
    ensure_sign_convention();
    Eigen::VectorXcd d(y0.size());
    for (std::size_t j = 0; j < y0.modes.size(); ++j) {
        const auto i = static_cast<Eigen::Index>(j);
        d[i] = -y0.coeffs[i] / (kBoundaryForcingSign * y0.modes[j].trace0);
    }
    return d;
}

Eigen::VectorXcd solve_moment(const GramData& gram, const Eigen::VectorXcd& d, double reg) {
    if (gram.G.rows() != d.size())
        throw Error(ErrorCode::DimensionMismatch, "Gram size differs from right-hand side");
    if (!(reg >= 0.0)) throw Error(ErrorCode::InvalidArgument, "reg must be >= 0");
    if (d.size() == 0) return d;
    if (reg == 0.0 && gram.min_eig <= kSingularRatio * gram.max_eig)
        throw Error(ErrorCode::SingularGram,
                    "Gram matrix is numerically singular (min/max eigenvalue " +
                        std::to_string(gram.min_eig / gram.max_eig) + ")");
    Eigen::MatrixXcd A = gram.G;
    A.diagonal().array() += reg;
    const Eigen::LDLT<Eigen::MatrixXcd> ldlt(A);
    Eigen::VectorXcd beta = ldlt.solve(d);
    beta += ldlt.solve(d - A * beta);  // one refinement step
    return beta;
}

std::pair<ControlSignal, ControlReport> null_control(const MediumParams& params,
                                                     const CoeffState& y0, double T, int N,
                                                     const NullControlOptions& options) {
    if (!(T > 0.0)) throw Error(ErrorCode::InvalidArgument, "T must be positive");
    if (resonance_check(params, options.int_tol).resonant)
        throw Error(ErrorCode::ResonantParameters,
                    "gamma lies in the critical set; use diagnose_resonant");
    const ModeList modes = enumerate_modes(params, N, options.int_tol);
    const CoeffState y0N = restrict_to_modes(y0, modes);

    ControlSignal f;
    f.T = T;
    f.lambdas = lambdas_of(modes);
    const GramData gram = gram_matrix(f.lambdas, T);
    f.betas = solve_moment(gram, moment_rhs(y0N), options.reg);

    ControlReport report;
    report.gram_cond = gram.cond_proxy;
    report.tail_energy = tail_energy_beyond(y0, N);
    certify(params, y0N, f, T, options, report);
    return {std::move(f), std::move(report)};
}

std::pair<ControlSignal, ControlReport> diagnose_resonant_full(
    const MediumParams& params, const CoeffState& y0, double T, int N,
    const NullControlOptions& options) {
    if (!(T > 0.0)) throw Error(ErrorCode::InvalidArgument, "T must be positive");
    const ResonanceInfo info = resonance_check(params, options.int_tol);
    if (!info.resonant) throw Error(ErrorCode::NotResonant, "gamma is not in the critical set");
    const ModeList modes = enumerate_modes(params, N, options.int_tol);
    const CoeffState y0N = restrict_to_modes(y0, modes);

    // Split y0 into its invisible part and the controllable remainder.
    CoeffState invisible = zero_state(modes);
    for (auto pair : info.pairs) {
        if (pair.second > N) continue;
        const CoeffState v = invisible_mode(params, pair, N, options.int_tol);
        invisible.coeffs += inner(y0N, v) * v.coeffs;
    }
    CoeffState controllable = y0N;
    controllable.coeffs -= invisible.coeffs;

    // Partnered modes share one frequency, so their moment equations merge.
    const Eigen::VectorXcd d_full = moment_rhs(controllable);
    std::vector<double> freqs;
    std::vector<cplx> d_reduced;
    std::vector<int> counts;
    std::vector<Eigen::Index> group_of(modes.size(), -1);
    for (std::size_t j = 0; j < modes.size(); ++j) {
        if (modes[j].partner) {
            const auto other = controllable.position_of(*modes[j].partner);
            if (other >= 0 && group_of[static_cast<std::size_t>(other)] >= 0) {
                const auto g = group_of[static_cast<std::size_t>(other)];
                group_of[j] = g;
                d_reduced[static_cast<std::size_t>(g)] += d_full[static_cast<Eigen::Index>(j)];
                ++counts[static_cast<std::size_t>(g)];
                continue;
            }
        }
        group_of[j] = static_cast<Eigen::Index>(freqs.size());
        freqs.push_back(modes[j].lambda);
        d_reduced.push_back(d_full[static_cast<Eigen::Index>(j)]);
        counts.push_back(1);
    }
    Eigen::VectorXcd d(static_cast<Eigen::Index>(freqs.size()));
    for (std::size_t g = 0; g < freqs.size(); ++g)
        d[static_cast<Eigen::Index>(g)] = d_reduced[g] / static_cast<double>(counts[g]);

    ControlSignal f;
    f.T = T;
    f.lambdas = freqs;
    const GramData gram = gram_matrix(freqs, T);
    f.betas = solve_moment(gram, d, options.reg);

    ControlReport report;
    report.gram_cond = gram.cond_proxy;
    report.tail_energy = tail_energy_beyond(y0, N);
    report.irreducible_residual =
        norm_theta(invisible, make_theta_weight(params, modes, -0.25));
    certify(params, y0N, f, T, options, report);
    return {std::move(f), std::move(report)};
}

ControlReport diagnose_resonant(const MediumParams& params, const CoeffState& y0, double T,
                                int N, const NullControlOptions& options) {
    return diagnose_resonant_full(params, y0, T, N, options).second;
}

}  // namespace biharm
