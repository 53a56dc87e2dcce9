#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace biharm {

inline constexpr double kDefaultIntTol = 1e-9;

/// Physical configuration: dispersion coefficient gamma < 0 on (0, ell).
/// n0 is the first index whose eigenvalue is strictly positive.
struct MediumParams {
    double gamma = 0.0;
    double ell = 0.0;
    int n0 = 1;
};

MediumParams make_params(double gamma, double ell);

enum class ModeKind { negative, zero, positive };

const char* to_string(ModeKind kind) noexcept;

/// One spectral line of phi'''' - gamma phi'' with hinged ends.
struct Mode {
    int n = 0;
    double k = 0.0;       // n pi / ell
    double lambda = 0.0;  // k^2 (k^2 + gamma)
    double trace0 = 0.0;  // Phi_n'(0) = sqrt(2/ell) k
    ModeKind kind = ModeKind::positive;
    std::optional<int> partner;
};

using ModeList = std::vector<Mode>;

struct ResonanceInfo {
    bool resonant = false;
    std::vector<std::pair<int, int>> pairs;
    std::optional<int> zero_mode;
    double s_value = 0.0;  // -gamma ell^2 / pi^2
};

double wavenumber(const MediumParams& params, int n);
double eigenvalue(const MediumParams& params, int n);
double boundary_slope(const MediumParams& params, int n);

/// Lower bound -gamma^2/4 of the spectrum.
double spectral_floor(const MediumParams& params) noexcept;

/// Scale-aware zero test used to classify the zero eigenvalue.
bool is_zero_eigenvalue(const MediumParams& params, double lambda) noexcept;

ResonanceInfo resonance_check(const MediumParams& params, double int_tol = kDefaultIntTol);

/// Modes 1..N sorted by eigenvalue (ties by index) with partner links filled.
ModeList enumerate_modes(const MediumParams& params, int N, double int_tol = kDefaultIntTol);

/// The two factors whose product is the characteristic function of the
/// hinged problem. `primary` is sin(ell * eta(lambda)) on the whole range
/// lambda >= -gamma^2/4; `secondary` is sin(ell * xibar(lambda)) for
/// lambda < 0 and exactly 1 otherwise.
struct CharacteristicFactors {
    double primary = 0.0;
    double secondary = 1.0;
};

CharacteristicFactors characteristic_factors(const MediumParams& params, double lambda);
double characteristic_residual(const MediumParams& params, double lambda);

double spectral_gap_floor(const MediumParams& params, int N);
double trace_ratio(const MediumParams& params, int n);
double upper_density_estimate(const MediumParams& params, double r, int N);

}  // namespace biharm
