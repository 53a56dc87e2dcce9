#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "biharm/hilbert.hpp"

namespace biharm::cli {

enum class Command { spectrum, observability, control, scan };

const char* to_string(Command c) noexcept;

struct ModeIndexData {
    int index = 1;
};

struct CoefficientListData {
    std::vector<cplx> coeffs;  // on modes 1..size in index order
};

struct GridSamplesData {
    std::size_t grid_size = 0;
    std::vector<cplx> samples;
};

struct InvisibleModeData {
    std::pair<int, int> pair{1, 2};
};

using InitialData =
    std::variant<ModeIndexData, CoefficientListData, GridSamplesData, InvisibleModeData>;

struct Scenario {
    std::optional<double> gamma;
    double ell = 0.0;
    double T = 1.0;
    int n_modes = 0;
    std::optional<InitialData> initial_data;
    double int_tol = kDefaultIntTol;
    double reg = 0.0;
    std::string prefix;
    std::vector<double> gamma_grid;
    std::size_t control_samples = 1001;
    std::size_t trace_samples = 1001;
    bool verify_with_oracle = true;
};

/// Strict parse: unknown keys, wrong types and failed parameter
/// preconditions all raise Error(InvalidScenario) (or the parameter error).
Scenario parse_scenario(const nlohmann::json& j, Command command);
Scenario load_scenario(const std::string& path, Command command);

MediumParams scenario_params(const Scenario& s);

/// Builds y0 on modes 1..n_modes (coefficient lists may be longer and keep
/// their tail).
CoeffState build_initial_state(const Scenario& s);

}  // namespace biharm::cli
