#include "biharm/cli/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "biharm/errors.hpp"
#include "biharm/observability.hpp"

namespace biharm::cli {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::InvalidScenario, msg); }

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) invalid(where + " must be a JSON object");
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) invalid("unknown key '" + key + "' in " + where);
}

double get_number(const json& obj, const std::string& key) {
    const auto& v = obj.at(key);
    if (!v.is_number()) invalid("'" + key + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) invalid("'" + key + "' must be finite");
    return x;
}

long long get_integer(const json& obj, const std::string& key) {
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) invalid("'" + key + "' must be an integer");
    return v.get<long long>();
}

std::vector<double> get_number_array(const json& obj, const std::string& key) {
    const auto& v = obj.at(key);
    if (!v.is_array()) invalid("'" + key + "' must be an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) invalid("'" + key + "' must contain numbers only");
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<cplx> complex_array(const json& obj, const std::string& where) {
    const auto re = get_number_array(obj, "re");
    std::vector<double> im(re.size(), 0.0);
    if (obj.contains("im")) {
        im = get_number_array(obj, "im");
        if (im.size() != re.size()) invalid("'re' and 'im' lengths differ in " + where);
    }
    std::vector<cplx> out(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) out[i] = cplx{re[i], im[i]};
    return out;
}

InitialData parse_initial_data(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        invalid("initial_data needs a string 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "mode_index") {
        reject_unknown(j, {"kind", "index"}, "initial_data");
        ModeIndexData d;
        const long long n = get_integer(j, "index");
        if (n < 1) invalid("mode index must be >= 1");
        d.index = static_cast<int>(n);
        return d;
    }
    if (kind == "coefficient_list") {
        reject_unknown(j, {"kind", "re", "im"}, "initial_data");
        CoefficientListData d;
        d.coeffs = complex_array(j, "initial_data");
        if (d.coeffs.empty()) invalid("coefficient_list is empty");
        return d;
    }
    if (kind == "grid_samples") {
        reject_unknown(j, {"kind", "grid_size", "re", "im"}, "initial_data");
        GridSamplesData d;
        const long long m = get_integer(j, "grid_size");
        if (m < 3) invalid("grid_size must be >= 3");
        d.grid_size = static_cast<std::size_t>(m);
        d.samples = complex_array(j, "initial_data");
        if (d.samples.size() != d.grid_size) invalid("sample count differs from grid_size");
        return d;
    }
    if (kind == "invisible_mode") {
        reject_unknown(j, {"kind", "pair"}, "initial_data");
        const auto& p = j.at("pair");
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
            invalid("'pair' must be two integers");
        return InvisibleModeData{{p[0].get<int>(), p[1].get<int>()}};
    }
    invalid("unknown initial_data kind '" + kind + "'");
}

std::vector<double> parse_gamma_grid(const json& g) {
    if (g.is_array()) {
        std::vector<double> out;
        for (const auto& e : g) {
            if (!e.is_number()) invalid("gamma_grid entries must be numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }
    reject_unknown(g, {"start", "stop", "count"}, "gamma_grid");
    const double a = get_number(g, "start");
    const double b = get_number(g, "stop");
    const long long count = get_integer(g, "count");
    if (count < 1) invalid("gamma_grid.count must be >= 1");
    if (count == 1) return {a};
    return uniform_grid(a, b, static_cast<std::size_t>(count));
}

void require(const json& j, const std::string& key, Command c) {
    if (!j.contains(key))
        invalid(std::string("'") + key + "' is required for command " + to_string(c));
}

}  // namespace

const char* to_string(Command c) noexcept {
    switch (c) {
        case Command::spectrum: return "spectrum";
        case Command::observability: return "observability";
        case Command::control: return "control";
        case Command::scan: return "scan";
    }
    return "unknown";
}

Scenario parse_scenario(const json& j, Command command) {
    reject_unknown(j,
                   {"gamma", "ell", "T", "n_modes", "initial_data", "tolerances", "outputs",
                    "gamma_grid", "control_samples", "trace_samples", "verify_with_oracle"},
                   "scenario");
    Scenario s;
    require(j, "ell", command);
    require(j, "n_modes", command);
    if (command != Command::scan) require(j, "gamma", command);
    if (command != Command::spectrum) require(j, "T", command);
    if (command == Command::control) require(j, "initial_data", command);
    if (command == Command::scan) require(j, "gamma_grid", command);

    if (j.contains("gamma")) s.gamma = get_number(j, "gamma");
    s.ell = get_number(j, "ell");
    if (j.contains("T")) {
        s.T = get_number(j, "T");
        if (!(s.T > 0.0)) invalid("T must be positive");
    }
    const long long n = get_integer(j, "n_modes");
    if (n < 1 || n > 100000) invalid("n_modes must be in [1, 100000]");
    s.n_modes = static_cast<int>(n);

    if (j.contains("initial_data")) s.initial_data = parse_initial_data(j.at("initial_data"));
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        reject_unknown(t, {"int_tol", "reg"}, "tolerances");
        if (t.contains("int_tol")) s.int_tol = get_number(t, "int_tol");
        if (t.contains("reg")) s.reg = get_number(t, "reg");
        if (s.int_tol < 0.0) invalid("int_tol must be >= 0");
        if (s.reg < 0.0) invalid("reg must be >= 0");
    }
    if (j.contains("outputs")) {
        const auto& o = j.at("outputs");
        reject_unknown(o, {"prefix"}, "outputs");
        if (o.contains("prefix")) {
            if (!o.at("prefix").is_string()) invalid("outputs.prefix must be a string");
            s.prefix = o.at("prefix").get<std::string>();
        }
    }
    if (j.contains("gamma_grid")) {
        s.gamma_grid = parse_gamma_grid(j.at("gamma_grid"));
        if (s.gamma_grid.empty()) invalid("gamma_grid is empty");
    }
    if (j.contains("control_samples")) {
        const long long m = get_integer(j, "control_samples");
        if (m < 2) invalid("control_samples must be >= 2");
        s.control_samples = static_cast<std::size_t>(m);
    }
    if (j.contains("trace_samples")) {
        const long long m = get_integer(j, "trace_samples");
        if (m < 2) invalid("trace_samples must be >= 2");
        s.trace_samples = static_cast<std::size_t>(m);
    }
    if (j.contains("verify_with_oracle")) {
        if (!j.at("verify_with_oracle").is_boolean()) invalid("verify_with_oracle must be a boolean");
        s.verify_with_oracle = j.at("verify_with_oracle").get<bool>();
    }

    // Parameter preconditions before any computation.
    if (s.gamma) make_params(*s.gamma, s.ell);
    for (double g : s.gamma_grid) make_params(g, s.ell);
    return s;
}

Scenario load_scenario(const std::string& path, Command command) {
    std::ifstream in(path);
    if (!in) invalid("cannot open config '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        invalid(std::string("malformed JSON: ") + e.what());
    }
    return parse_scenario(j, command);
}

MediumParams scenario_params(const Scenario& s) {
    if (!s.gamma) invalid("scenario has no gamma");
    return make_params(*s.gamma, s.ell);
}

CoeffState build_initial_state(const Scenario& s) {
    if (!s.initial_data) invalid("scenario has no initial_data");
    const MediumParams params = scenario_params(s);
    return std::visit(
        [&](const auto& d) -> CoeffState {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, ModeIndexData>) {
                const int N = std::max(s.n_modes, d.index);
                return unit_state(enumerate_modes(params, N, s.int_tol), d.index);
            } else if constexpr (std::is_same_v<T, CoefficientListData>) {
                const int N = std::max(s.n_modes, static_cast<int>(d.coeffs.size()));
                CoeffState st = zero_state(enumerate_modes(params, N, s.int_tol));
                for (std::size_t i = 0; i < d.coeffs.size(); ++i)
                    st.coeffs[st.position_of(static_cast<int>(i) + 1)] = d.coeffs[i];
                return st;
            } else if constexpr (std::is_same_v<T, GridSamplesData>) {
                return project(d.samples, params, s.n_modes, s.int_tol);
            } else {
                return invisible_mode(params, d.pair, std::max(s.n_modes, d.pair.second),
                                      s.int_tol);
            }
        },
        *s.initial_data);
}

}  // namespace biharm::cli
