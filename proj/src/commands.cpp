#include "biharm/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "biharm/control.hpp"
#include "biharm/errors.hpp"
#include "biharm/observability.hpp"

namespace biharm::cli {

using nlohmann::json;

namespace {

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : path_(path), out_(path) {
        if (!out_) throw Error(ErrorCode::InvalidScenario, "cannot write '" + path + "'");
    }
    CsvWriter& header(std::initializer_list<const char*> cols) {
        bool first = true;
        for (const char* c : cols) {
            out_ << (first ? "" : ",") << c;
            first = false;
        }
        out_ << '\n';
        return *this;
    }
    template <typename... Cells>
    void row(const Cells&... cells) {
        bool first = true;
        ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
        out_ << '\n';
    }
    const std::string& path() const { return path_; }

private:
    static std::string cell(double v) { return format_double(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(const std::string& v) { return v; }
    static std::string cell(const char* v) { return v; }

    std::string path_;
    std::ofstream out_;
};

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidScenario, "cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

json pairs_json(const std::vector<std::pair<int, int>>& pairs) {
    json arr = json::array();
    for (auto [p, q] : pairs) arr.push_back({p, q});
    return arr;
}

json complex_json(const Eigen::VectorXcd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back({v[i].real(), v[i].imag()});
    return arr;
}

json report_json(const ControlReport& r) {
    return json{{"residual_modal", r.residual_modal},
                {"residual_max", r.residual_modal.empty()
                                     ? 0.0
                                     : *std::max_element(r.residual_modal.begin(),
                                                         r.residual_modal.end())},
                {"residual_theta", r.residual_theta},
                {"gram_cond", std::isfinite(r.gram_cond) ? json(r.gram_cond) : json("inf")},
                {"control_energy", r.control_energy},
                {"verified_by_oracle", r.verified_by_oracle},
                {"oracle_discrepancy", r.oracle_discrepancy},
                {"tail_energy", r.tail_energy},
                {"irreducible_residual", r.irreducible_residual},
                {"initial_norm", r.initial_norm},
                {"reg", r.reg}};
}

void write_control_outputs(const ControlSignal& f, const ControlReport& r, const Scenario& s,
                           const std::string& prefix, const std::string& status,
                           CommandResult& result) {
    CsvWriter fcsv(prefix + "_control.csv");
    fcsv.header({"t", "re_f", "im_f"});
    const auto times = uniform_grid(0.0, f.T, s.control_samples);
    for (double t : times) {
        const cplx v = f(t);
        fcsv.row(t, v.real(), v.imag());
    }
    result.files.push_back(fcsv.path());

    CsvWriter ycsv(prefix + "_final_state.csv");
    ycsv.header({"n", "lambda", "re", "im", "abs"});
    for (std::size_t j = 0; j < r.final_state.modes.size(); ++j) {
        const cplx c = r.final_state.coeffs[static_cast<Eigen::Index>(j)];
        ycsv.row(r.final_state.modes[j].n, r.final_state.modes[j].lambda, c.real(), c.imag(),
                 std::abs(c));
    }
    result.files.push_back(ycsv.path());

    json report = report_json(r);
    report["status"] = status;
    report["T"] = f.T;
    report["n_modes"] = s.n_modes;
    report["control"] = {{"lambdas", f.lambdas}, {"betas", complex_json(f.betas)}};
    write_json(prefix + "_report.json", report);
    result.files.push_back(prefix + "_report.json");
    result.summary = report;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ResonantParameters: return kExitResonant;
        case ErrorCode::SingularGram: return kExitSingular;
        case ErrorCode::UnresolvedSignConvention: return kExitInternal;
        default: return kExitInvalid;
    }
}

CommandResult cmd_spectrum(const Scenario& s, const std::string& prefix) {
    const MediumParams params = scenario_params(s);
    const ModeList modes = enumerate_modes(params, s.n_modes, s.int_tol);
    const ResonanceInfo info = resonance_check(params, s.int_tol);
    CommandResult result;

    CsvWriter csv(prefix + "_spectrum.csv");
    csv.header({"n", "lambda", "kind", "trace0", "partner"});
    for (const auto& m : modes)
        csv.row(m.n, m.lambda, to_string(m.kind), m.trace0,
                m.partner ? std::to_string(*m.partner) : std::string{});
    result.files.push_back(csv.path());

    json summary{{"gamma", params.gamma},
                 {"ell", params.ell},
                 {"n0", params.n0},
                 {"s_value", info.s_value},
                 {"resonant", info.resonant},
                 {"pairs", pairs_json(info.pairs)},
                 {"zero_mode", info.zero_mode ? json(*info.zero_mode) : json(nullptr)},
                 {"spectral_floor", spectral_floor(params)}};
    write_json(prefix + "_resonance.json", summary);
    result.files.push_back(prefix + "_resonance.json");
    result.summary = summary;
    return result;
}

CommandResult cmd_observability(const Scenario& s, const std::string& prefix) {
    const MediumParams params = scenario_params(s);
    const ModeList modes = enumerate_modes(params, s.n_modes, s.int_tol);
    const ResonanceInfo info = resonance_check(params, s.int_tol);
    std::vector<double> lambdas;
    for (const auto& m : modes) lambdas.push_back(m.lambda);
    const GramData gram = gram_matrix(lambdas, s.T);
    const ObservabilityBounds bounds = observability_bounds(params, s.n_modes, s.T, s.int_tol);

    CommandResult result;
    json summary{{"gamma", params.gamma},
                 {"ell", params.ell},
                 {"T", s.T},
                 {"n_modes", s.n_modes},
                 {"gram_min_eig", gram.min_eig},
                 {"gram_max_eig", gram.max_eig},
                 {"gram_cond", std::isfinite(gram.cond_proxy) ? json(gram.cond_proxy) : json("inf")},
                 {"observability_constant", bounds.lower},
                 {"observability_constant_jacobi",
                  std::isnan(bounds.lower_jacobi) ? json(nullptr) : json(bounds.lower_jacobi)},
                 {"upper_constant", bounds.upper},
                 {"resonant", info.resonant},
                 {"pairs", pairs_json(info.pairs)}};

    json invisible = json::array();
    std::optional<CsvWriter> trace_csv;
    for (auto pair : info.pairs) {
        if (pair.second > s.n_modes) continue;
        const CoeffState v = invisible_mode(params, pair, s.n_modes, s.int_tol);
        const auto times = uniform_grid(0.0, s.T, s.trace_samples);
        const TraceSeries tr = boundary_trace(v, times);
        double sup = 0.0;
        for (const auto& z : tr.values) sup = std::max(sup, std::abs(z));
        invisible.push_back({{"pair", {pair.first, pair.second}},
                             {"coefficients", {v.coeffs[v.position_of(pair.first)].real(),
                                               v.coeffs[v.position_of(pair.second)].real()}},
                             {"trace_sup", sup}});
        if (!trace_csv) {
            trace_csv.emplace(prefix + "_invisible_trace.csv");
            trace_csv->header({"p", "q", "t", "re", "im"});
            result.files.push_back(trace_csv->path());
        }
        for (std::size_t i = 0; i < tr.times.size(); ++i)
            trace_csv->row(pair.first, pair.second, tr.times[i], tr.values[i].real(),
                           tr.values[i].imag());
    }
    summary["invisible_modes"] = invisible;
    write_json(prefix + "_observability.json", summary);
    result.files.insert(result.files.begin(), prefix + "_observability.json");
    result.summary = summary;
    return result;
}

CommandResult cmd_control(const Scenario& s, const std::string& prefix) {
    const MediumParams params = scenario_params(s);
    const CoeffState y0 = build_initial_state(s);
    NullControlOptions options;
    options.reg = s.reg;
    options.int_tol = s.int_tol;
    options.verify_with_oracle = s.verify_with_oracle;

    CommandResult result;
    if (resonance_check(params, s.int_tol).resonant) {
        const auto [f, report] = diagnose_resonant_full(params, y0, s.T, s.n_modes, options);
        write_control_outputs(f, report, s, prefix, "resonant_refusal", result);
        result.exit_code = kExitResonant;
        return result;
    }
    const auto [f, report] = null_control(params, y0, s.T, s.n_modes, options);
    write_control_outputs(f, report, s, prefix, "controlled", result);
    return result;
}

CommandResult cmd_scan(const Scenario& s, const std::string& prefix) {
    const auto rows = resonance_scan(s.gamma_grid, s.ell, s.n_modes, s.T, s.int_tol);
    CommandResult result;
    CsvWriter csv(prefix + "_scan.csv");
    csv.header({"gamma", "observability_constant", "resonant", "status", "nearest_critical_gamma",
                "distance"});
    std::size_t argmin = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        csv.row(r.gamma, r.constant, r.resonant ? 1 : 0, to_string(r.status), r.nearest_critical,
                r.distance);
        if (r.constant < rows[argmin].constant) argmin = i;
    }
    result.files.push_back(csv.path());
    result.summary = {{"rows", rows.size()},
                      {"min_gamma", rows[argmin].gamma},
                      {"min_constant", rows[argmin].constant}};
    return result;
}

CommandResult run_command(Command command, const std::string& config_path,
                          const std::string& out_prefix) {
    const auto start = std::chrono::steady_clock::now();
    std::string prefix = out_prefix;
    CommandResult result;
    try {
        const Scenario s = load_scenario(config_path, command);
        if (prefix.empty()) prefix = s.prefix;
        if (prefix.empty()) throw Error(ErrorCode::InvalidScenario, "no output prefix given");
        switch (command) {
            case Command::spectrum: result = cmd_spectrum(s, prefix); break;
            case Command::observability: result = cmd_observability(s, prefix); break;
            case Command::control: result = cmd_control(s, prefix); break;
            case Command::scan: result = cmd_scan(s, prefix); break;
        }
    } catch (const Error& e) {
        result.exit_code = exit_code_for(e.code());
        result.summary = {{"error", std::string(to_string(e.code()))},
                          {"message", e.what()},
                          {"exit_code", result.exit_code}};
    } catch (const std::exception& e) {
        result.exit_code = kExitInternal;
        result.summary = {{"error", "Internal"}, {"message", e.what()},
                          {"exit_code", result.exit_code}};
    }
    if (result.summary.contains("error") && !prefix.empty()) {
        try {
            write_json(prefix + "_error.json", result.summary);
            result.files.push_back(prefix + "_error.json");
        } catch (const Error&) {
        }
    }
    if (!prefix.empty()) {
        // Run metadata stays out of the data files so those remain byte-stable.
        const auto ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start).count();
        std::ofstream log(prefix + "_run.log");
        log << "command=" << to_string(command) << "\nconfig=" << config_path
            << "\nexit_code=" << result.exit_code << "\nelapsed_ms=" << ms
            << "\nworkers=" << worker_count_from_env() << '\n';
    }
    return result;
}

}  // namespace biharm::cli
