#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "biharm/control.hpp"
#include "biharm/errors.hpp"
#include "biharm/evolution.hpp"
#include "biharm/hilbert.hpp"
#include "biharm/observability.hpp"
#include "biharm/spectrum.hpp"

namespace py = pybind11;
using namespace biharm;

namespace {

py::dict report_dict(const ControlReport& r) {
    py::dict d;
    d["residual_modal"] = r.residual_modal;
    d["residual_theta"] = r.residual_theta;
    d["gram_cond"] = r.gram_cond;
    d["control_energy"] = r.control_energy;
    d["verified_by_oracle"] = r.verified_by_oracle;
    d["oracle_discrepancy"] = r.oracle_discrepancy;
    d["tail_energy"] = r.tail_energy;
    d["irreducible_residual"] = r.irreducible_residual;
    d["initial_norm"] = r.initial_norm;
    d["reg"] = r.reg;
    d["final_state"] = r.final_state;
    return d;
}

NullControlOptions make_options(double reg, bool verify, double phase_step) {
    NullControlOptions o;
    o.reg = reg;
    o.verify_with_oracle = verify;
    o.oracle_phase_step = phase_step;
    return o;
}

}  // namespace

PYBIND11_MODULE(_biharm, m) {
    m.doc() = "Hinged biharmonic Schroedinger equation: spectra, observability, null control";

    static py::exception<Error> error(m, "BiharmError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object args = py::make_tuple(to_string(e.code()), e.what());
            PyErr_SetObject(error.ptr(), args.ptr());
        }
    });

    py::class_<MediumParams>(m, "MediumParams")
        .def_readonly("gamma", &MediumParams::gamma)
        .def_readonly("ell", &MediumParams::ell)
        .def_readonly("n0", &MediumParams::n0)
        .def("__repr__", [](const MediumParams& p) {
            return "MediumParams(gamma=" + std::to_string(p.gamma) + ", ell=" + std::to_string(p.ell) + ")";
        });

    py::class_<Mode>(m, "Mode")
        .def_readonly("n", &Mode::n)
        .def_readonly("k", &Mode::k)
        .def_readonly("lam", &Mode::lambda)
        .def_readonly("trace0", &Mode::trace0)
        .def_property_readonly("kind", [](const Mode& md) { return std::string(to_string(md.kind)); })
        .def_readonly("partner", &Mode::partner);

    py::class_<ResonanceInfo>(m, "ResonanceInfo")
        .def_readonly("resonant", &ResonanceInfo::resonant)
        .def_readonly("pairs", &ResonanceInfo::pairs)
        .def_readonly("zero_mode", &ResonanceInfo::zero_mode)
        .def_readonly("s_value", &ResonanceInfo::s_value);

    py::class_<CoeffState>(m, "CoeffState")
        .def(py::init<ModeList, Eigen::VectorXcd, std::string>(), py::arg("modes"),
             py::arg("coeffs"), py::arg("label") = "")
        .def_readonly("modes", &CoeffState::modes)
        .def_readonly("coeffs", &CoeffState::coeffs)
        .def_readonly("label", &CoeffState::label)
        .def_property_readonly("indices", [](const CoeffState& s) {
            std::vector<int> out;
            for (const auto& md : s.modes) out.push_back(md.n);
            return out;
        })
        .def("__len__", [](const CoeffState& s) { return s.size(); });

    py::class_<ControlSignal>(m, "ControlSignal")
        .def_readonly("lambdas", &ControlSignal::lambdas)
        .def_readonly("betas", &ControlSignal::betas)
        .def_readonly("T", &ControlSignal::T)
        .def("__call__", &ControlSignal::operator())
        .def("sample", [](const ControlSignal& f, const std::vector<double>& t) { return f.sample(t); })
        .def("l2_norm", &ControlSignal::l2_norm);

    py::class_<ObservabilityBounds>(m, "ObservabilityBounds")
        .def_readonly("lower", &ObservabilityBounds::lower)
        .def_readonly("upper", &ObservabilityBounds::upper)
        .def_readonly("lower_jacobi", &ObservabilityBounds::lower_jacobi);

    py::class_<ScanRow>(m, "ScanRow")
        .def_readonly("gamma", &ScanRow::gamma)
        .def_readonly("constant", &ScanRow::constant)
        .def_readonly("resonant", &ScanRow::resonant)
        .def_property_readonly("status", [](const ScanRow& r) { return std::string(to_string(r.status)); })
        .def_readonly("nearest_critical", &ScanRow::nearest_critical)
        .def_readonly("distance", &ScanRow::distance);

    py::class_<DualityCheck>(m, "DualityCheck")
        .def_readonly("max_abs_defect", &DualityCheck::max_abs_defect)
        .def_readonly("max_rel_defect", &DualityCheck::max_rel_defect)
        .def_readonly("fitted_sigma", &DualityCheck::fitted_sigma)
        .def_readonly("trials", &DualityCheck::trials);

    m.def("make_params", &make_params, py::arg("gamma"), py::arg("ell"));
    m.def("eigenvalue", &eigenvalue, py::arg("params"), py::arg("n"));
    m.def("boundary_slope", &boundary_slope, py::arg("params"), py::arg("n"));
    m.def("spectral_floor", &spectral_floor, py::arg("params"));
    m.def("resonance_check", &resonance_check, py::arg("params"), py::arg("int_tol") = kDefaultIntTol);
    m.def("enumerate_modes", &enumerate_modes, py::arg("params"), py::arg("N"),
          py::arg("int_tol") = kDefaultIntTol);
    m.def("characteristic_residual", &characteristic_residual, py::arg("params"), py::arg("lam"));

    m.def("project",
          [](const std::vector<cplx>& samples, const MediumParams& p, int N, double int_tol) {
              return project(samples, p, N, int_tol);
          },
          py::arg("samples"), py::arg("params"), py::arg("N"), py::arg("int_tol") = kDefaultIntTol);
    m.def("synthesize",
          [](const CoeffState& s, const MediumParams& p, const std::vector<double>& x) {
              return synthesize(s, p, x);
          },
          py::arg("state"), py::arg("params"), py::arg("x"));
    m.def("norm_theta",
          [](const CoeffState& s, const MediumParams& p, double theta) {
              return norm_theta(s, make_theta_weight(p, s.modes, theta));
          },
          py::arg("state"), py::arg("params"), py::arg("theta"));
    m.def("free_evolve", &free_evolve, py::arg("state"), py::arg("t"));
    m.def("boundary_trace",
          [](const CoeffState& s, const std::vector<double>& t) { return boundary_trace(s, t).values; },
          py::arg("state"), py::arg("times"));
    m.def("controlled_evolve", &controlled_evolve, py::arg("y0"), py::arg("f"), py::arg("T"));
    m.def("duality_check", &duality_check, py::arg("params"), py::arg("N"), py::arg("trials"),
          py::arg("seed"), py::arg("T") = 1.0);

    m.def("observability_bounds", &observability_bounds, py::arg("params"), py::arg("N"),
          py::arg("T"), py::arg("int_tol") = kDefaultIntTol);
    m.def("weighted_gramian", &weighted_gramian, py::arg("params"), py::arg("modes"), py::arg("T"));
    m.def("invisible_mode", &invisible_mode, py::arg("params"), py::arg("pair"), py::arg("N") = 0,
          py::arg("int_tol") = kDefaultIntTol);
    m.def("resonance_scan",
          [](const std::vector<double>& grid, double ell, int N, double T, double int_tol) {
              py::gil_scoped_release release;
              return resonance_scan(grid, ell, N, T, int_tol);
          },
          py::arg("gamma_grid"), py::arg("ell"), py::arg("N"), py::arg("T"),
          py::arg("int_tol") = kDefaultIntTol);

    m.def("null_control",
          [](const MediumParams& p, const CoeffState& y0, double T, int N, double reg, bool verify,
             double phase_step) {
              auto [f, r] = null_control(p, y0, T, N, make_options(reg, verify, phase_step));
              return py::make_tuple(f, report_dict(r));
          },
          py::arg("params"), py::arg("y0"), py::arg("T"), py::arg("N"), py::arg("reg") = 0.0,
          py::arg("verify_with_oracle") = true, py::arg("oracle_phase_step") = 0.02);
    m.def("diagnose_resonant",
          [](const MediumParams& p, const CoeffState& y0, double T, int N, bool verify) {
              return report_dict(diagnose_resonant(p, y0, T, N, make_options(0.0, verify, 0.02)));
          },
          py::arg("params"), py::arg("y0"), py::arg("T"), py::arg("N"),
          py::arg("verify_with_oracle") = false);
}
