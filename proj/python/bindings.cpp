#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fddestab/boundary.hpp"
#include "fddestab/char_roots.hpp"
#include "fddestab/classifier.hpp"
#include "fddestab/errors.hpp"
#include "fddestab/fdde_sim.hpp"
#include "fddestab/scaling.hpp"

namespace py = pybind11;
using namespace fddestab;

namespace {

py::dict delay_dict(const CriticalDelay& d) {
    py::dict out;
    out["tau"] = d.tau;
    out["branch"] = std::string(to_string(d.branch));
    out["v"] = d.v;
    return out;
}

py::list delay_list(const std::vector<CriticalDelay>& ds) {
    py::list out;
    for (const auto& d : ds) out.append(delay_dict(d));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Stability analysis of D^alpha x = a x(t) + b x(t - tau) - b x(t - 2 tau)";

    // Messages carry the error kind as a "kind: detail" prefix.
    py::register_exception<Error>(m, "FddeError", PyExc_ValueError);

    m.def("scale", [](double alpha, double a, double b, double tau) {
        const auto s = scale({alpha, a, b, tau});
        return py::make_tuple(s.A, s.B);
    }, py::arg("alpha"), py::arg("a"), py::arg("b"), py::arg("tau"));

    // boundary
    m.def("branch_interval", [](double alpha, const std::string& branch) {
        const auto iv = branch_interval(alpha, parse_branch(branch));
        return py::make_tuple(iv.v_lo, iv.v_hi);
    }, py::arg("alpha"), py::arg("branch"));
    m.def("boundary_point", [](double alpha, double v) {
        const auto p = boundary_point(alpha, v);
        return py::make_tuple(p.A, p.B);
    }, py::arg("alpha"), py::arg("v"));
    m.def("sample_branch", [](double alpha, const std::string& branch, int n, double b_cap) {
        py::list rows;
        for (const auto& p : sample_branch(alpha, parse_branch(branch), n, b_cap))
            rows.append(py::make_tuple(p.v, p.A, p.B));
        return rows;
    }, py::arg("alpha"), py::arg("branch"), py::arg("n") = 200, py::arg("b_cap") = 50.0);
    m.def("alpha_star", &alpha_star);
    m.def("alpha_double_star", &alpha_double_star);
    m.def("branch_intersection", [](double alpha) {
        const auto x = branch_intersection(alpha);
        return py::make_tuple(x.A, x.B);
    }, py::arg("alpha"));
    m.def("tangent_slope", &tangent_slope, py::arg("alpha"), py::arg("v0"));
    m.def("t1_slope", &t1_slope, py::arg("alpha"));
    m.def("m1_poly", &m1_poly, py::arg("alpha"));

    // classification
    m.def("classify", [](double alpha, double a, double b) {
        const auto v = classify(alpha, a, b);
        py::dict out;
        out["region"] = std::string(to_string(v.region));
        out["region_code"] = static_cast<int>(v.region);
        out["critical_delays"] = delay_list(v.critical_delays);
        out["extra_crossings"] = delay_list(v.extra_crossings);
        out["note"] = v.note;
        return out;
    }, py::arg("alpha"), py::arg("a"), py::arg("b"));
    m.def("stability_at", [](double alpha, double a, double b, double tau) {
        return std::string(to_string(stability_at(alpha, a, b, tau)));
    }, py::arg("alpha"), py::arg("a"), py::arg("b"), py::arg("tau"));

    // characteristic roots
    m.def("char_residual", &char_residual, py::arg("alpha"), py::arg("A"), py::arg("B"), py::arg("beta"));
    m.def("newton_root", [](double alpha, double A, double B, Complex guess) {
        return newton_root(alpha, A, B, guess).beta;
    }, py::arg("alpha"), py::arg("A"), py::arg("B"), py::arg("guess"));
    m.def("roots", [](double alpha, double a, double b, double tau, double v_max) {
        const auto s = scale({alpha, a, b, tau});
        ScanWindow w;
        w.v_max = v_max;
        py::list out;
        for (const auto& r : rightmost_root_scan(alpha, s.A, s.B, w)) out.append(py::make_tuple(r.beta, r.residual));
        return out;
    }, py::arg("alpha"), py::arg("a"), py::arg("b"), py::arg("tau"), py::arg("v_max") = 4.0 * std::numbers::pi);

    // simulation
    m.def("simulate", [](double alpha, double a, double b, double tau, double x0, int steps_per_delay, double h,
                         std::optional<double> T) {
        const ModelParams params{alpha, a, b, tau};
        const double horizon = T.value_or(std::max(15.0, 12.0 * tau));
        const auto cfg = tau > 0.0 ? SimConfig::aligned(params, x0, steps_per_delay, horizon)
                                   : SimConfig::with_step(params, x0, h, horizon);
        Trajectory traj;
        {
            py::gil_scoped_release release;
            traj = integrate(cfg);
        }
        py::dict out;
        out["t"] = traj.times;
        out["x"] = traj.values;
        out["classification"] = std::string(to_string(traj.classification));
        out["envelope_ratio"] = traj.envelope_ratio;
        out["overflow"] = traj.overflow_truncated;
        return out;
    }, py::arg("alpha"), py::arg("a"), py::arg("b"), py::arg("tau"), py::arg("x0") = 1.0,
       py::arg("steps_per_delay") = 50, py::arg("h") = 0.01, py::arg("T") = py::none());
    m.def("mittag_leffler", &mittag_leffler, py::arg("alpha"), py::arg("z"));
}
