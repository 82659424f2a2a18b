#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "henon/checks.hpp"
#include "henon/holonomy.hpp"
#include "henon/locus.hpp"
#include "henon/rigidity.hpp"

namespace py = pybind11;
using namespace henon;
using series::Series;

namespace {

Context make(const std::string& p, cplx a) { return Context(HenonMap{Polynomial::parse(p), a}); }

py::dict escape_dict(const EscapeValue& e) {
    py::dict d;
    d["value"] = e.value;
    d["log_value"] = e.log_value;
    d["terms"] = e.K;
    d["tail_bound"] = e.tail_bound;
    d["depth"] = e.depth;
    return d;
}

}  // namespace

PYBIND11_MODULE(_henon, m) {
    m.doc() = "Henon map escape coordinates, critical loci and rigidity series";

    static py::exception<Error> exc(m, "HenonError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(exc, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
        }
    });

    m.def("apply", [](const std::string& p, cplx a, cplx x, cplx y) {
        Point z = henon::apply(HenonMap{Polynomial::parse(p), a}, {x, y});
        return std::make_pair(z.x, z.y);
    }, py::arg("p"), py::arg("a"), py::arg("x"), py::arg("y"));
    m.def("apply_inverse", [](const std::string& p, cplx a, cplx x, cplx y) {
        Point z = henon::apply_inverse(HenonMap{Polynomial::parse(p), a}, {x, y});
        return std::make_pair(z.x, z.y);
    }, py::arg("p"), py::arg("a"), py::arg("x"), py::arg("y"));
    m.def("escape_radius", [](const std::string& p, double r, double R) {
        return domain_params(Polynomial::parse(p), r, R).alpha;
    }, py::arg("p"), py::arg("r") = 0.5, py::arg("R") = 0.125);

    m.def("phi_plus", [](const std::string& p, cplx a, cplx x, cplx y) {
        return escape_dict(henon::phi_plus(make(p, a), {x, y}));
    }, py::arg("p"), py::arg("a"), py::arg("x"), py::arg("y"));
    m.def("phi_minus", [](const std::string& p, cplx a, cplx x, cplx y) {
        return escape_dict(henon::phi_minus(make(p, a), {x, y}));
    }, py::arg("p"), py::arg("a"), py::arg("x"), py::arg("y"));
    m.def("green", [](const std::string& p, cplx a, cplx x, cplx y, const std::string& side) {
        GreenValue g = henon::green(make(p, a), {x, y}, side == "minus" ? Side::minus : Side::plus);
        return std::make_pair(g.value, g.interior);
    }, py::arg("p"), py::arg("a"), py::arg("x"), py::arg("y"), py::arg("side") = "plus");

    m.def("tangency", [](const std::string& p, cplx a, cplx x, cplx y) {
        return tangency_value(make(p, a), {x, y}).value;
    }, py::arg("p"), py::arg("a"), py::arg("x"), py::arg("y"));
    m.def("locus_y", [](const std::string& p, cplx a, cplx x, cplx seed) {
        return solve_locus_y(make(p, a), x, seed).y;
    }, py::arg("p"), py::arg("a"), py::arg("x"), py::arg("seed") = cplx(0));
    m.def("trace", [](const std::string& p, cplx a, cplx c, double x_min, double x_max, double step) {
        CurveTrace tr = trace_primary_component(make(p, a), c, x_min, x_max, step);
        std::vector<std::pair<cplx, cplx>> out;
        for (const auto& s : tr.samples) out.emplace_back(s.z.x, s.z.y);
        return out;
    }, py::arg("p"), py::arg("a"), py::arg("c") = cplx(0), py::arg("x_min") = 10.0, py::arg("x_max") = 1e4,
       py::arg("step") = 0.05);
    m.def("tangent_slope", [](const std::string& p, cplx a, cplx c) {
        return tangent_at_infinity(make(p, a), c).slope;
    }, py::arg("p"), py::arg("a"), py::arg("c") = cplx(0));
    m.def("contact_order", [](const std::string& p, cplx a, cplx x, cplx y) {
        return henon::contact_order(make(p, a), {x, y});
    }, py::arg("p"), py::arg("a"), py::arg("x"), py::arg("y"));
    m.def("psi_pair", [](const std::string& p, cplx a, cplx x, cplx y) {
        PsiPair s = henon::psi_pair(make(p, a), {x, y});
        return std::make_pair(s.psi_plus, s.psi_minus);
    }, py::arg("p"), py::arg("a"), py::arg("x"), py::arg("y"));

    m.def("sigma", [](int N) { return series::to_string(rigidity::sigma_series(N)); }, py::arg("N") = 6);
    m.def("sigma_coefficients", [](int N) {
        std::vector<std::string> out;
        Series s = rigidity::sigma_series(N);
        for (const auto& c : s.coefficients()) out.push_back(c.to_string());
        return out;
    }, py::arg("N") = 6);
    m.def("defect_coefficients", [](int N) {
        std::vector<std::string> out;
        Series s = rigidity::rigidity_defect(N).D;
        for (const auto& c : s.coefficients()) out.push_back(c.to_string());
        return out;
    }, py::arg("N") = 3);
    m.def("table_case_ids", &rigidity::table_case_ids);
    m.def("verify_table_case", [](const std::string& id, uint64_t seed, int samples) {
        auto r = rigidity::verify_table_case(id, seed, samples);
        py::dict d;
        d["case"] = r.case_id;
        d["n"] = r.n;
        d["ok"] = r.ok();
        d["violations_tested"] = r.violations_tested;
        d["violations_detected"] = r.violations_detected;
        d["deepest_detection"] = r.deepest_detection;
        return d;
    }, py::arg("case_id"), py::arg("seed") = 1, py::arg("samples") = 25);

    m.def("run_check", [](int id, uint64_t seed) {
        auto r = checks::run_check(id, seed);
        py::dict d;
        d["id"] = r.id;
        d["name"] = r.name;
        d["pass"] = r.pass && r.within_budget();
        d["seconds"] = r.seconds;
        d["detail"] = r.detail.dump();
        d["error"] = r.error;
        return d;
    }, py::arg("id"), py::arg("seed") = 1);
}
