#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fatbound/attractor.hpp"
#include "fatbound/error.hpp"
#include "fatbound/quadratic.hpp"
#include "fatbound/scenarios.hpp"
#include "fatbound/series.hpp"
#include "fatbound/solver.hpp"
#include "fatbound/transport.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace fatbound;

namespace {

py::array_t<double> to_array(std::span<const double> v) {
    py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Discounted subactions of x -> d x mod 1, symbolic envelopes and dual checks";

    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<NoCrossingError>(m, "NoCrossingError", PyExc_ValueError);
    py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_ValueError);

    py::class_<SymbolSeq>(m, "SymbolSeq")
        .def(py::init<std::vector<Digit>, std::vector<Digit>, int>(), "preperiod"_a, "period"_a, "d"_a = 2)
        .def_static("parse", &SymbolSeq::parse, "text"_a, "d"_a = 2)
        .def_static("periodic", &SymbolSeq::periodic, "period"_a, "d"_a = 2)
        .def_property_readonly("preperiod", &SymbolSeq::preperiod)
        .def_property_readonly("period", &SymbolSeq::period)
        .def_property_readonly("d", &SymbolSeq::d)
        .def("prefix", &SymbolSeq::prefix)
        .def("__getitem__", [](const SymbolSeq& s, std::size_t k) { return s[k]; })
        .def("__str__", &SymbolSeq::to_string)
        .def("__repr__", [](const SymbolSeq& s) { return "SymbolSeq('" + s.to_string() + "')"; })
        .def("__eq__", [](const SymbolSeq& a, const SymbolSeq& b) { return a == b; })
        .def("__lt__", [](const SymbolSeq& a, const SymbolSeq& b) { return a < b; })
        .def("__hash__", [](const SymbolSeq& s) { return py::hash(py::str(s.to_string())); });

    m.def("shift", &shift);
    m.def("concat", &concat);
    m.def("branch_compose", &branch_compose, "k"_a, "a"_a, "x"_a);
    m.def("psi", &psi, "k"_a, "a"_a);
    m.def("z_value", &z_value, "a"_a, "lam"_a);

    py::class_<Potential>(m, "Potential")
        .def("__call__", &Potential::operator())
        .def("deriv1", &Potential::deriv1)
        .def("deriv2", &Potential::deriv2)
        .def_property_readonly("name", &Potential::name)
        .def_property_readonly("symmetric", &Potential::symmetric)
        .def_property_readonly("sup_norm", &Potential::sup_norm)
        .def_property_readonly("lipschitz", &Potential::lipschitz);
    m.def("parse_potential", &parse_potential, "spec"_a);
    m.def("polynomial", [](std::vector<double> c) { return polynomial(std::move(c)); }, "coeffs"_a);

    py::class_<GridFunction>(m, "GridFunction")
        .def(py::init<std::vector<double>>())
        .def("__call__", &GridFunction::operator())
        .def("__len__", &GridFunction::size)
        .def_property_readonly("values", [](const GridFunction& g) { return to_array(g.values()); })
        .def("max", &GridFunction::max)
        .def("min", &GridFunction::min);

    py::class_<SolveReport>(m, "SolveReport")
        .def_readonly("b", &SolveReport::b)
        .def_readonly("iterations", &SolveReport::iterations)
        .def_readonly("final_residual", &SolveReport::final_residual)
        .def_readonly("lam", &SolveReport::lambda);
    m.def(
        "solve_subaction",
        [](const Potential& a, double lam, int d, std::size_t n, double tol, int jobs) {
            SolveOptions o;
            o.d = d;
            o.n = n;
            o.tol = tol;
            o.jobs = jobs;
            py::gil_scoped_release release;
            return solve_subaction(a, lam, o);
        },
        "a"_a, "lam"_a, "d"_a = 2, "n"_a = 4096, "tol"_a = 1e-10, "jobs"_a = 1);

    py::class_<TurningPoints>(m, "TurningPoints")
        .def_readonly("points", &TurningPoints::points)
        .def_readonly("degenerate", &TurningPoints::degenerate);
    m.def("turning_points", [](const GridFunction& b, const Potential& a, double lam) { return turning_points(b, a, lam); });
    m.def("realizer_change_points",
          [](const GridFunction& b, const Potential& a, double lam, std::size_t n, std::size_t depth) {
              return realizer_change_points(b, a, lam, n, depth);
          },
          "b"_a, "a"_a, "lam"_a, "n"_a = 1024, "depth"_a = 12);
    m.def("realizer",
          [](const GridFunction& b, const Potential& a, double lam, double x0, std::size_t depth) {
              return realizer(b, a, lam, x0, depth).seq;
          },
          "b"_a, "a"_a, "lam"_a, "x0"_a, "depth"_a = 12);
    m.def("rate_at", &rate_at, "b"_a, "a"_a, "lam"_a, "z"_a, "d"_a = 2);

    m.def("s_value", [](const Potential& a, double lam, double x, const SymbolSeq& s) { return s_value(a, lam, x, s).value; });
    m.def("w_value", [](const Potential& a, double lam, double x, const SymbolSeq& s, double xbar) {
        return w_value(a, lam, x, s, xbar).value;
    }, "a"_a, "lam"_a, "x"_a, "seq"_a, "xbar"_a = 0.0);
    m.def("s_deriv", [](const Potential& a, double lam, double x, const SymbolSeq& s) { return s_deriv(a, lam, x, s).value; });
    m.def("crossing_point",
          [](const Potential& a, double lam, const SymbolSeq& s1, const SymbolSeq& s2, double lo, double hi) {
              return crossing_point(a, lam, s1, s2, lo, hi);
          },
          "a"_a, "lam"_a, "s1"_a, "s2"_a, "lo"_a = 0.0, "hi"_a = 1.0);
    m.def("candidates", &candidates, "d"_a, "period_max"_a, "preperiod_max"_a);

    py::class_<EnvelopePiece>(m, "EnvelopePiece")
        .def_readonly("seq", &EnvelopePiece::seq)
        .def_readonly("l", &EnvelopePiece::l)
        .def_readonly("r", &EnvelopePiece::r);
    py::class_<Envelope>(m, "Envelope")
        .def_property_readonly("pieces", &Envelope::pieces)
        .def("switch_points", &Envelope::switch_points)
        .def("value", &Envelope::value)
        .def("calibration_residual", [](const Envelope& e, std::size_t n) { return validate_envelope(e, n).calibration; },
             "n"_a = 4096);
    m.def("envelope", [](const Potential& a, double lam, const std::vector<SymbolSeq>& cands, std::size_t n) {
        return envelope(a, lam, cands, n);
    }, "a"_a, "lam"_a, "cands"_a, "n"_a = 4096);

    py::class_<QuadraticSpec>(m, "QuadraticSpec")
        .def(py::init<double, double, double, double>(), "c0"_a, "c1"_a, "c2"_a, "lam"_a)
        .def("potential", &QuadraticSpec::potential);
    m.def("closed_s_deriv", &closed_s_deriv);
    m.def("twist_predicate", &twist_predicate);
    m.def("closed_crossing", [](const QuadraticSpec& q, const SymbolSeq& a, const SymbolSeq& b) {
        const auto c = closed_crossing(q, a, b);
        return py::make_tuple(c.x, c.inside);
    });
    m.def("explicit_symmetric_subaction", [](double lam) {
        const auto s = explicit_symmetric_subaction(lam);
        return py::dict("b0"_a = s.b0, "b0_printed"_a = s.b0_printed, "b_half"_a = s.b_half, "mismatch"_a = s.mismatch,
                        "piece10"_a = s.piece10, "piece01"_a = s.piece01);
    });

    py::class_<DualEval>(m, "DualEval")
        .def(py::init<Potential, double, double, double>(), "a"_a, "lam"_a, "xbar"_a = 0.0, "tol"_a = 1e-12)
        .def("s_bar", &DualEval::s_bar);
    m.def("dual_potential", &dual_potential);
    m.def("dual_subaction", &dual_subaction);
    m.def("dual_identity_residual", &dual_identity_residual);
    m.def("admissibility_gap", &admissibility_gap);
    m.def("fundamental_relation_residual", &fundamental_relation_residual);

    m.def(
        "iterate_F",
        [](const Potential& a, double lam, std::size_t n, std::size_t burn_in, std::uint64_t seed) {
            IterateOptions o;
            o.n = n;
            o.burn_in = burn_in;
            o.seed = seed;
            const auto c = iterate_F(a, lam, o);
            return py::make_tuple(to_array(c.xs), to_array(c.ss));
        },
        "a"_a, "lam"_a, "n"_a = 4000, "burn_in"_a = 50, "seed"_a = 1);

    m.def("scenario_names", [] {
        std::vector<std::string> out;
        for (const auto& s : scenarios()) out.push_back(s.name);
        return out;
    });
}
