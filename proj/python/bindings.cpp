#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rsrepair/bounds.hpp"
#include "rsrepair/constructions.hpp"
#include "rsrepair/report.hpp"

namespace py = pybind11;
using namespace rsrepair;

namespace {

RepairScheme make_scheme(u64 p, std::size_t k, std::vector<u64> points, std::size_t failed,
                         std::vector<std::size_t> helpers, const std::vector<u64>& gammas, u64 t) {
    const PrimeField F(p);
    std::vector<Element> g;
    for (u64 x : gammas) g.push_back(F.from_residue(x));
    return RepairScheme(RSCode(F, k, std::move(points)), failed, std::move(helpers), std::move(g), t);
}

std::vector<u64> residues(const std::vector<Element>& xs) {
    std::vector<u64> out;
    for (const auto& x : xs) out.push_back(x.value());
    return out;
}

py::dict validation_dict(const SchemeValidation& v) {
    py::dict d;
    d["valid"] = v.valid;
    d["candidates"] = v.candidates;
    if (v.counterexample) {
        d["counterexample"] = v.counterexample->coeffs();
    } else {
        d["counterexample"] = py::none();
    }
    return d;
}

py::dict calibration_dict(const CalibrationResult& c) {
    py::dict d;
    d["t"] = c.t;
    d["per_helper_bits"] = c.per_helper_bits;
    d["valid"] = c.valid;
    d["budget_capped"] = c.budget_capped;
    return d;
}

std::vector<HelperMessage> to_messages(const RepairScheme& s, const std::vector<u64>& cells) {
    if (cells.size() != s.d()) throw std::invalid_argument("need one cell index per helper");
    std::vector<HelperMessage> out;
    for (std::size_t j = 0; j < cells.size(); ++j) out.push_back({s.helpers()[j], cells[j]});
    return out;
}

py::object parse_json(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Nonlinear repair of prime-field Reed-Solomon codes";

    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<RepairError>(m, "RepairError", PyExc_RuntimeError);

    py::class_<RepairScheme>(m, "Scheme")
        .def(py::init(&make_scheme), py::arg("p"), py::arg("k"), py::arg("points"), py::arg("failed"),
             py::arg("helpers"), py::arg("gammas"), py::arg("t"))
        .def_property_readonly("p", &RepairScheme::p)
        .def_property_readonly("k", &RepairScheme::k)
        .def_property_readonly("d", &RepairScheme::d)
        .def_property_readonly("t", &RepairScheme::t)
        .def_property_readonly("s", &RepairScheme::s)
        .def_property_readonly("failed", &RepairScheme::failed)
        .def_property_readonly("helpers", &RepairScheme::helpers)
        .def_property_readonly("points", [](const RepairScheme& s) { return s.code().points(); })
        .def_property_readonly("gammas", [](const RepairScheme& s) { return residues(s.gammas()); })
        .def_property_readonly("per_helper_bits", &RepairScheme::per_helper_bits)
        .def_property_readonly("total_bits", &RepairScheme::total_bits)
        .def("with_t", &RepairScheme::with_t)
        .def("__repr__", [](const RepairScheme& s) {
            return "<Scheme p=" + std::to_string(s.p()) + " k=" + std::to_string(s.k()) + " d=" +
                   std::to_string(s.d()) + " t=" + std::to_string(s.t()) + ">";
        });

    m.def(
        "toy", [](u64 p) { return toy_code_and_schemes(p).schemes; }, py::arg("p"),
        "The four schemes of the [4, 2] toy code, one per failed node.");
    m.def(
        "halved",
        [](std::size_t n, std::size_t k, std::size_t d, u64 p, std::size_t failed, std::vector<std::size_t> helpers,
           std::optional<u64> t, u64 budget) {
            const auto hc = halved_code(n, k, d, p);
            const u64 chosen = t ? *t : calibrate_t(hc, failed, helpers, {budget}).t;
            return halved_scheme(hc, failed, std::move(helpers), chosen);
        },
        py::arg("n"), py::arg("k"), py::arg("d"), py::arg("p"), py::arg("failed"), py::arg("helpers"),
        py::arg("t") = py::none(), py::arg("budget") = 10'000'000,
        "Halved-construction scheme; t is calibrated when omitted.");
    m.def(
        "validate", [](const RepairScheme& s, u64 budget) { return validation_dict(validate_scheme(s, {budget})); },
        py::arg("scheme"), py::arg("budget") = 10'000'000);
    m.def(
        "calibrate", [](const RepairScheme& s, u64 budget) { return calibration_dict(calibrate_scheme_t(s, {budget})); },
        py::arg("scheme"), py::arg("budget") = 10'000'000);
    m.def(
        "messages",
        [](const RepairScheme& s, const std::vector<u64>& helper_values) {
            std::vector<u64> cells;
            for (const auto& msg : helper_messages(s, helper_values)) cells.push_back(msg.cell);
            return cells;
        },
        py::arg("scheme"), py::arg("helper_values"), "Cell index each helper sends, given its stored value.");
    m.def(
        "repair",
        [](const RepairScheme& s, const std::vector<u64>& cells, u64 budget) {
            return repair(s, to_messages(s, cells), {budget}).value();
        },
        py::arg("scheme"), py::arg("cells"), py::arg("budget") = 10'000'000);
    m.def(
        "encode",
        [](const RepairScheme& s, std::vector<u64> coeffs) {
            return encode(s.code(), Polynomial(s.code().field(), std::move(coeffs))).values;
        },
        py::arg("scheme"), py::arg("coefficients"));
    m.def(
        "bounds",
        [](u64 p, std::size_t n, std::size_t k, std::size_t d, u64 t, std::size_t ell) {
            return parse_json(report_json(make_report(p, n, k, d, t, ell)).dump());
        },
        py::arg("p"), py::arg("n"), py::arg("k"), py::arg("d"), py::arg("t"), py::arg("ell") = 1);
    m.def("improved_bound_consistency", py::overload_cast<u64, u64, std::size_t, std::size_t>(&improved_bound_consistency),
          py::arg("s"), py::arg("p"), py::arg("k"), py::arg("d"));
    m.def(
        "search",
        [](std::size_t n, std::size_t d, u64 p, u64 t, u64 trials, u64 seed, unsigned workers) {
            const auto r = search_k2(n, d, p, t, trials, seed, {}, workers);
            py::dict out;
            out["trials"] = r.trials;
            out["valid_count"] = r.valid_count;
            out["fraction"] = r.fraction;
            out["valid_sets"] = r.valid_sets;
            return out;
        },
        py::arg("n"), py::arg("d"), py::arg("p"), py::arg("t"), py::arg("trials"), py::arg("seed"),
        py::arg("workers") = 1);
    m.def(
        "run",
        [](const std::string& command, py::kwargs kwargs) {
            const auto cmd = parse_command(command);
            if (!cmd) throw std::invalid_argument("unknown command: " + command);
            RunConfig c;
            c.command = *cmd;
            for (auto [key, value] : kwargs) {
                const auto name = key.cast<std::string>();
                if (name == "p") c.p = value.cast<u64>();
                else if (name == "n") c.n = value.cast<std::size_t>();
                else if (name == "k") c.k = value.cast<std::size_t>();
                else if (name == "d") c.d = value.cast<std::size_t>();
                else if (name == "t") c.t = value.cast<u64>();
                else if (name == "delta") c.delta = value.cast<u64>();
                else if (name == "xi") c.xi = value.cast<double>();
                else if (name == "eps") c.eps = value.cast<double>();
                else if (name == "calibrate") c.calibrate = value.cast<bool>();
                else if (name == "ell") c.ell = value.cast<std::size_t>();
                else if (name == "trials") c.trials = value.cast<u64>();
                else if (name == "seed") c.seed = value.cast<u64>();
                else if (name == "samples") c.samples = value.cast<std::size_t>();
                else if (name == "workers") c.workers = value.cast<unsigned>();
                else if (name == "budget") c.budget = value.cast<u64>();
                else throw std::invalid_argument("unknown option: " + name);
            }
            RunResult r;
            {
                py::gil_scoped_release release;
                r = run(c);
            }
            return py::make_tuple(r.exit_code, parse_json(emit(r.report, Format::Json)));
        },
        py::arg("command"), "Run a CLI command; returns (exit_code, report).");
}
