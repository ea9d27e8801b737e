#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "commucount/cli/app.hpp"
#include "commucount/cli/result.hpp"
#include "commucount/count2.hpp"
#include "commucount/divisor.hpp"
#include "commucount/oracle.hpp"
#include "commucount/padic.hpp"
#include "commucount/rank3.hpp"

namespace py = pybind11;
using namespace commucount;

namespace {

py::int_ to_py(const ExactCount& x) { return py::int_(py::str(to_decimal(x))); }

py::object to_py(const ExactRatio& x) {
    static const py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_py(ExactCount(x.get_num())), to_py(ExactCount(x.get_den())));
}

WorkBudget budget_of(std::uint64_t states) { return WorkBudget{states}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact counts of commuting integer matrix pairs";
    m.attr("__version__") = cli::kVersion;

    auto error = py::register_exception<Error>(m, "Error");
    py::register_exception<InvalidInput>(m, "InvalidInput", error);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error);
    py::register_exception<NotPrime>(m, "NotPrime", error);
    py::register_exception<UnsupportedDimension>(m, "UnsupportedDimension", error);

    const std::uint64_t kBudget = WorkBudget::kDefault;

    m.def(
        "count_commuting_2x2",
        [](std::int64_t n, std::uint64_t budget) { return to_py(count_commuting_2x2(BoxParam(n), budget_of(budget))); },
        py::arg("n"), py::arg("budget") = kBudget);
    m.def(
        "gamma_split",
        [](std::int64_t n, std::uint64_t budget) {
            const GammaSplit s = gamma_split(BoxParam(n), budget_of(budget));
            return py::make_tuple(to_py(s.degenerate), to_py(s.nondegenerate));
        },
        py::arg("n"), py::arg("budget") = kBudget);
    m.def(
        "brute_commuting_count",
        [](int d, std::int64_t n, std::uint64_t budget) {
            return to_py(oracle::brute_commuting_count(d, BoxParam(n), budget_of(budget)));
        },
        py::arg("d"), py::arg("n"), py::arg("budget") = kBudget);
    m.def("r_value", [](std::int64_t n, std::int64_t h) { return to_py(r_value(BoxParam(n), h)); }, py::arg("n"),
          py::arg("h"));
    m.def(
        "r_zero", [](std::int64_t n, std::uint64_t budget) { return to_py(r_zero(BoxParam(n), budget_of(budget))); },
        py::arg("n"), py::arg("budget") = kBudget);
    m.def(
        "moment",
        [](std::int64_t n, unsigned k, std::uint64_t budget) {
            return to_py(moment(BoxParam(n), k, budget_of(budget)));
        },
        py::arg("n"), py::arg("k"), py::arg("budget") = kBudget);
    m.def("fast_padic_count", [](std::uint64_t p, unsigned n) { return to_py(fast_padic_count(PadicParams(p, n))); },
          py::arg("p"), py::arg("n"));
    m.def("main_term", [](std::uint64_t p, unsigned n) { return to_py(theorem13_main(PadicParams(p, n))); },
          py::arg("p"), py::arg("n"));
    m.def("sigma_p", [](std::uint64_t p) { return to_py(sigma_p(p)); }, py::arg("p"));
    m.def("lower_bound_certificate", [](int d, std::int64_t n) { return to_py(lower_bound_certificate(d, BoxParam(n))); },
          py::arg("d"), py::arg("n"));
    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
