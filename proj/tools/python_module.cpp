// Python bindings: objects are built from the literal grammar and printed back in it.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli_app.hpp"
#include "qfalg/grammar.hpp"
#include "qfalg/involution.hpp"

namespace py = pybind11;
using namespace qfalg;

namespace {

std::string isotropy_status(const QuadraticForm& q, int height, int degree) {
    OracleOptions o;
    o.search_height = height;
    o.search_degree = degree;
    return to_string(isotropy_oracle(q, o).status);
}

py::object loads(const std::string& s) { return py::module_::import("json").attr("loads")(s); }

}  // namespace

PYBIND11_MODULE(qfalg, m) {
    m.doc() = "Quadratic and hermitian forms, quaternion and etale algebras, involution batteries";

    static py::exception<Error> error(m, "Error", PyExc_ValueError);
    static py::exception<SyntaxError> syntax_error(m, "SyntaxError", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const SyntaxError& e) {
            py::set_error(syntax_error, e.what());
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    py::class_<Field>(m, "Field")
        .def(py::init([](const std::string& s) { return parse_field(s); }), py::arg("literal"))
        .def_property_readonly("characteristic", &Field::characteristic)
        .def("__str__", &Field::literal)
        .def("__eq__", [](const Field& a, const Field& b) { return a == b; });

    py::class_<QuadraticForm>(m, "QuadraticForm")
        .def(py::init([](const std::string& s) { return parse_quadratic(s); }), py::arg("literal"))
        .def_property_readonly("dim", &QuadraticForm::dim)
        .def_property_readonly("field", [](const QuadraticForm& q) { return q.base(); })
        .def("eval", [](const QuadraticForm& q, const std::vector<std::string>& x) {
            Vec v;
            for (const auto& s : x) v.push_back(parse_element(q.base(), s));
            return q.eval(v).to_string();
        })
        .def("__str__", &QuadraticForm::to_string)
        .def("__repr__", [](const QuadraticForm& q) { return "QuadraticForm('" + q.to_string() + "')"; })
        .def("__eq__", [](const QuadraticForm& a, const QuadraticForm& b) { return a == b; });

    py::class_<Algebra>(m, "Algebra")
        .def(py::init([](const std::string& s) { return parse_algebra(s); }), py::arg("literal"))
        .def_property_readonly("dim", &Algebra::dim)
        .def("__str__", &Algebra::literal)
        .def("__eq__", [](const Algebra& a, const Algebra& b) { return a == b; });

    py::class_<HermitianForm>(m, "HermitianForm")
        .def(py::init([](const std::string& s) { return parse_hermitian(s); }), py::arg("literal"))
        .def_property_readonly("dim", &HermitianForm::dim)
        .def_property_readonly("algebra", &HermitianForm::algebra)
        .def("__str__", &HermitianForm::to_string)
        .def("__eq__", [](const HermitianForm& a, const HermitianForm& b) { return a == b; });

    m.def("isotropy", &isotropy_status, py::arg("q"), py::arg("search_height") = 50, py::arg("search_degree") = 2,
          "'witness', 'anisotropic' or 'undecided'");
    m.def("witt_index", [](const QuadraticForm& q) { return witt_decompose(q).witt_index; });
    m.def("is_hyperbolic", [](const QuadraticForm& q) { return is_hyperbolic(q); });
    m.def("isometric", [](const QuadraticForm& a, const QuadraticForm& b) { return isometric(a, b); });
    m.def("pfister_similarity", [](const QuadraticForm& q) { return std::string(to_string(pfister_similarity(q).verdict)); });
    m.def("norm_form", &norm_form);
    m.def("is_split", [](const Algebra& A) { return is_split(A); });
    m.def("is_division", [](const Algebra& A) { return is_division(A); });
    m.def("trace_form", &trace_form);
    m.def("isometric_h", [](const HermitianForm& a, const HermitianForm& b) { return isometric_h(a, b); });
    m.def("is_hyperbolic_h", [](const HermitianForm& h) { return is_hyperbolic_h(h); });

    m.def(
        "run",
        [](const std::vector<std::string>& args) {
            std::vector<std::string> argv{"qfalg"};
            argv.insert(argv.end(), args.begin(), args.end());
            const cli::Outcome o = cli::run(cli::parse_args(argv));
            return py::make_tuple(o.exit_code, loads(o.json.dump()));
        },
        py::arg("args"), "Run one CLI command; returns (exit_code, document).");
}
