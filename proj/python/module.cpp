#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "padic_tate/balls.hpp"
#include "padic_tate/errors.hpp"
#include "padic_tate/field.hpp"
#include "padic_tate/harness.hpp"
#include "padic_tate/lattice.hpp"
#include "padic_tate/parse.hpp"
#include "padic_tate/relations.hpp"
#include "padic_tate/rv.hpp"
#include "padic_tate/series.hpp"
#include "padic_tate/tate.hpp"

namespace py = pybind11;
using namespace padic_tate;

namespace {

// Python ints of any size go through their decimal text.
mpz_class to_mpz(const py::handle& h) { return mpz_class(py::str(h).cast<std::string>()); }
py::int_ to_py(const mpz_class& z) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

IntMatrix matrix_of(const std::vector<std::vector<py::object>>& rows, long cols) {
  IntMatrix M(static_cast<long>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<long>(rows[i].size()) != cols) throw Error(ErrorKind::DimensionMismatch, "ragged matrix");
    for (long j = 0; j < cols; ++j) M(static_cast<long>(i), j) = to_mpz(rows[i][static_cast<std::size_t>(j)]);
  }
  return M;
}

IntMatrix matrix_arg(const std::vector<std::vector<py::object>>& rows, py::object cols) {
  const long c = cols.is_none() ? (rows.empty() ? 0 : static_cast<long>(rows.front().size())) : cols.cast<long>();
  return matrix_of(rows, c);
}

py::list rows_of(const IntMatrix& M) {
  py::list out;
  for (long i = 0; i < M.rows(); ++i) {
    py::list row;
    for (long j = 0; j < M.cols(); ++j) row.append(to_py(M(i, j)));
    out.append(row);
  }
  return out;
}

SubgroupLattice lattice_arg(long n, const std::vector<std::vector<py::object>>& mult,
                            const std::vector<std::vector<py::object>>& ell) {
  auto part = [&](const std::vector<std::vector<py::object>>& rows) {
    if (rows.empty()) return IntMatrix(n, 0);
    if (static_cast<long>(rows.size()) != n) throw Error(ErrorKind::DimensionMismatch, "lattice part needs n rows");
    return matrix_of(rows, static_cast<long>(rows.front().size()));
  };
  return {n, part(mult), part(ell)};
}

py::object point_obj(const TatePoint& P) {
  if (P.is_identity()) return py::none();
  return py::make_tuple(P.x, P.y);
}

TatePoint point_arg(const py::object& o) {
  if (o.is_none()) return TatePoint::identity();
  const auto xy = o.cast<std::pair<Element, Element>>();
  return TatePoint::affine(xy.first, xy.second);
}

py::dict assertion_dict(const Assertion& a) {
  py::dict d;
  d["suite"] = a.suite;
  d["assertion"] = a.name;
  d["trial"] = a.trial;
  d["ok"] = a.ok;
  d["residual_valuation"] = a.residual;
  d["prec"] = a.prec;
  d["outcome"] = a.outcome;
  d["detail"] = a.detail;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "p-adic fields, Tate curves, ball and lattice calculus";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> padic_error;
  padic_error.call_once_and_store_result(
      [&]() { return py::object(py::exception<Error>(m, "PadicError", PyExc_ValueError)); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object& type = padic_error.get_stored();
      py::object exc = type(e.what());
      exc.attr("kind") = std::string(error_kind_name(e.kind()));
      exc.attr("precision_error") = is_precision_error(e.kind());
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  py::class_<FieldDescriptor, std::shared_ptr<FieldDescriptor>>(m, "Field")
      .def(py::init([](long p, const std::string& spec) {
             return std::const_pointer_cast<FieldDescriptor>(make_field(p, spec));
           }),
           py::arg("p"), py::arg("spec") = "base")
      .def_property_readonly("p", &FieldDescriptor::p)
      .def_property_readonly("e", &FieldDescriptor::e)
      .def_property_readonly("f", &FieldDescriptor::f)
      .def_property_readonly("spec", &FieldDescriptor::spec_string)
      .def("__eq__", [](const FieldDescriptor& a, const FieldDescriptor& b) { return a == b; })
      .def("__repr__", &FieldDescriptor::describe);

  py::class_<Element>(m, "Element")
      .def(py::init([](const std::shared_ptr<FieldDescriptor>& F, const std::string& literal, long prec) {
             return parse_element(literal, F, prec);
           }),
           py::arg("field"), py::arg("literal"), py::arg("prec"))
      .def_property_readonly("abs_prec", &Element::abs_prec)
      .def_property_readonly("rel_prec", &Element::rel_prec)
      .def_property_readonly("shift", &Element::shift)
      .def("is_zero", &Element::is_zero)
      .def("valuation", [](const Element& x) { return x.valuation().to_string(); })
      .def("inverse", &Element::inverse)
      .def("with_prec", &Element::with_prec)
      .def("lift", &Element::lift)
      .def("agrees", [](const Element& a, const Element& b) { return agree(a, b); })
      .def("literal", &Element::to_literal)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__pow__", &Element::pow)
      .def("__str__", &Element::to_string)
      .def("__repr__", [](const Element& x) { return "Element(" + x.to_string() + ")"; });

  m.def("exp", py::overload_cast<const Element&>(&p_exp), py::arg("x"));
  m.def("log", py::overload_cast<const Element&>(&p_log), py::arg("y"));

  py::class_<TateCurve>(m, "TateCurve")
      .def(py::init([](const Element& q, long slack) { return curve_coefficients(q, slack); }), py::arg("q"),
           py::arg("slack") = 10)
      .def_readonly("q", &TateCurve::q)
      .def_readonly("a4", &TateCurve::a4)
      .def_readonly("a6", &TateCurve::a6)
      .def_readonly("prec", &TateCurve::prec)
      .def("j", &j_invariant)
      .def("phi", [](const TateCurve& C, const Element& u) { return point_obj(phi(C, u)); }, py::arg("u"))
      .def(
          "add",
          [](const TateCurve& C, const py::object& P, const py::object& Q) {
            return point_obj(curve_add(C, point_arg(P), point_arg(Q)));
          },
          py::arg("P"), py::arg("Q"))
      .def(
          "residual", [](const TateCurve& C, const py::object& P) { return curve_residual(C, point_arg(P)); },
          py::arg("P"))
      .def(
          "verify_ode", [](const TateCurve& C, const Element& u) { return verify_ode(C, u).to_string(); },
          py::arg("u"))
      .def(
          "verify_derivative_relation",
          [](const TateCurve& C, const Element& u) { return verify_derivative_relation(C, u).to_string(); },
          py::arg("u"));

  m.def(
      "verify_homomorphism",
      [](const Element& q, const Element& u1, const Element& u2, long prec, long target, long slack) {
        const HomomorphismCheck h = verify_homomorphism(q, u1, u2, prec, target, slack);
        py::dict d;
        d["ok"] = h.ok;
        d["disagrees"] = h.disagrees;
        d["both_identity"] = h.both_identity;
        d["residual_digits"] = h.residual_digits;
        d["working_prec"] = h.working_prec;
        return d;
      },
      py::arg("q"), py::arg("u1"), py::arg("u2"), py::arg("prec"), py::arg("target"), py::arg("slack") = 10);

  m.def(
      "ball_next",
      [](const std::vector<Element>& C, const std::string& lambda, const Element& x) {
        const Ball b = ball_next(C, Rational::parse(lambda), x);
        return py::make_tuple(b.center, b.radius.to_string());
      },
      py::arg("C"), py::arg("lambda_"), py::arg("x"));
  m.def(
      "same_ball",
      [](const std::vector<Element>& C, const std::string& lambda, const Element& x, const Element& y) {
        return same_ball(C, Rational::parse(lambda), x, y);
      },
      py::arg("C"), py::arg("lambda_"), py::arg("x"), py::arg("y"));
  m.def(
      "rv_class",
      [](const Element& x, const std::string& lambda) {
        const RVClass k = rv_class(x, Rational::parse(lambda));
        return py::make_tuple(k.valuation.to_string(), k.leading_digits);
      },
      py::arg("x"), py::arg("lambda_"));

  m.def(
      "smith_normal_form",
      [](const std::vector<std::vector<py::object>>& rows, py::object cols) {
        const SmithForm S = smith_normal_form(matrix_arg(rows, cols));
        py::dict d;
        d["U"] = rows_of(S.U);
        d["D"] = rows_of(S.D);
        d["V"] = rows_of(S.V);
        d["rank"] = S.rank;
        py::list inv;
        for (const auto& z : S.invariants) inv.append(to_py(z));
        d["invariants"] = inv;
        return d;
      },
      py::arg("rows"), py::arg("cols") = py::none());
  m.def(
      "kernel",
      [](const std::vector<std::vector<py::object>>& rows, py::object cols) {
        return rows_of(kernel_lattice(matrix_arg(rows, cols)));
      },
      py::arg("rows"), py::arg("cols") = py::none(), "Saturated kernel basis as the columns of the result.");
  m.def(
      "rank", [](const std::vector<std::vector<py::object>>& rows, py::object cols) {
        return rank(matrix_arg(rows, cols));
      },
      py::arg("rows"), py::arg("cols") = py::none());

  m.def(
      "rotund_check",
      [](long n, const std::vector<std::vector<py::object>>& mult, const std::vector<std::vector<py::object>>& ell,
         long height) {
        const RotundVerdict v = rotund_check(lattice_arg(n, mult, ell), height);
        py::dict d;
        d["refuted"] = v.refuted;
        d["witness"] = v.witness ? py::object(rows_of(*v.witness)) : py::object(py::none());
        d["checked"] = v.matrices_checked;
        return d;
      },
      py::arg("n"), py::arg("mult"), py::arg("ell"), py::arg("height") = 2);
  m.def("atypical", &atypical, py::arg("dim_X"), py::arg("dim_V"), py::arg("dim_W"), py::arg("dim_Z"));

  auto report = [](const RelationReport& r) {
    py::dict d;
    d["relations"] = r.relations;
    d["candidates"] = r.candidates;
    d["precision"] = r.precision;
    d["false_positive_bound"] = r.false_positive_bound;
    return d;
  };
  m.def(
      "relation_search",
      [report](const std::vector<Element>& z, long height, long slack) {
        return report(relation_search(z, height, slack));
      },
      py::arg("z"), py::arg("height") = 10, py::arg("slack") = 10);
  m.def(
      "mult_dependence",
      [report](const Element& q, const std::vector<Element>& u, long height, long slack) {
        return report(mult_dependence_mod_kernel(q, u, height, slack));
      },
      py::arg("q"), py::arg("u"), py::arg("height") = 5, py::arg("slack") = 10);

  m.def("suite_names", &suite_names);
  m.def(
      "run_suite",
      [](const std::string& suite, long p, long prec, const std::string& ext, std::uint64_t seed, long slack,
         long trials, int threads, bool doubled) {
        RunConfig c;
        c.p = p;
        c.prec = prec;
        c.ext = ext;
        c.seed = seed;
        c.slack = slack;
        c.trials = trials;
        c.threads = threads;
        validate(c);
        SuiteReport r;
        {
          py::gil_scoped_release release;
          r = doubled ? doubled_precision_check(suite, c) : run_suite(suite, c);
        }
        py::list out;
        for (const auto& a : r.assertions) out.append(assertion_dict(a));
        return out;
      },
      py::arg("suite"), py::arg("p") = 5, py::arg("prec") = 40, py::arg("ext") = "base", py::arg("seed") = 0,
      py::arg("slack") = 10, py::arg("trials") = 0, py::arg("threads") = 1, py::arg("doubled") = false);

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int status;
        {
          py::gil_scoped_release release;
          status = cli::dispatch(args, out, err);
        }
        return py::make_tuple(status, out.str(), err.str());
      },
      py::arg("args"), "Runs the padic-tate command line; returns (status, stdout, stderr).");
}
