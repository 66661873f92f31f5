#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "thetakernel/analysis.hpp"
#include "thetakernel/bqf.hpp"
#include "thetakernel/io.hpp"
#include "thetakernel/thetaop.hpp"

namespace py = pybind11;
using namespace thetakernel;

namespace {

using Rows = std::vector<std::vector<std::int64_t>>;

py::object fraction(const Rational& x) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(rational_to_string(x));
}

Rational to_rational(const py::handle& x) { return rational_from_string(py::str(x).cast<std::string>()); }

py::int_ to_int(const Integer& x) { return py::int_(py::module_::import("builtins").attr("int")(x.get_str())); }

GramMatrix gram(const Rows& rows) { return GramMatrix::from_rows(rows); }

Rows rows_of(const IntMatrix& m) {
  Rows out(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

py::tuple index_key(const IndexMatrix& t) {
  py::list rows;
  for (std::size_t i = 0; i < t.size(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < t.size(); ++j) row.append(t(i, j));
    rows.append(py::tuple(row));
  }
  return py::tuple(rows);
}

IndexMatrix index_from(const Rows& rows) {
  std::vector<std::int64_t> k;
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw InputError("index must be square");
    k.insert(k.end(), r.begin(), r.end());
  }
  return IndexMatrix(rows.size(), std::move(k));
}

py::list fraction_matrix(const RationalMatrix& m) {
  py::list rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.append(fraction(m(i, j)));
    rows.append(row);
  }
  return rows;
}

py::dict certificate(const KernelCertificate& c) {
  py::dict d;
  d["r"] = c.r;
  d["p"] = c.p;
  d["bound"] = c.bound;
  d["passed"] = c.pass;
  d["nonzero_mod_p"] = c.nonzero_mod_p;
  if (c.witness) {
    py::dict w;
    w["index_2T"] = index_key(c.witness->index);
    w["entry"] = py::make_tuple(c.witness->row, c.witness->col);
    w["value"] = fraction(c.witness->entry);
    w["coefficient"] = fraction_matrix(c.witness->coefficient);
    d["witness"] = w;
  } else {
    d["witness"] = py::none();
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_thetakernel, m) {
  m.doc() = "Exact theta series, theta operators and mod-p kernel checks";

  static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
  static py::exception<ContractError> contract_error(m, "ContractError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InputError& e) {
      PyErr_SetString(input_error.ptr(), e.what());
    } catch (const ContractError& e) {
      PyErr_SetString(contract_error.ptr(), e.what());
    }
  });

  m.def("legendre", [](std::int64_t a, std::int64_t p) { return legendre(a, p); });
  m.def(
      "hilbert_symbol",
      [](const py::object& a, const py::object& b, std::int64_t place) {
        return hilbert_symbol(to_rational(a), to_rational(b), place == 0 ? Place::infinity() : Place::prime(place));
      },
      py::arg("a"), py::arg("b"), py::arg("place"), "place = 0 means the real place");

  m.def("det_level", [](const Rows& s) {
    const DetLevel dl = det_level(gram(s));
    return py::make_tuple(to_int(dl.determinant), to_int(dl.level));
  });
  m.def("is_p_maximal", [](const Rows& s, std::int64_t p) { return is_p_maximal(gram(s), p); });
  m.def("hasse_witt", [](const Rows& s, std::int64_t place) {
    return hasse_witt(gram(s), place == 0 ? Place::infinity() : Place::prime(place));
  });
  m.def("root_lattice_a", [](std::size_t n) { return rows_of(root_lattice_a(n).matrix()); });
  m.def("root_lattice_e8", [] { return rows_of(root_lattice_e8().matrix()); });
  m.def("p_special_lattice", [](std::int64_t p, int t) { return rows_of(p_special_lattice(p, t).gram.matrix()); });

  m.def("class_number", &class_number);
  m.def("class_representatives", [](std::int64_t d) {
    py::list out;
    for (const auto& c : class_representatives(d)) {
      py::dict e;
      e["form"] = py::make_tuple(c.form.a, c.form.b, c.form.c);
      e["ambiguous"] = c.ambiguous;
      e["gl_partner"] = c.gl_partner ? py::object(py::int_(*c.gl_partner)) : py::object(py::none());
      out.append(e);
    }
    return out;
  });
  m.def("gl_class_representatives", [](std::int64_t d) {
    std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> out;
    for (const auto& f : gl_class_representatives(d)) out.emplace_back(f.a, f.b, f.c);
    return out;
  });
  m.def("binary_form_gram", [](std::int64_t a, std::int64_t b, std::int64_t c) {
    return rows_of(BinaryForm{a, b, c}.gram().matrix());
  });

  py::class_<QExpansion>(m, "Expansion")
      .def_readonly("degree", &QExpansion::degree)
      .def_readonly("bound", &QExpansion::bound)
      .def_readonly("denominator", &QExpansion::denominator)
      .def_readonly("prefactor_halves", &QExpansion::prefactor_halves)
      .def("coefficient", [](const QExpansion& f, const Rows& k) { return fraction(f.coefficient(index_from(k))); },
           "Coefficient at the index given as denominator * 2T")
      .def("coefficients",
           [](const QExpansion& f) {
             py::dict out;
             for (const auto& [t, a] : f.coefficients) out[index_key(t)] = fraction(a);
             return out;
           })
      .def("is_zero", &QExpansion::is_zero)
      .def("to_json", [](const QExpansion& f) { return expansion_to_json(f).dump(); })
      .def("__len__", [](const QExpansion& f) { return f.coefficients.size(); })
      .def("__repr__", [](const QExpansion& f) {
        return "<Expansion degree=" + std::to_string(f.degree) + " bound=" + std::to_string(f.bound) +
               " terms=" + std::to_string(f.coefficients.size()) + ">";
      });

  m.def("theta_series", [](const Rows& s, int degree, std::int64_t bound, bool det) {
    return det ? theta_det_expansion(gram(s), degree, bound) : theta_expansion(gram(s), degree, bound);
  }, py::arg("gram"), py::arg("degree"), py::arg("bound"), py::arg("det") = false);
  m.def("mixed_theta", [](const Rows& s, int degree, int j, std::int64_t bound) {
    return mixed_theta(gram(s), degree, j, bound);
  });
  m.def("slash_cusp", [](const Rows& s, int degree, int j, std::int64_t bound) {
    return slash_cusp(gram(s), degree, j, bound);
  });
  m.def("linear_combination", [](const std::vector<py::object>& coeffs, const std::vector<QExpansion>& series) {
    std::vector<Rational> c;
    for (const auto& x : coeffs) c.push_back(to_rational(x));
    return linear_combination(c, series);
  });
  m.def("dilate", [](const QExpansion& f, std::int64_t p) { return dilate(f, p); });
  m.def("nu_p", [](const QExpansion& f, std::int64_t p) { return nu_p(f, p).to_string(); });

  m.def("kernel_check", [](const QExpansion& f, std::size_t r, std::int64_t p, std::int64_t bound) {
    return certificate(kernel_check(f, r, p, bound));
  });
  m.def("fp_dimension", [](const std::vector<QExpansion>& family, std::int64_t p, std::int64_t bound) {
    return fp_dimension(family, p, bound);
  });
  m.def("km_average", [](const QExpansion& f, std::int64_t d) { return fraction(km_average(f, d)); });
  m.def("km_trace_bound", &km_trace_bound);
  m.def("hermite_class_count", &hermite_class_count);
  m.def("coset_index_d", [](int n, int j, std::int64_t p) { return to_int(coset_index_d(n, j, p)); });
  m.def("witt_identity_check", [](const Rows& s, std::int64_t p, std::int64_t q) {
    const WittReport w = witt_identity_check(gram(s), p, q);
    py::dict d;
    d["legendre_minus_p_q"] = w.legendre_minus_p_q;
    d["s_q"] = w.s_q;
    d["s_infinity"] = w.s_infinity;
    d["s_2"] = w.s_2;
    d["s_p"] = w.s_p;
    d["product"] = w.product;
    d["passed"] = w.pass();
    return d;
  });
  m.def("erratum_h_series", [](std::int64_t p, int n, std::int64_t bound) {
    const ErratumReport r = erratum_h_series(p, n, bound);
    py::dict d;
    py::list weights, cusps;
    for (const auto& w : r.weights) weights.append(fraction(w));
    for (const auto& c : r.cusps) {
      py::dict e;
      e["cusp"] = c.cusp;
      e["constant_term"] = fraction(c.constant_term);
      e["nu_p"] = c.nu.to_string();
      e["passed"] = c.pass();
      cusps.append(e);
    }
    d["weights"] = weights;
    d["h_congruent_to_one"] = r.h_congruent_to_one.pass;
    d["cusps"] = cusps;
    d["passed"] = r.pass();
    return d;
  });
}
