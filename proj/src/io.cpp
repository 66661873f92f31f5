#include "thetakernel/io.hpp"

#include <fstream>

namespace thetakernel {

std::string rational_to_string(const Rational& x) {
  Rational c = x;
  c.canonicalize();
  return c.get_str();
}

Rational rational_from_string(const std::string& s) {
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0) throw InputError("not a rational number: '" + s + "'");
  if (r.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

Json gram_to_json(const GramMatrix& s) {
  return Json{{"size", s.size()}, {"entries", matrix_to_json(s.matrix())}};
}

GramMatrix gram_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("size") || !j.contains("entries"))
    throw InputError("Gram JSON needs \"size\" and \"entries\"");
  if (!j["size"].is_number_integer()) throw InputError("Gram JSON: size must be an integer");
  const auto m = j["size"].get<std::int64_t>();
  const Json& rows = j["entries"];
  if (m < 1 || !rows.is_array() || static_cast<std::int64_t>(rows.size()) != m)
    throw InputError("Gram JSON: entries must be a size x size array");
  IntMatrix s(m, m);
  for (std::int64_t i = 0; i < m; ++i) {
    if (!rows[i].is_array() || static_cast<std::int64_t>(rows[i].size()) != m)
      throw InputError("Gram JSON: row " + std::to_string(i) + " has the wrong length");
    for (std::int64_t k = 0; k < m; ++k) {
      if (!rows[i][k].is_number_integer()) throw InputError("Gram JSON: entries must be integers");
      s(i, k) = rows[i][k].get<std::int64_t>();
    }
  }
  return GramMatrix(std::move(s));
}

GramMatrix read_gram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return gram_from_json(j);
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << '\n';
}

Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json matrix_to_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rational_to_string(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json expansion_to_json(const QExpansion& f) {
  Json coeffs = Json::array();
  for (const auto& [t, a] : f.coefficients)
    coeffs.push_back(Json{{"index_2T", matrix_to_json(t.matrix())}, {"value", rational_to_string(a)}});
  Json j{{"degree", f.degree},
         {"bound", f.bound},
         {"denominator", f.denominator},
         {"prefactor_halves", f.prefactor_halves}};
  if (f.prime != 0) j["prime"] = f.prime;
  if (!f.unit_tag.trivial())
    j["unit_tag"] = Json{{"prime", f.unit_tag.prime},
                         {"exponent", f.unit_tag.exponent},
                         {"det_valuation_parity", f.unit_tag.det_valuation_parity},
                         {"det_unit_character", f.unit_tag.det_unit_character}};
  j["coeffs"] = std::move(coeffs);
  return j;
}

QExpansion expansion_from_json(const Json& j) {
  try {
    QExpansion f;
    f.degree = j.at("degree").get<int>();
    f.bound = j.at("bound").get<std::int64_t>();
    f.denominator = j.value("denominator", std::int64_t{1});
    f.prefactor_halves = j.value("prefactor_halves", std::int64_t{0});
    f.prime = j.value("prime", std::int64_t{0});
    if (j.contains("unit_tag")) {
      const Json& u = j["unit_tag"];
      f.unit_tag = UnitTag{u.at("prime").get<std::int64_t>(), u.at("exponent").get<std::int64_t>(),
                           u.at("det_valuation_parity").get<int>(), u.at("det_unit_character").get<int>()};
    }
    const auto n = static_cast<std::size_t>(f.degree);
    for (const auto& c : j.at("coeffs")) {
      std::vector<std::int64_t> k;
      for (const auto& row : c.at("index_2T"))
        for (const auto& x : row) k.push_back(x.get<std::int64_t>());
      IndexMatrix t(n, std::move(k));
      if (!f.in_bound(t)) throw InputError("expansion JSON: index beyond the bound");
      const Rational v = rational_from_string(c.at("value").get<std::string>());
      if (v != 0) f.coefficients.emplace(std::move(t), v);
    }
    return f;
  } catch (const Json::exception& e) {
    throw InputError(std::string("expansion JSON: ") + e.what());
  }
}

Json certificate_to_json(const KernelCertificate& c) {
  Json j{{"r", c.r}, {"p", c.p}, {"bound", c.bound}, {"verdict", c.pass ? "pass" : "fail"}};
  if (c.witness)
    j["witness"] = Json{{"index_2T", matrix_to_json(c.witness->index.matrix())},
                        {"entry", Json::array({c.witness->row, c.witness->col})},
                        {"value", rational_to_string(c.witness->entry)},
                        {"coefficient", matrix_to_json(c.witness->coefficient)}};
  else
    j["witness"] = nullptr;
  j["nonzero_mod_p"] = c.nonzero_mod_p;
  return j;
}

Json form_to_json(const BinaryForm& f) { return Json::array({f.a, f.b, f.c}); }

Json classgroup_to_json(std::int64_t discriminant) {
  const auto classes = class_representatives(discriminant);
  Json list = Json::array(), ambiguous = Json::array();
  for (const auto& c : classes) {
    list.push_back(Json{{"form", form_to_json(c.form)},
                        {"reduced", c.form.is_reduced()},
                        {"ambiguous", c.ambiguous},
                        {"gl_partner", c.gl_partner ? Json(*c.gl_partner) : Json(nullptr)}});
    if (c.ambiguous) ambiguous.push_back(form_to_json(c.form));
  }
  return Json{{"discriminant", discriminant},
              {"class_number", classes.size()},
              {"classes", std::move(list)},
              {"ambiguous", std::move(ambiguous)}};
}

Json report_to_json(const Report& r) {
  Json j{{"claim", r.claim},
         {"paper_ref", r.ref},
         {"parameters", r.parameters},
         {"verdict", r.pass ? "pass" : "fail"},
         {"bound", r.bound}};
  if (r.witness) j["witness"] = *r.witness;
  if (r.elapsed_ms) j["elapsed_ms"] = *r.elapsed_ms;
  return j;
}

}  // namespace thetakernel
