#ifndef IDFORGE_SERIALIZE_HPP
#define IDFORGE_SERIALIZE_HPP

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "idforge/matrix.hpp"
#include "idforge/prime_field.hpp"
#include "idforge/qsqrt2.hpp"

namespace idforge {

using json = nlohmann::json;

/// Parsed field descriptor: "q-sqrt2", "gfp:103" or "gfp:103:sqrt2=38".
struct FieldSpec {
  bool modular = false;
  std::uint64_t p = 0;
  std::optional<std::uint64_t> root; // explicit sqrt(2) residue, if given

  std::string str() const {
    if (!modular) return "q-sqrt2";
    std::string s = "gfp:" + std::to_string(p);
    if (root) s += ":sqrt2=" + std::to_string(*root);
    return s;
  }

  /// Residue of sqrt(2), computing the smaller root when not pinned.
  std::uint64_t sqrt2() const {
    if (!modular) throw std::logic_error("FieldSpec::sqrt2 on rational field");
    return root ? *root : sqrt2_residue(p);
  }
};

inline FieldSpec parse_field_spec(const std::string& s) {
  if (s == "q-sqrt2") return FieldSpec{};
  if (s.rfind("gfp:", 0) == 0) {
    FieldSpec fs;
    fs.modular = true;
    std::size_t pos = 4;
    std::size_t colon = s.find(':', pos);
    std::string pstr = colon == std::string::npos ? s.substr(pos) : s.substr(pos, colon - pos);
    fs.p = std::stoull(pstr);
    if (colon != std::string::npos) {
      std::string rest = s.substr(colon + 1);
      if (rest.rfind("sqrt2=", 0) != 0)
        throw std::invalid_argument("bad field spec: " + s);
      std::uint64_t r = std::stoull(rest.substr(6));
      GfpField f(fs.p);
      if (f.mul(r % fs.p, r % fs.p) != 2 % fs.p)
        throw std::invalid_argument("field spec root does not square to 2: " + s);
      fs.root = r;
    }
    return fs;
  }
  throw std::invalid_argument("bad field spec: " + s);
}

inline json qsqrt2_to_json(const QSqrt2& x) {
  return json{{"a", x.a.get_str()}, {"b", x.b.get_str()}};
}

inline QSqrt2 qsqrt2_from_json(const json& j) {
  QSqrt2 x;
  x.a = mpq_class(j.at("a").get<std::string>());
  x.b = mpq_class(j.at("b").get<std::string>());
  x.a.canonicalize();
  x.b.canonicalize();
  return x;
}

inline json matrix_to_json(const ExactMatrix<GfpField>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"field", "gfp:" + std::to_string(m.field().modulus())},
              {"rows", m.rows()},
              {"cols", m.cols()},
              {"entries", std::move(rows)}};
}

inline json matrix_to_json(const ExactMatrix<QSqrt2Field>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(qsqrt2_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"field", "q-sqrt2"},
              {"rows", m.rows()},
              {"cols", m.cols()},
              {"entries", std::move(rows)}};
}

inline ExactMatrix<GfpField> gfp_matrix_from_json(const json& j) {
  FieldSpec fs = parse_field_spec(j.at("field").get<std::string>());
  if (!fs.modular) throw std::invalid_argument("expected a gfp matrix");
  GfpField f(fs.p);
  std::size_t rows = j.at("rows"), cols = j.at("cols");
  ExactMatrix<GfpField> m(f, rows, cols);
  const json& e = j.at("entries");
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t c = 0; c < cols; ++c)
      m.at(i, c) = f.from_int(e.at(i).at(c).get<long long>());
  return m;
}

inline ExactMatrix<QSqrt2Field> qsqrt2_matrix_from_json(const json& j) {
  if (j.at("field").get<std::string>() != "q-sqrt2")
    throw std::invalid_argument("expected a q-sqrt2 matrix");
  std::size_t rows = j.at("rows"), cols = j.at("cols");
  ExactMatrix<QSqrt2Field> m(QSqrt2Field{}, rows, cols);
  const json& e = j.at("entries");
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t c = 0; c < cols; ++c)
      m.at(i, c) = qsqrt2_from_json(e.at(i).at(c));
  return m;
}

} // namespace idforge

#endif
