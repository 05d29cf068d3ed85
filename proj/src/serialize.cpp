#include "hitbend/serialize.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace hitbend {

Json to_json(const Rational& q) { return to_pq_string(q); }

Json to_json(const NumberField& field) {
  Json poly = Json::array();
  for (const auto& c : field.min_poly()) poly.push_back(c.get_str());
  return {{"name", field.name()},
          {"min_poly", poly},
          {"embedding", {to_pq_string(field.lo()), to_pq_string(field.hi())}}};
}

Json to_json(const NfElement& e) {
  Json out = Json::array();
  for (const auto& c : e.coeffs()) out.push_back(to_pq_string(c));
  return out;
}

Json to_json(const NfMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return {{"field", to_json(*m.ring().field)}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

Json to_json(const KPoly& f) {
  Json c = Json::array();
  for (const auto& x : f.coeffs()) c.push_back(to_json(x));
  return {{"ring", "K"}, {"field", f.ring().field->name()}, {"coeffs", c}};
}

Json to_json(const ZPoly& f) {
  Json c = Json::array();
  for (const auto& x : f.coeffs()) c.push_back(x.get_str());
  return {{"ring", "Int"}, {"coeffs", c}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  require(j.is_string(), ErrorCode::ParseError, "rational must be a \"p/q\" string");
  return parse_rational(j.get<std::string>());
}

FieldPtr field_from_json(const Json& j) {
  const std::string name = j.value("name", "");
  std::vector<Integer> poly;
  for (const auto& c : j.at("min_poly"))
    poly.emplace_back(c.is_string() ? c.get<std::string>() : std::to_string(c.get<long>()));
  const Rational lo = rational_from_json(j.at("embedding").at(0));
  const Rational hi = rational_from_json(j.at("embedding").at(1));
  // Reuse the shared instances so field identity checks stay cheap.
  for (const auto& known : {NumberField::rationals(), NumberField::q_sqrt2()})
    if (known->min_poly() == poly && known->lo() == lo && known->hi() == hi) return known;
  return NumberField::create(std::move(poly), lo, hi, name);
}

NfElement element_from_json(const Json& j, const FieldPtr& field) {
  std::vector<Rational> c;
  for (const auto& x : j) c.push_back(rational_from_json(x));
  require(static_cast<int>(c.size()) == field->degree(), ErrorCode::ParseError,
          "element has wrong number of coordinates");
  return NfElement(field, std::move(c));
}

NfMatrix matrix_from_json(const Json& j, const FieldPtr& field) {
  KRing ring{field};
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  NfMatrix m(ring, rows, cols);
  const auto& entries = j.at("entries");
  require(entries.size() == rows, ErrorCode::ParseError, "matrix row count mismatch");
  for (std::size_t i = 0; i < rows; ++i) {
    require(entries[i].size() == cols, ErrorCode::ParseError, "matrix column count mismatch");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = element_from_json(entries[i][k], field);
  }
  return m;
}

NfMatrix matrix_from_json(const Json& j) { return matrix_from_json(j, field_from_json(j.at("field"))); }

KPoly kpoly_from_json(const Json& j, const FieldPtr& field) {
  std::vector<NfElement> c;
  for (const auto& x : j.at("coeffs")) c.push_back(element_from_json(x, field));
  return KPoly(KRing{field}, std::move(c));
}

ZPoly zpoly_from_json(const Json& j) {
  std::vector<Integer> c;
  for (const auto& x : j.at("coeffs")) c.emplace_back(x.get<std::string>());
  return ZPoly(std::move(c));
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

std::string content_hash(const Json& j) { return sha256_hex(j.dump()); }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::IoError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    require(out.good(), ErrorCode::IoError, "cannot write " + tmp);
    out << j.dump(1) << "\n";
  }
  require(std::rename(tmp.c_str(), path.c_str()) == 0, ErrorCode::IoError, "cannot rename " + tmp);
}

}  // namespace hitbend
