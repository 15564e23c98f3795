#include "zclass/io.hpp"

#include <algorithm>
#include <cctype>

namespace zclass {

namespace {

std::string trim(std::string_view s) {
  auto b = s.begin();
  auto e = s.end();
  while (b != e && std::isspace(static_cast<unsigned char>(*b))) ++b;
  while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1)))) --e;
  return std::string(b, e);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return parts;
}

Json element_to_json(const FieldElement& v) {
  if (v.spec().is_prime()) return v.residue();
  return v.to_string();
}

FieldElement element_from_json(const FieldSpec& field, const Json& j) {
  if (j.is_number_integer()) return FieldElement(field, j.get<std::int64_t>());
  if (j.is_string()) return FieldElement::parse(field, j.get<std::string>());
  throw Error(ErrorCode::parse_error, "matrix entry must be an integer or a string");
}

}  // namespace

TriMatrix parse_matrix_text(const FieldSpec& field, std::string_view text) {
  std::vector<std::vector<FieldElement>> rows;
  for (const std::string& row : split(text, ';')) {
    if (row.empty()) throw Error(ErrorCode::parse_error, "empty row in '" + std::string(text) + "'");
    auto& out = rows.emplace_back();
    for (const std::string& entry : split(row, ',')) out.push_back(FieldElement::parse(field, entry));
  }
  const std::size_t n = rows.size();
  for (const auto& r : rows)
    if (r.size() != n)
      throw Error(ErrorCode::parse_error, "matrix text is not square: '" + std::string(text) + "'");
  if (n < std::size_t(kMinDim) || n > std::size_t(kMaxDim))
    throw Error(ErrorCode::unsupported_dimension, "dimension " + std::to_string(n));
  try {
    return TriMatrix::from_rows(field, rows);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::lower_triangular_position)
      throw Error(ErrorCode::parse_error, e.what());
    throw;
  }
}

std::string format_matrix_text(const TriMatrix& m) {
  std::string out;
  for (int i = 0; i < m.dim(); ++i) {
    if (i) out += ';';
    for (int j = 0; j < m.dim(); ++j) {
      if (j) out += ',';
      out += m.at(i, j).to_string();
    }
  }
  return out;
}

Json matrix_to_json(const TriMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(element_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"n", m.dim()}, {"field", m.field().to_string()}, {"rows", std::move(rows)}};
}

TriMatrix matrix_from_json(const Json& j, std::optional<FieldSpec> default_field) {
  if (!j.is_object() || !j.contains("rows"))
    throw Error(ErrorCode::parse_error, "matrix JSON needs a \"rows\" array");
  FieldSpec field;
  if (j.contains("field"))
    field = FieldSpec::parse(j.at("field").get<std::string>());
  else if (default_field)
    field = *default_field;
  else
    throw Error(ErrorCode::parse_error, "matrix JSON has no \"field\"");
  std::vector<std::vector<FieldElement>> rows;
  for (const Json& row : j.at("rows")) {
    auto& out = rows.emplace_back();
    for (const Json& v : row) out.push_back(element_from_json(field, v));
  }
  if (j.contains("n") && j.at("n").get<std::size_t>() != rows.size())
    throw Error(ErrorCode::parse_error, "\"n\" disagrees with the number of rows");
  return TriMatrix::from_rows(field, rows);
}

std::string canonical_dump(const Json& j) { return j.dump(); }

}  // namespace zclass
