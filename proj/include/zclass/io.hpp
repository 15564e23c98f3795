#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "zclass/trimatrix.hpp"

namespace zclass {

using Json = nlohmann::json;

/// "1,1,0;0,1,0;0,0,1": rows separated by ';', entries by ','. Entries below
/// the diagonal must be 0. Whitespace around entries is ignored.
TriMatrix parse_matrix_text(const FieldSpec& field, std::string_view text);
std::string format_matrix_text(const TriMatrix& m);

/// {"n": 3, "field": "F5", "rows": [[...], ...]}. Residues are written as
/// integers, rationals as "num/den" strings.
Json matrix_to_json(const TriMatrix& m);
/// Accepts integer or string entries. `default_field` is used when the
/// object carries no "field" key.
TriMatrix matrix_from_json(const Json& j, std::optional<FieldSpec> default_field = std::nullopt);

/// Compact serialization with sorted keys and no insignificant whitespace.
std::string canonical_dump(const Json& j);

}  // namespace zclass
