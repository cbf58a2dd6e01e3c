#pragma once

#include <string>

#include "json.hpp"

#include "blockcoh/channels.hpp"

namespace blockcoh {
namespace io {

using json = nlohmann::json;

// File formats. Complex scalars are [re, im] pairs (bare numbers are accepted
// on input); matrices are row-major nested arrays.
//   structure: {"groups": [[0,1],[2,3]]}
//   state:     {"amplitudes": [[re,im], ...]}
//   channel:   {"kraus": [matrix, ...]}
//   density / unitary: {"matrix": matrix}

json load_document(const std::string& path);
void save_document(const std::string& path, const json& doc);

Cx parse_complex(const json& node, const std::string& where);
Vector parse_vector(const json& node, const std::string& where);
Matrix parse_matrix(const json& node, const std::string& where);

BlockStructure parse_structure(const json& doc);
Vector parse_amplitudes(const json& doc);
Matrix parse_square_matrix(const json& doc);
// Validates completeness on load; an incomplete Kraus set is a schema error.
KrausChannel parse_channel(const json& doc, const BlockStructure& s);

json complex_to_json(const Cx& z);
json vector_to_json(const Vector& v);
json matrix_to_json(const Matrix& m);
json structure_to_json(const BlockStructure& s);
json channel_to_json(const KrausChannel& ch);

}  // namespace io
}  // namespace blockcoh
