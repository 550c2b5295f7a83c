#pragma once

#include "stokes_gauss/stokes.hpp"

#include "json.hpp"

#include <string>
#include <variant>

namespace sg {

using json = nlohmann::json;

inline constexpr const char* tool_version = "0.1.0";
inline constexpr const char* format_version = "1";

struct Report {
    json payload;  // object; always carries tool_version and field
};

struct Document {
    std::variant<StokesMatrices, StokesFiltrations, Report> body;

    std::string kind() const;
    Field field() const;
};

// structural parsing only; mathematical invariants are left to validate()
Document parse_document(const std::string& text);
Document parse_document(const json& doc);
std::string serialize_document(const Document& doc);
json to_json(const Document& doc);

json scalar_to_json(const Scalar& z);
Scalar scalar_from_json(const json& j, const std::string& path);
json matrix_to_json(const Matrix& m);
json subspace_to_json(const Subspace& s);

Report make_report(Field field, json fields);

}  // namespace sg
