// Operation registry shared by the C API, the CLI and the HTTP service.
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "tribill/common.hpp"

namespace tribill {

using json = nlohmann::json;

enum class ParamType { String, Integer, Number, Boolean };

struct ParamSpec {
    std::string name;
    ParamType type = ParamType::String;
    bool required = false;
    json fallback;  // null when there is no default
    std::string doc;
    std::vector<std::string> choices;  // allowed values for strings, empty if free
};

// body holds the JSON answer; bytes/content_type carry an alternative
// rendering (SVG, PNG) when the request asks for one.
struct Reply {
    json body;
    std::string bytes;
    std::string content_type;
};

struct OpSpec {
    std::string name;
    std::string summary;
    std::vector<ParamSpec> params;
    std::function<Reply(const json&)> run;  // receives validated, defaulted params
};

const std::vector<OpSpec>& operations();
const OpSpec& find_op(const std::string& name);

// Type-checks params against the schema, rejects unknown fields and fills
// defaults. Throws InvalidArgument on any violation.
json validate_params(const OpSpec& op, const json& params);
// Converts string values (query strings, CLI flags) to the schema types.
json coerce_params(const OpSpec& op, const std::map<std::string, std::string>& raw);

// Envelope {op, params, tolerance, format}; unknown fields are rejected. With
// text_params every parameter value is a string converted by coerce_params.
Reply run_request(const json& envelope, bool text_params = false);
Reply run_op(const std::string& op, const json& params);

// Sorted keys, no whitespace, floats with 12 significant digits, non-finite as null.
std::string canonical_json(const json& j);

// HTTP status for an error kind: 400, 422 or 500.
int http_status(ErrorKind kind);
json error_body(ErrorKind kind, const std::string& message);

// OpenAPI 3 description of the GET endpoints.
json openapi();

}  // namespace tribill
