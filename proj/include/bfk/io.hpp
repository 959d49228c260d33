#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bfk/biset.hpp"
#include "bfk/zlin.hpp"

namespace bfk {

using Json = nlohmann::ordered_json;

/// Schema violation; what() starts with the JSON path, e.g. "$.terms[2].class".
class JsonError : public std::invalid_argument {
public:
    JsonError(const std::string& path, const std::string& msg) : std::invalid_argument(path + ": " + msg), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

Json integer_to_json(const Integer& n); // number when it fits in a long, else decimal string
Integer integer_from_json(const Json& j, const std::string& path);
Json invariants_to_json(const std::vector<Integer>& invariants);
Json matrix_to_json(const Matrix& m);

/// {"kind":"group","name":...,"order":...,"prime":...}
Json group_to_json(const GroupPtr& g);
GroupPtr group_from_json(const Json& j, const std::string& path = "$");

/// {"kind":"burnside_element","group":...,"terms":[{"class":i,"coeff":n},...]}
Json burnside_to_json(const Morphism& x);
Morphism burnside_from_json(const Json& j, const std::string& path = "$");

/// {"kind":"morphism","source":...,"target":...,"terms":[{"class":i,"coeff":n},...]}
/// Class indices refer to the subgroup classes of target x source.
Json morphism_to_json(const Morphism& u);
Morphism morphism_from_json(const Json& j, const std::string& path = "$");

/// Parses text, reporting syntax errors as JsonError at "$".
Json parse_json(const std::string& text);

} // namespace bfk
