#include "bfk/io.hpp"

namespace bfk {

namespace {

const Json& field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object())
        throw JsonError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw JsonError(path, std::string("missing field '") + key + "'");
    return *it;
}

void expect_kind(const Json& j, const char* kind, const std::string& path) {
    const Json& k = field(j, "kind", path);
    if (!k.is_string() || k.get<std::string>() != kind)
        throw JsonError(path + ".kind", std::string("expected \"") + kind + "\"");
}

GroupPtr named_group(const Json& j, const std::string& path) {
    if (!j.is_string())
        throw JsonError(path, "expected a group name");
    try {
        return build_group(j.get<std::string>(), product_cap());
    } catch (const CapExceeded&) {
        throw;
    } catch (const std::exception& e) {
        throw JsonError(path, e.what());
    }
}

std::string group_name(const GroupPtr& g) {
    try {
        return spec_name(g);
    } catch (const GroupError& e) {
        throw JsonError("$", e.what());
    }
}

Json terms_to_json(const Morphism& u) {
    Json terms = Json::array();
    const auto& ambient = *u.ambient();
    for (const auto& [l, c] : u.terms())
        terms.push_back({{"class", ambient.class_of(l)}, {"coeff", integer_to_json(c)}});
    return terms;
}

Vec terms_from_json(const Json& j, std::size_t classes, const std::string& path) {
    if (!j.is_array())
        throw JsonError(path, "expected an array");
    Vec v(classes);
    for (std::size_t t = 0; t < j.size(); ++t) {
        const std::string at = path + "[" + std::to_string(t) + "]";
        const Json& cls = field(j[t], "class", at);
        if (!cls.is_number_integer())
            throw JsonError(at + ".class", "expected an integer");
        const auto idx = cls.get<long long>();
        if (idx < 0 || static_cast<std::size_t>(idx) >= classes)
            throw JsonError(at + ".class", "index " + std::to_string(idx) + " out of range (there are " +
                                               std::to_string(classes) + " classes)");
        v[static_cast<std::size_t>(idx)] += integer_from_json(field(j[t], "coeff", at), at + ".coeff");
    }
    return v;
}

} // namespace

Json integer_to_json(const Integer& n) {
    if (n.fits_slong_p())
        return n.get_si();
    return n.get_str();
}

Integer integer_from_json(const Json& j, const std::string& path) {
    if (j.is_number_integer())
        return Integer(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        Integer out;
        if (out.set_str(j.get<std::string>(), 10) != 0)
            throw JsonError(path, "not a decimal integer");
        return out;
    }
    throw JsonError(path, "expected an integer");
}

Json invariants_to_json(const std::vector<Integer>& invariants) {
    Json out = Json::array();
    for (const auto& d : invariants)
        out.push_back(integer_to_json(d));
    return out;
}

Json matrix_to_json(const Matrix& m) {
    Json out = Json::array();
    for (const auto& row : m.rows)
        out.push_back(invariants_to_json(row));
    return out;
}

Json group_to_json(const GroupPtr& g) {
    return {{"kind", "group"}, {"name", group_name(g)}, {"order", g->order()}, {"prime", g->prime()}};
}

GroupPtr group_from_json(const Json& j, const std::string& path) {
    expect_kind(j, "group", path);
    GroupPtr g = named_group(field(j, "name", path), path + ".name");
    if (auto it = j.find("order"); it != j.end() && (!it->is_number_integer() || it->get<long long>() != g->order()))
        throw JsonError(path + ".order", "does not match the group " + g->name());
    if (auto it = j.find("prime"); it != j.end() && (!it->is_number_integer() || it->get<long long>() != g->prime()))
        throw JsonError(path + ".prime", "does not match the group " + g->name());
    return g;
}

Json burnside_to_json(const Morphism& x) {
    if (x.source()->order() != 1)
        throw JsonError("$", "not an element of a Burnside group");
    return {{"kind", "burnside_element"}, {"group", group_name(x.target())}, {"terms", terms_to_json(x)}};
}

Morphism burnside_from_json(const Json& j, const std::string& path) {
    expect_kind(j, "burnside_element", path);
    GroupPtr g = named_group(field(j, "group", path), path + ".group");
    const Vec v = terms_from_json(field(j, "terms", path), g->subgroup_classes().size(), path + ".terms");
    return Morphism::from_dense(trivial_group(), g, v);
}

Json morphism_to_json(const Morphism& u) {
    return {{"kind", "morphism"},
            {"source", group_name(u.source())},
            {"target", group_name(u.target())},
            {"terms", terms_to_json(u)}};
}

Morphism morphism_from_json(const Json& j, const std::string& path) {
    expect_kind(j, "morphism", path);
    GroupPtr src = named_group(field(j, "source", path), path + ".source");
    GroupPtr tgt = named_group(field(j, "target", path), path + ".target");
    const Morphism proto(src, tgt);
    const Vec v = terms_from_json(field(j, "terms", path), proto.ambient()->subgroup_classes().size(), path + ".terms");
    return Morphism::from_dense(src, tgt, v);
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw JsonError("$", e.what());
    }
}

} // namespace bfk
