#include <algorithm>
#include <limits>

#include <json.hpp>

#include "designlens/frontends.hpp"

namespace designlens {

SchemaError::SchemaError(std::string path, std::string message)
    : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

namespace {

using nlohmann::json;

class SchemaReader {
public:
    SourceUnit read(const json& root, std::string origin) {
        SourceUnit unit;
        unit.origin = std::move(origin);
        expect_object(root, "", {"packages"});
        const auto& packages = member(root, "", "packages");
        expect_array(packages, "packages");
        for (std::size_t i = 0; i < packages.size(); ++i)
            unit.packages.push_back(read_package(packages[i], "packages[" + std::to_string(i) + "]"));
        return unit;
    }

private:
    static std::string join(const std::string& base, std::string_view key) {
        return base.empty() ? std::string(key) : base + "." + std::string(key);
    }

    static void expect_object(const json& value, const std::string& path, std::initializer_list<std::string_view> keys) {
        if (!value.is_object()) throw SchemaError(path.empty() ? "$" : path, "expected an object");
        for (const auto& [key, unused] : value.items()) {
            if (std::find(keys.begin(), keys.end(), key) == keys.end())
                throw SchemaError(join(path, key), "unexpected key");
        }
    }

    static void expect_array(const json& value, const std::string& path) {
        if (!value.is_array()) throw SchemaError(path, "expected an array");
    }

    static const json& member(const json& object, const std::string& path, std::string_view key) {
        auto it = object.find(key);
        if (it == object.end()) throw SchemaError(join(path, key), "missing required field");
        return *it;
    }

    static std::string string_field(const json& object, const std::string& path, std::string_view key) {
        const auto& value = member(object, path, key);
        if (!value.is_string()) throw SchemaError(join(path, key), "expected a string");
        return value.get<std::string>();
    }

    static bool bool_field(const json& object, const std::string& path, std::string_view key) {
        const auto& value = member(object, path, key);
        if (!value.is_boolean()) throw SchemaError(join(path, key), "expected a boolean");
        return value.get<bool>();
    }

    static QualifiedName qualified(const json& value, const std::string& path) {
        if (!value.is_string()) throw SchemaError(path, "expected a \"pkg.Class\" string");
        auto name = QualifiedName::parse(value.get<std::string>());
        if (!name) throw SchemaError(path, "'" + value.get<std::string>() + "' is not of the form pkg.Class");
        return *name;
    }

    static std::vector<QualifiedName> qualified_list(const json& object, const std::string& path,
                                                     std::string_view key) {
        const auto& list = member(object, path, key);
        const std::string here = join(path, key);
        expect_array(list, here);
        std::vector<QualifiedName> names;
        for (std::size_t i = 0; i < list.size(); ++i)
            names.push_back(qualified(list[i], here + "[" + std::to_string(i) + "]"));
        return names;
    }

    PackageDef read_package(const json& value, const std::string& path) {
        expect_object(value, path, {"name", "classes"});
        PackageDef pkg;
        pkg.name = string_field(value, path, "name");
        const auto& classes = member(value, path, "classes");
        expect_array(classes, join(path, "classes"));
        for (std::size_t i = 0; i < classes.size(); ++i)
            pkg.classes.push_back(read_class(classes[i], join(path, "classes") + "[" + std::to_string(i) + "]"));
        return pkg;
    }

    ClassDef read_class(const json& value, const std::string& path) {
        expect_object(value, path, {"name", "abstract", "parents", "attributes", "methods"});
        ClassDef cls;
        cls.name = string_field(value, path, "name");
        cls.is_abstract = bool_field(value, path, "abstract");
        cls.parents = qualified_list(value, path, "parents");

        const auto& attributes = member(value, path, "attributes");
        expect_array(attributes, join(path, "attributes"));
        for (std::size_t i = 0; i < attributes.size(); ++i)
            cls.attributes.push_back(
                read_attribute(attributes[i], join(path, "attributes") + "[" + std::to_string(i) + "]"));

        const auto& methods = member(value, path, "methods");
        expect_array(methods, join(path, "methods"));
        for (std::size_t i = 0; i < methods.size(); ++i)
            cls.methods.push_back(read_method(methods[i], join(path, "methods") + "[" + std::to_string(i) + "]"));
        return cls;
    }

    AttributeDef read_attribute(const json& value, const std::string& path) {
        expect_object(value, path, {"name", "target", "kind"});
        AttributeDef attr;
        attr.name = string_field(value, path, "name");
        const auto& target = member(value, path, "target");
        if (!target.is_null()) attr.target = qualified(target, join(path, "target"));
        const std::string kind = string_field(value, path, "kind");
        if (kind == "association") {
            attr.kind = AttributeKind::association;
        } else if (kind == "aggregation") {
            attr.kind = AttributeKind::aggregation;
        } else if (kind == "none") {
            attr.kind = AttributeKind::none;
        } else {
            throw SchemaError(join(path, "kind"), "expected \"association\", \"aggregation\" or \"none\"");
        }
        if (attr.target.has_value() == (attr.kind == AttributeKind::none))
            throw SchemaError(join(path, "kind"), "kind must be \"none\" exactly when target is null");
        return attr;
    }

    MethodDef read_method(const json& value, const std::string& path) {
        expect_object(value, path, {"name", "abstract", "weight", "reads", "uses"});
        MethodDef method;
        method.name = string_field(value, path, "name");
        method.is_abstract = bool_field(value, path, "abstract");
        const auto& weight = member(value, path, "weight");
        if (!weight.is_number_integer()) throw SchemaError(join(path, "weight"), "expected an integer");
        constexpr auto kMaxWeight = static_cast<std::uint64_t>(std::numeric_limits<int>::max());
        if (weight.is_number_unsigned() ? (weight.get<std::uint64_t>() < 1 || weight.get<std::uint64_t>() > kMaxWeight)
                                        : (weight.get<std::int64_t>() < 1 ||
                                           static_cast<std::uint64_t>(weight.get<std::int64_t>()) > kMaxWeight))
            throw SchemaError(join(path, "weight"), "expected a positive integer");
        method.weight = weight.get<int>();

        const auto& reads = member(value, path, "reads");
        expect_array(reads, join(path, "reads"));
        for (std::size_t i = 0; i < reads.size(); ++i) {
            if (!reads[i].is_string())
                throw SchemaError(join(path, "reads") + "[" + std::to_string(i) + "]", "expected a string");
            method.reads.push_back(reads[i].get<std::string>());
        }
        method.uses = qualified_list(value, path, "uses");
        return method;
    }
};

}  // namespace

SourceUnit read_interchange_declarations(std::string_view document, std::string origin) {
    json root;
    try {
        root = json::parse(document.begin(), document.end());
    } catch (const json::parse_error& e) {
        throw MalformedDocument(e.what());
    }
    return SchemaReader().read(root, std::move(origin));
}

CodeModel read_interchange(std::string_view document, std::string origin) {
    std::vector<SourceUnit> units;
    units.push_back(read_interchange_declarations(document, std::move(origin)));
    return build_model(units);
}

std::string write_interchange(const CodeModel& model) {
    using ordered = nlohmann::ordered_json;
    auto names = [](const std::vector<QualifiedName>& list) {
        ordered out = ordered::array();
        for (const auto& n : list) out.push_back(n.str());
        return out;
    };
    ordered packages = ordered::array();
    for (const auto& pkg : model.packages()) {
        ordered classes = ordered::array();
        for (const auto& cls : pkg.classes) {
            ordered attributes = ordered::array();
            for (const auto& attr : cls.attributes) {
                ordered a;
                a["name"] = attr.name;
                a["target"] = attr.target ? ordered(attr.target->str()) : ordered(nullptr);
                a["kind"] = std::string(to_string(attr.kind));
                attributes.push_back(std::move(a));
            }
            ordered methods = ordered::array();
            for (const auto& method : cls.methods) {
                ordered m;
                m["name"] = method.name;
                m["abstract"] = method.is_abstract;
                m["weight"] = method.weight;
                m["reads"] = method.reads;
                m["uses"] = names(method.uses);
                methods.push_back(std::move(m));
            }
            ordered c;
            c["name"] = cls.name;
            c["abstract"] = cls.is_abstract;
            c["parents"] = names(cls.parents);
            c["attributes"] = std::move(attributes);
            c["methods"] = std::move(methods);
            classes.push_back(std::move(c));
        }
        ordered p;
        p["name"] = pkg.name;
        p["classes"] = std::move(classes);
        packages.push_back(std::move(p));
    }
    ordered root;
    root["packages"] = std::move(packages);
    return root.dump() + "\n";
}

}  // namespace designlens
