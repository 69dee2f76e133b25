#pragma once

// Geometry configuration documents and tabulated σ files.
//
// Config (JSON):
//   {"type": "euclidean", "dimension": 3}
//   {"type": "distorted", "base": {...}, "d": 0.1}
//   {"type": "region", "vertices": [[0,0], [1,0], [1,1], [0,1]]}
//   {"type": "sphere", "radius": 1}
//   {"type": "tabulated", "path": "g.csv", "names": ["a", "b"]}   // names optional
//
// Tabulated file (CSV): optional first line "n=<count>", then n rows of n
// comma-separated σ values (length², not distances).

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tgeom/core_types.hpp"
#include "tgeom/geometries.hpp"
#include "tgeom/polygon_region.hpp"
#include "tgeom/world_function.hpp"

namespace tgeom {

/// Malformed configuration or data file.
class ConfigError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline bool parse_real(const std::string& text, double& out) {
    const std::string t = trim(text);
    if (t.empty()) return false;
    errno = 0;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size() && errno != ERANGE && std::isfinite(out);
}

inline std::string field_path(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

inline const nlohmann::json& require_field(const nlohmann::json& obj, const std::string& prefix,
                                           const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError("config: missing field '" + field_path(prefix, key) + "'");
    return *it;
}

inline double require_number(const nlohmann::json& obj, const std::string& prefix, const std::string& key) {
    const auto& v = require_field(obj, prefix, key);
    if (!v.is_number()) throw ConfigError("config: field '" + field_path(prefix, key) + "' must be a number");
    return v.get<double>();
}

inline void reject_unknown_fields(const nlohmann::json& obj, const std::string& prefix,
                                  const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw ConfigError("config: unknown field '" + field_path(prefix, it.key()) + "'");
        }
    }
}

}  // namespace detail

/// Reads a tabulated σ file. Errors name the offending line.
inline std::vector<std::vector<double>> read_sigma_csv(std::istream& in, const std::string& source = "csv") {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    long declared = -1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        if (rows.empty() && declared < 0 && t.rfind("n=", 0) == 0) {
            double n = 0.0;
            if (!detail::parse_real(t.substr(2), n) || n < 1 || n != std::floor(n)) {
                throw ConfigError(source + ":" + std::to_string(line_no) + ": bad header '" + t + "'");
            }
            declared = static_cast<long>(n);
            continue;
        }
        std::vector<double> row;
        std::stringstream cells(t);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(cells, cell, ',')) {
            ++col;
            double value = 0.0;
            if (!detail::parse_real(cell, value)) {
                throw ConfigError(source + ":" + std::to_string(line_no) + ": column " + std::to_string(col) +
                                  ": not a finite number '" + detail::trim(cell) + "'");
            }
            row.push_back(value);
        }
        if (!t.empty() && t.back() == ',') {
            throw ConfigError(source + ":" + std::to_string(line_no) + ": trailing comma");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ConfigError(source + ": no data rows");
    if (declared >= 0 && static_cast<std::size_t>(declared) != rows.size()) {
        throw ConfigError(source + ": header declares n=" + std::to_string(declared) + " but found " +
                          std::to_string(rows.size()) + " rows");
    }
    return rows;
}

inline std::vector<std::vector<double>> read_sigma_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    return read_sigma_csv(in, path.string());
}

/// Writes `table` with a "n=" header and round-trip precision.
inline void write_sigma_csv(std::ostream& out, const SigmaMatrix& table) {
    out << "n=" << table.size() << "\n";
    char buf[32];
    for (std::size_t i = 0; i < table.size(); ++i) {
        for (std::size_t k = 0; k < table.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", table(i, k));
            if (k) out << ",";
            out << buf;
        }
        out << "\n";
    }
}

inline void write_sigma_csv_file(const std::filesystem::path& path, const SigmaMatrix& table) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    write_sigma_csv(out, table);
}

/// Builds a geometry from a parsed config node; `prefix` is the field path
/// used in diagnostics.
inline WorldFunction geometry_from_json(const nlohmann::json& node, const std::filesystem::path& base_dir,
                                        const std::string& prefix = "") {
    if (!node.is_object()) {
        throw ConfigError("config: '" + (prefix.empty() ? std::string("<root>") : prefix) +
                          "' must be an object");
    }
    const auto& type_node = detail::require_field(node, prefix, "type");
    if (!type_node.is_string()) {
        throw ConfigError("config: field '" + detail::field_path(prefix, "type") + "' must be a string");
    }
    const std::string type = type_node.get<std::string>();

    auto wrap = [&](auto&& build) -> WorldFunction {
        try {
            return build();
        } catch (const ConfigError&) {
            throw;
        } catch (const InvalidArgument& e) {
            throw ConfigError("config: " + (prefix.empty() ? std::string("<root>") : prefix) + ": " + e.what());
        }
    };

    if (type == "euclidean") {
        detail::reject_unknown_fields(node, prefix, {"type", "dimension"});
        const auto& dim = detail::require_field(node, prefix, "dimension");
        if (!dim.is_number_integer() || dim.get<long long>() < 1) {
            throw ConfigError("config: field '" + detail::field_path(prefix, "dimension") +
                              "' must be a positive integer");
        }
        return euclidean_sigma(dim.get<std::size_t>());
    }
    if (type == "distorted") {
        detail::reject_unknown_fields(node, prefix, {"type", "base", "d"});
        WorldFunction base = geometry_from_json(detail::require_field(node, prefix, "base"), base_dir,
                                                detail::field_path(prefix, "base"));
        const double d = detail::require_number(node, prefix, "d");
        if (d < 0.0) throw ConfigError("config: field '" + detail::field_path(prefix, "d") + "' must be >= 0");
        return wrap([&] { return distorted_sigma(base, {d}); });
    }
    if (type == "region") {
        detail::reject_unknown_fields(node, prefix, {"type", "vertices"});
        const auto& verts = detail::require_field(node, prefix, "vertices");
        const std::string where = detail::field_path(prefix, "vertices");
        if (!verts.is_array()) throw ConfigError("config: field '" + where + "' must be an array");
        RegionSpec spec;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            const auto& v = verts[i];
            if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
                throw ConfigError("config: field '" + where + "[" + std::to_string(i) +
                                  "]' must be a pair [x, y]");
            }
            spec.vertices.push_back({v[0].get<double>(), v[1].get<double>()});
        }
        return wrap([&] { return polygon_region_sigma(spec); });
    }
    if (type == "sphere") {
        detail::reject_unknown_fields(node, prefix, {"type", "radius"});
        const double radius = detail::require_number(node, prefix, "radius");
        if (!(radius > 0.0)) {
            throw ConfigError("config: field '" + detail::field_path(prefix, "radius") + "' must be > 0");
        }
        return wrap([&] { return sphere_sigma(radius); });
    }
    if (type == "tabulated") {
        detail::reject_unknown_fields(node, prefix, {"type", "path", "names"});
        const auto& path_node = detail::require_field(node, prefix, "path");
        if (!path_node.is_string()) {
            throw ConfigError("config: field '" + detail::field_path(prefix, "path") + "' must be a string");
        }
        std::vector<std::string> names;
        if (auto it = node.find("names"); it != node.end()) {
            if (!it->is_array()) {
                throw ConfigError("config: field '" + detail::field_path(prefix, "names") + "' must be an array");
            }
            for (const auto& name : *it) {
                if (!name.is_string()) {
                    throw ConfigError("config: field '" + detail::field_path(prefix, "names") +
                                      "' must contain strings");
                }
                names.push_back(name.get<std::string>());
            }
        }
        std::filesystem::path path = path_node.get<std::string>();
        if (path.is_relative()) path = base_dir / path;
        const auto rows = read_sigma_csv_file(path);
        return wrap([&] { return tabulated_sigma(rows, names); });
    }
    throw ConfigError("config: field '" + detail::field_path(prefix, "type") + "': unknown geometry type '" +
                      type + "'");
}

/// Parses a geometry config document. Relative tabulated paths resolve
/// against `base_dir`.
inline WorldFunction load_geometry(const std::string& config_text,
                                   const std::filesystem::path& base_dir = std::filesystem::current_path()) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(config_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: parse error: ") + e.what());
    }
    return geometry_from_json(doc, base_dir);
}

inline WorldFunction load_geometry_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return load_geometry(buf.str(), path.parent_path().empty() ? std::filesystem::current_path()
                                                               : path.parent_path());
}

/// The geometry types a config may name, with their fields.
inline nlohmann::ordered_json geometry_catalog() {
    return nlohmann::ordered_json::array({
        {{"type", "euclidean"}, {"fields", nlohmann::ordered_json::array({"dimension"})}},
        {{"type", "distorted"}, {"fields", nlohmann::ordered_json::array({"base", "d"})}},
        {{"type", "region"}, {"fields", nlohmann::ordered_json::array({"vertices"})}},
        {{"type", "sphere"}, {"fields", nlohmann::ordered_json::array({"radius"})}},
        {{"type", "tabulated"}, {"fields", nlohmann::ordered_json::array({"path", "names"})}},
    });
}

}  // namespace tgeom
