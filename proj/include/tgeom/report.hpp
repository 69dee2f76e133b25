#pragma once

// Machine-readable output: JSON records on stdout, CSV point clouds on disk.

#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "tgeom/core_types.hpp"
#include "tgeom/explorer.hpp"
#include "tgeom/sigma_calculus.hpp"

namespace tgeom {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

inline ordered_json to_json(const Point& p) {
    if (p.is_discrete()) return p.index();
    return p.coords();
}

inline ordered_json to_json(const VectorPQ& v) {
    return ordered_json{{"tail", to_json(v.tail)}, {"head", to_json(v.head)}};
}

inline ordered_json to_json(const GramReport& g) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < g.size; ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t k = 0; k < g.size; ++k) row.push_back(g.at(i, k));
        rows.push_back(std::move(row));
    }
    return ordered_json{{"size", g.size},
                        {"gram", std::move(rows)},
                        {"eigenvalues", g.eigenvalues},
                        {"min_eigenvalue", g.min_eigenvalue},
                        {"tol_embed", g.tol_embed},
                        {"negative_count", g.negative_count},
                        {"embeddable", g.embeddable},
                        {"rank", g.rank}};
}

/// Summary of a tube run; the samples themselves go to CSV.
inline ordered_json to_json(const TubeReport& t) {
    return ordered_json{{"p0", to_json(t.p0)},
                        {"p1", to_json(t.p1)},
                        {"extent", t.grid.extent},
                        {"spacing", t.grid.spacing},
                        {"dimension", t.grid.dimension},
                        {"tolerance", t.tolerance},
                        {"threshold", t.threshold},
                        {"seed", t.seed},
                        {"sample_count", t.samples.size()},
                        {"member_count", t.member_count},
                        {"width", t.width}};
}

inline ordered_json to_json(const CounterexampleReport& c) {
    ordered_json out{{"found", c.found}, {"tol", c.tol}, {"trial", c.trial}};
    if (c.found) {
        out["u"] = to_json(c.u);
        out["v"] = to_json(c.v);
        out["w"] = to_json(c.w);
        out["cos_uv"] = c.cos_uv;
        out["cos_vw"] = c.cos_vw;
        out["cos_uw"] = c.cos_uw;
    }
    return out;
}

inline ordered_json output_record(const std::string& command, const std::string& geometry, ordered_json payload) {
    return ordered_json{{"schema_version", kSchemaVersion},
                        {"command", command},
                        {"geometry", geometry},
                        {"payload", std::move(payload)}};
}

/// Columns: axial, radial, residual, member (0/1).
inline void write_tube_csv(std::ostream& out, const TubeReport& t) {
    out << "axial,radial,residual,member\n";
    char buf[128];
    for (const auto& s : t.samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d\n", s.axial, s.radial, s.residual, s.member ? 1 : 0);
        out << buf;
    }
}

}  // namespace tgeom
