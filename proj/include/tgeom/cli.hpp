#pragma once

// Command-line front end. `run` is the whole program minus process plumbing,
// so tests drive it in-process.
//
// Exit codes: 0 success, 1 domain error, 2 usage error. On any error nothing
// is written to `out`.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tgeom/config.hpp"
#include "tgeom/core_types.hpp"
#include "tgeom/deformation.hpp"
#include "tgeom/explorer.hpp"
#include "tgeom/report.hpp"
#include "tgeom/sigma_calculus.hpp"
#include "tgeom/world_function.hpp"

namespace tgeom::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Bad command-line input that CLI11 itself does not catch.
class UsageError : public Error {
public:
    using Error::Error;
};

/// "x,y,..." for coordinate geometries; an integer id or a label for
/// tabulated ones.
inline Point parse_point(const std::string& text, const WorldFunction& wf) {
    const std::string t = detail::trim(text);
    if (!wf.domain().is_coordinate()) {
        const auto& labels = wf.labels();
        if (auto it = std::find(labels.begin(), labels.end(), t); it != labels.end()) {
            return Point::id(static_cast<std::size_t>(it - labels.begin()));
        }
        double id = 0.0;
        if (!detail::parse_real(t, id) || id < 0 || id != static_cast<double>(static_cast<std::size_t>(id))) {
            throw UsageError("bad point id '" + t + "'");
        }
        return Point::id(static_cast<std::size_t>(id));
    }
    Coordinates coords;
    std::stringstream cells(t);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
        double x = 0.0;
        if (!detail::parse_real(cell, x)) throw UsageError("bad coordinate '" + cell + "' in point '" + t + "'");
        coords.push_back(x);
    }
    if (coords.empty() || t.back() == ',') throw UsageError("bad point '" + t + "'");
    return Point(std::move(coords));
}

/// Points separated by ';' or newlines.
inline PointTuple parse_point_list(const std::string& text, const WorldFunction& wf) {
    PointTuple out;
    std::string item;
    for (char ch : text + ";") {
        if (ch == ';' || ch == '\n') {
            if (!detail::trim(item).empty()) out.push_back(parse_point(item, wf));
            item.clear();
        } else {
            item += ch;
        }
    }
    return out;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Explore geometries defined by their world function"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string geometry_path;
    std::string geometry_json;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    std::string out_path;
    auto* geometry_opt = app.add_option("--geometry", geometry_path, "Geometry config file (JSON)");
    auto* geometry_json_opt = app.add_option("--geometry-json", geometry_json, "Inline geometry config");
    geometry_opt->excludes(geometry_json_opt);
    app.add_option("--seed", seed, "Random seed")->capture_default_str();
    app.add_option("--tol", tol, "Tolerance")->capture_default_str();
    app.add_option("--out", out_path, "Output file for bulk data");

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a quantity or predicate");
    std::string quantity;
    std::vector<std::string> point_args;
    eval_cmd->add_option("quantity", quantity, "sigma | magnitude | scalar | cosine | predicate:<name>")
        ->required();
    eval_cmd->add_option("points", point_args, "Points: x,y,... or ids");

    auto* tube_cmd = app.add_subcommand("tube", "Sample the tube through two points");
    std::string p0_text;
    std::string p1_text;
    double extent = 1.0;
    double spacing = 0.01;
    tube_cmd->add_option("--p0", p0_text, "First point")->required();
    tube_cmd->add_option("--p1", p1_text, "Second point")->required();
    tube_cmd->add_option("--extent", extent, "Half-width of the sampling box")->capture_default_str();
    tube_cmd->add_option("--spacing", spacing, "Grid spacing")->capture_default_str();

    auto* embed_cmd = app.add_subcommand("embed", "Flat embeddability of points (Gram spectrum)");
    std::string base_text;
    std::string points_text;
    std::string points_file;
    embed_cmd->add_option("--base", base_text, "Base point")->required();
    auto* points_opt = embed_cmd->add_option("--points", points_text, "Points separated by ';'");
    auto* points_file_opt = embed_cmd->add_option("--points-file", points_file, "File with one point per line");
    points_opt->excludes(points_file_opt);

    auto* parallel_cmd = app.add_subcommand("parallel", "Search for intransitive remote parallelism");
    IntransitivitySearch search;
    parallel_cmd->add_option("--trials", search.trials, "Number of trials")->capture_default_str();
    parallel_cmd->add_option("--box", search.box, "Points drawn from [-box, box]^n")->capture_default_str();

    auto* list_cmd = app.add_subcommand("list-geometries", "List the geometry config types");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream help_out;
        const int code = app.exit(e, help_out, err);
        if (code == 0) {
            out << help_out.str();
            return kExitOk;
        }
        return kExitUsage;
    }

    try {
        if (list_cmd->parsed()) {
            out << output_record("list-geometries", "", geometry_catalog()).dump(2) << "\n";
            return kExitOk;
        }

        if (geometry_path.empty() && geometry_json.empty()) {
            throw UsageError("one of --geometry or --geometry-json is required");
        }
        const WorldFunction wf =
            geometry_path.empty() ? load_geometry(geometry_json) : load_geometry_file(geometry_path);

        ordered_json payload;
        std::string command;

        if (eval_cmd->parsed()) {
            command = "eval";
            PointTuple points;
            for (const auto& text : point_args) points.push_back(parse_point(text, wf));
            ordered_json pts = ordered_json::array();
            for (const auto& p : points) pts.push_back(to_json(p));
            auto need = [&](std::size_t n) {
                if (points.size() != n) {
                    throw UsageError(quantity + " takes " + std::to_string(n) + " points, got " +
                                     std::to_string(points.size()));
                }
            };
            payload["quantity"] = quantity;
            if (quantity == "sigma") {
                need(2);
                payload["points"] = pts;
                payload["value"] = wf(points[0], points[1]);
            } else if (quantity == "magnitude") {
                need(2);
                payload["points"] = pts;
                payload["value"] = magnitude(wf, {points[0], points[1]});
            } else if (quantity == "scalar") {
                need(3);
                payload["points"] = pts;
                payload["value"] = scalar_product(wf, points[0], points[1], points[2]);
            } else if (quantity == "cosine") {
                need(3);
                const AngleResult angle = cosine_angle(wf, points[0], points[1], points[2]);
                payload["points"] = pts;
                payload["value"] = angle.cosine;
                payload["angle_radians"] = angle.angle_radians;
                payload["degenerate"] = angle.degenerate;
                payload["clamp_excess"] = angle.clamp_excess;
            } else if (quantity.rfind("predicate:", 0) == 0) {
                const std::string name = quantity.substr(10);
                const PredicateRegistry registry;
                if (!registry.contains(name)) throw UsageError("unknown predicate '" + name + "'");
                need(registry.at(name).arity);
                const double residual = evaluate(registry, name, wf, points);
                payload["predicate"] = name;
                payload["points"] = pts;
                payload["residual"] = residual;
                payload["value"] = residual;
            } else {
                throw UsageError("unknown quantity '" + quantity + "'");
            }
        } else if (tube_cmd->parsed()) {
            command = "tube";
            if (!(spacing > 0.0)) throw UsageError("--spacing must be > 0");
            if (!(extent >= 0.0)) throw UsageError("--extent must be >= 0");
            if (!wf.domain().is_coordinate()) {
                throw DomainError("tube: " + wf.name() + " is not a coordinate geometry");
            }
            const Point p0 = parse_point(p0_text, wf);
            const Point p1 = parse_point(p1_text, wf);
            const TubeReport report =
                sample_tube(wf, p0, p1, {extent, spacing, wf.domain().size}, tol, seed);
            if (!out_path.empty()) {
                std::ofstream csv(out_path);
                if (!csv) throw UsageError("cannot write '" + out_path + "'");
                write_tube_csv(csv, report);
            }
            payload = to_json(report);
        } else if (embed_cmd->parsed()) {
            command = "embed";
            std::string list = points_text;
            if (!points_file.empty()) {
                std::ifstream in(points_file);
                if (!in) throw UsageError("cannot open '" + points_file + "'");
                std::stringstream buf;
                buf << in.rdbuf();
                list = buf.str();
            }
            if (points_text.empty() && points_file.empty()) {
                throw UsageError("one of --points or --points-file is required");
            }
            const Point base = parse_point(base_text, wf);
            const PointTuple points = parse_point_list(list, wf);
            if (points.empty()) throw UsageError("no points given");
            payload = to_json(gram_report(wf, base, points));
        } else if (parallel_cmd->parsed()) {
            command = "parallel";
            if (!(search.box > 0.0)) throw UsageError("--box must be > 0");
            if (!(tol > 0.0 && tol < 1.0)) throw UsageError("--tol must be in (0, 1)");
            payload = to_json(find_intransitivity(wf, search, tol, seed));
            payload["trials"] = search.trials;
            payload["box"] = search.box;
            payload["seed"] = seed;
        }

        out << output_record(command, wf.name(), std::move(payload)).dump(2) << "\n";
        return kExitOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }
}

}  // namespace tgeom::cli
