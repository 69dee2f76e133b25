#pragma once

// The catalog of concrete geometries. Each one is nothing but a world function.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tgeom/core_types.hpp"
#include "tgeom/world_function.hpp"

namespace tgeom {

namespace detail {

/// Shortest decimal form of `x` that parses back to the same double.
inline std::string format_real(double x) {
    char buf[32];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

}  // namespace detail

/// Magnitude of a geometry deformation, in units of σ (length²).
struct DistortionParams {
    double d = 0.0;
};

/// σ(P,Q) = ½ Σ (p_i − q_i)² on ℝⁿ.
inline WorldFunction euclidean_sigma(std::size_t dimension) {
    if (dimension == 0) throw InvalidArgument("euclidean_sigma: dimension must be >= 1");
    return WorldFunction(
        "euclidean(" + std::to_string(dimension) + ")", Domain::coordinate(dimension), true,
        [](const Point& p, const Point& q) {
            const auto& a = p.coords();
            const auto& b = q.coords();
            double sum = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                const double diff = a[i] - b[i];
                sum += diff * diff;
            }
            return 0.5 * sum;
        });
}

/// σ_d(P,Q) = σ_base(P,Q) + d for distinct points and 0 on the diagonal.
inline WorldFunction distorted_sigma(const WorldFunction& base, DistortionParams params) {
    if (!base.domain().is_coordinate()) {
        throw InvalidArgument("distorted_sigma: base geometry must be a coordinate geometry");
    }
    if (!(params.d >= 0.0) || !std::isfinite(params.d)) {
        throw InvalidArgument("distorted_sigma: d must be a finite value >= 0, got " +
                              detail::format_real(params.d));
    }
    const double d = params.d;
    return WorldFunction(
        "distorted(" + base.name() + ", d=" + detail::format_real(d) + ")", base.domain(),
        base.symmetric(),
        [base, d](const Point& p, const Point& q) {
            if (p == q) return 0.0;
            return base.unchecked(p, q) + d;
        },
        [base](const Coordinates& c) { return base.reject_reason(Point(c)); });
}

/// Intrinsic geometry of the sphere of the given radius in ℝ³:
/// σ = ½ (radius · central angle)². Any nonzero ambient vector is projected
/// radially onto the sphere.
inline WorldFunction sphere_sigma(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw InvalidArgument("sphere_sigma: radius must be a finite value > 0");
    }
    auto membership = [](const Coordinates& c) -> std::optional<std::string> {
        for (double x : c) {
            if (!std::isfinite(x)) return "non-finite coordinate";
        }
        if (c[0] == 0.0 && c[1] == 0.0 && c[2] == 0.0) {
            return "zero vector has no projection onto the sphere";
        }
        return std::nullopt;
    };
    return WorldFunction(
        "sphere(r=" + detail::format_real(radius) + ")", Domain::coordinate(3), true,
        [radius](const Point& p, const Point& q) {
            const auto& a = p.coords();
            const auto& b = q.coords();
            // atan2 form stays accurate for nearly coincident and nearly antipodal pairs
            const double cx = a[1] * b[2] - a[2] * b[1];
            const double cy = a[2] * b[0] - a[0] * b[2];
            const double cz = a[0] * b[1] - a[1] * b[0];
            const double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
            const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
            const double arc = radius * std::atan2(cross, dot);
            return 0.5 * arc * arc;
        },
        membership);
}

/// Tolerance on the diagonal of user-supplied tables.
inline constexpr double kTableDiagonalTolerance = 1e-12;

/// A geometry over discrete points 0..n−1 that looks σ up in `table`.
/// Symmetry is inferred by exact comparison of the table with its transpose.
inline WorldFunction tabulated_sigma(const std::vector<std::vector<double>>& rows,
                                     std::vector<std::string> names = {}) {
    const std::size_t n = rows.size();
    if (n == 0) throw InvalidArgument("tabulated_sigma: empty table");
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            throw InvalidArgument("tabulated_sigma: table is not square (row " + std::to_string(i) +
                                  " has " + std::to_string(rows[i].size()) + " entries, expected " +
                                  std::to_string(n) + ")");
        }
        for (std::size_t k = 0; k < n; ++k) {
            if (!std::isfinite(rows[i][k])) {
                throw InvalidArgument("tabulated_sigma: non-finite entry at (" + std::to_string(i) +
                                      "," + std::to_string(k) + ")");
            }
        }
        if (std::abs(rows[i][i]) > kTableDiagonalTolerance) {
            throw InvalidArgument("tabulated_sigma: nonzero diagonal at index " + std::to_string(i) +
                                  " (value " + detail::format_real(rows[i][i]) + ")");
        }
    }
    if (!names.empty()) {
        if (names.size() != n) {
            throw InvalidArgument("tabulated_sigma: " + std::to_string(names.size()) +
                                  " names for " + std::to_string(n) + " points");
        }
        if (std::set<std::string>(names.begin(), names.end()).size() != n) {
            throw InvalidArgument("tabulated_sigma: point names must be unique");
        }
    }

    bool symmetric = true;
    auto values = std::make_shared<std::vector<double>>(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (i != k) (*values)[i * n + k] = rows[i][k];
            if (rows[i][k] != rows[k][i] && i != k) symmetric = false;
        }
    }

    WorldFunction wf("tabulated(" + std::to_string(n) + ")", Domain::discrete(n), symmetric,
                     [values, n](const Point& p, const Point& q) {
                         return (*values)[p.index() * n + q.index()];
                     });
    wf.set_labels(std::move(names));
    return wf;
}

inline WorldFunction tabulated_sigma(const SigmaMatrix& table, std::vector<std::string> names = {}) {
    std::vector<std::vector<double>> rows(table.size(), std::vector<double>(table.size()));
    for (std::size_t i = 0; i < table.size(); ++i) {
        for (std::size_t k = 0; k < table.size(); ++k) rows[i][k] = table(i, k);
    }
    return tabulated_sigma(rows, std::move(names));
}

/// The tuple of ids 0..n−1, i.e. the identity tuple over a tabulated geometry.
inline PointTuple identity_tuple(std::size_t n) {
    PointTuple out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(Point::id(i));
    return out;
}

}  // namespace tgeom
