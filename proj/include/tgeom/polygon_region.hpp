#pragma once

// Intrinsic geometry of a closed simple polygon: distance is the length of the
// shortest path that stays inside the region.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tgeom/core_types.hpp"
#include "tgeom/geometries.hpp"
#include "tgeom/world_function.hpp"

namespace tgeom {

using Vec2 = std::array<double, 2>;

/// A simple polygon, counterclockwise, at least three vertices.
struct RegionSpec {
    std::vector<Vec2> vertices;
};

namespace detail {

inline Vec2 sub(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline double cross(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }
inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
inline double dist(const Vec2& a, const Vec2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

inline double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 ab = sub(b, a);
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? dot(sub(p, a), ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return dist(p, {a[0] + t * ab[0], a[1] + t * ab[1]});
}

/// Closed segments [a,b] and [c,d] share at least one point (within eps).
inline bool segments_touch(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d, double eps) {
    const double d1 = cross(sub(b, a), sub(c, a));
    const double d2 = cross(sub(b, a), sub(d, a));
    const double d3 = cross(sub(d, c), sub(a, c));
    const double d4 = cross(sub(d, c), sub(b, c));
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        return true;
    }
    return point_segment_distance(c, a, b) <= eps || point_segment_distance(d, a, b) <= eps ||
           point_segment_distance(a, c, d) <= eps || point_segment_distance(b, c, d) <= eps;
}

}  // namespace detail

/// Precomputed shortest-path structure over a polygonal region.
///
/// Construction validates the polygon and caches vertex-to-vertex visibility;
/// queries are const and safe to run concurrently.
class PolygonRegion {
public:
    explicit PolygonRegion(RegionSpec spec) : vertices_(std::move(spec.vertices)) {
        validate();
        const std::size_t n = vertices_.size();
        vertex_dist_.assign(n * n, kInf);
        for (std::size_t i = 0; i < n; ++i) {
            vertex_dist_[i * n + i] = 0.0;
            for (std::size_t k = i + 1; k < n; ++k) {
                if (segment_inside(vertices_[i], vertices_[k])) {
                    vertex_dist_[i * n + k] = vertex_dist_[k * n + i] =
                        detail::dist(vertices_[i], vertices_[k]);
                }
            }
        }
    }

    const std::vector<Vec2>& vertices() const { return vertices_; }
    double eps() const { return eps_; }

    bool on_boundary(const Vec2& p) const {
        const std::size_t n = vertices_.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (detail::point_segment_distance(p, vertices_[i], vertices_[(i + 1) % n]) <= eps_) {
                return true;
            }
        }
        return false;
    }

    /// Point lies in the closed region (interior or boundary).
    bool contains(const Vec2& p) const {
        if (on_boundary(p)) return true;
        bool inside = false;
        const std::size_t n = vertices_.size();
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            const Vec2& a = vertices_[i];
            const Vec2& b = vertices_[j];
            if ((a[1] > p[1]) != (b[1] > p[1])) {
                const double x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
                if (p[0] < x) inside = !inside;
            }
        }
        return inside;
    }

    /// The closed segment [a,b] lies entirely in the closed region.
    ///
    /// Splits the segment at every boundary contact; between contacts the
    /// segment is either wholly inside or wholly outside, so one midpoint test
    /// per piece decides it.
    bool segment_inside(const Vec2& a, const Vec2& b) const {
        const Vec2 ab = detail::sub(b, a);
        const double len2 = detail::dot(ab, ab);
        if (len2 == 0.0) return contains(a);
        const double len = std::sqrt(len2);
        const double param_eps = eps_ / len;

        std::vector<double> cuts{0.0, 1.0};
        auto param_of = [&](const Vec2& p) { return detail::dot(detail::sub(p, a), ab) / len2; };

        const std::size_t n = vertices_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& c = vertices_[i];
            const Vec2& d = vertices_[(i + 1) % n];
            const Vec2 cd = detail::sub(d, c);
            const double denom = detail::cross(ab, cd);
            const double cd_len = std::sqrt(detail::dot(cd, cd));
            if (std::abs(denom) > 1e-14 * len * cd_len) {
                const Vec2 ca = detail::sub(c, a);
                const double t = detail::cross(ca, cd) / denom;
                const double s = detail::cross(ca, ab) / denom;
                const double edge_eps = eps_ / cd_len;
                if (t > param_eps && t < 1.0 - param_eps && s > edge_eps && s < 1.0 - edge_eps) {
                    return false;  // transversal crossing of an edge interior
                }
                if (t >= -param_eps && t <= 1.0 + param_eps && s >= -edge_eps && s <= 1.0 + edge_eps) {
                    cuts.push_back(std::clamp(t, 0.0, 1.0));
                }
            }
            // vertex contacts (also covers collinear overlaps)
            if (detail::point_segment_distance(c, a, b) <= eps_) {
                cuts.push_back(std::clamp(param_of(c), 0.0, 1.0));
            }
        }

        std::sort(cuts.begin(), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            if (cuts[i + 1] - cuts[i] <= param_eps) continue;
            const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
            if (!contains({a[0] + mid * ab[0], a[1] + mid * ab[1]})) return false;
        }
        return true;
    }

    /// Length of the shortest path from p to q inside the closed region.
    /// Both points must be in the region.
    double shortest_path_length(const Vec2& p, const Vec2& q) const {
        if (p == q) return 0.0;
        if (segment_inside(p, q)) return detail::dist(p, q);

        const std::size_t n = vertices_.size();
        // node n is the target q; the source p is handled by the initial distances
        std::vector<double> best(n + 1, kInf);
        std::vector<bool> done(n + 1, false);
        std::vector<double> to_target(n, kInf);
        for (std::size_t i = 0; i < n; ++i) {
            if (segment_inside(p, vertices_[i])) best[i] = detail::dist(p, vertices_[i]);
            if (segment_inside(vertices_[i], q)) to_target[i] = detail::dist(vertices_[i], q);
        }
        for (;;) {
            std::size_t u = n + 1;
            for (std::size_t i = 0; i <= n; ++i) {
                if (!done[i] && best[i] < kInf && (u == n + 1 || best[i] < best[u])) u = i;
            }
            if (u == n + 1) break;
            if (u == n) return best[n];
            done[u] = true;
            for (std::size_t k = 0; k < n; ++k) {
                const double w = vertex_dist_[u * n + k];
                if (!done[k] && w < kInf && best[u] + w < best[k]) best[k] = best[u] + w;
            }
            if (to_target[u] < kInf && best[u] + to_target[u] < best[n]) {
                best[n] = best[u] + to_target[u];
            }
        }
        // a simple polygon is connected, so this only happens for points outside it
        throw DomainError("polygon region: no interior path between points");
    }

private:
    static constexpr double kInf = std::numeric_limits<double>::infinity();

    void validate() {
        const std::size_t n = vertices_.size();
        if (n < 3) throw InvalidArgument("region: a polygon needs at least 3 vertices");
        double scale = 1.0;
        for (const auto& v : vertices_) {
            if (!std::isfinite(v[0]) || !std::isfinite(v[1])) {
                throw InvalidArgument("region: non-finite vertex coordinate");
            }
            scale = std::max({scale, std::abs(v[0]), std::abs(v[1])});
        }
        eps_ = 1e-12 * scale;

        double area2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& a = vertices_[i];
            const Vec2& b = vertices_[(i + 1) % n];
            if (detail::dist(a, b) <= eps_) {
                throw InvalidArgument("region: zero-length edge at vertex " + std::to_string(i));
            }
            area2 += detail::cross(a, b);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& a = vertices_[i];
            const Vec2& b = vertices_[(i + 1) % n];
            for (std::size_t k = i + 1; k < n; ++k) {
                const Vec2& c = vertices_[k];
                const Vec2& d = vertices_[(k + 1) % n];
                const bool adjacent = (k == i + 1) || (i == 0 && k == n - 1);
                if (adjacent) {
                    // neighbours may only share their common vertex
                    const Vec2& far_ab = (k == i + 1) ? a : b;
                    const Vec2& far_cd = (k == i + 1) ? d : c;
                    if (detail::point_segment_distance(far_cd, a, b) <= eps_ ||
                        detail::point_segment_distance(far_ab, c, d) <= eps_) {
                        throw InvalidArgument("region: edges " + std::to_string(i) + " and " +
                                              std::to_string(k) + " fold back on each other");
                    }
                    continue;
                }
                if (detail::segments_touch(a, b, c, d, eps_)) {
                    throw InvalidArgument("region: polygon is not simple (edges " + std::to_string(i) +
                                          " and " + std::to_string(k) + " intersect)");
                }
            }
        }
        if (area2 <= 0.0) throw InvalidArgument("region: vertices must be in counterclockwise order");
    }

    std::vector<Vec2> vertices_;
    std::vector<double> vertex_dist_;
    double eps_ = 1e-12;
};

/// σ(P,Q) = ½ (shortest interior path length)². Points outside the closed
/// region are rejected. Directly visible pairs use the Euclidean formula, so
/// on convex regions this matches euclidean_sigma(2) exactly.
inline WorldFunction polygon_region_sigma(const RegionSpec& region) {
    auto poly = std::make_shared<const PolygonRegion>(region);
    auto membership = [poly](const Coordinates& c) -> std::optional<std::string> {
        if (!std::isfinite(c[0]) || !std::isfinite(c[1])) return "non-finite coordinate";
        if (!poly->contains({c[0], c[1]})) return "point lies outside the region";
        return std::nullopt;
    };
    return WorldFunction(
        "region(" + std::to_string(poly->vertices().size()) + " vertices)", Domain::coordinate(2), true,
        [poly](const Point& p, const Point& q) {
            Vec2 a{p.coords()[0], p.coords()[1]};
            Vec2 b{q.coords()[0], q.coords()[1]};
            if (a == b) return 0.0;
            // canonical order keeps σ(P,Q) and σ(Q,P) bitwise equal
            if (b < a) std::swap(a, b);
            if (poly->segment_inside(a, b)) {
                const double dx = a[0] - b[0];
                const double dy = a[1] - b[1];
                return 0.5 * (dx * dx + dy * dy);
            }
            const double len = poly->shortest_path_length(a, b);
            return 0.5 * len * len;
        },
        membership);
}

/// The U-shaped fixture: [0,3]² with the open slit 1.4 < x < 1.6, 1 < y ≤ 3
/// removed, traced as a simple polygon.
inline RegionSpec u_shaped_region() {
    return {{{0.0, 0.0}, {3.0, 0.0}, {3.0, 3.0}, {1.6, 3.0}, {1.6, 1.0}, {1.4, 1.0}, {1.4, 3.0}, {0.0, 3.0}}};
}

inline RegionSpec unit_square_region() {
    return {{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}};
}

}  // namespace tgeom
