#pragma once

// Desk-scale experiments: tube sampling, the remote-parallelism counterexample
// search and the nonconvex-region embedding check.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "tgeom/core_types.hpp"
#include "tgeom/polygon_region.hpp"
#include "tgeom/sigma_calculus.hpp"
#include "tgeom/world_function.hpp"

namespace tgeom {

/// Seeded random source whose draws do not depend on the standard library's
/// distribution implementations.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box–Muller (one draw per call).
    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

struct TubeGrid {
    double extent = 1.0;
    double spacing = 0.01;
    std::size_t dimension = 2;
};

struct TubeSample {
    Point point;
    /// F₂ at this point.
    double residual = 0.0;
    /// Signed coordinate along the Euclidean P₀P₁ axis, measured from P₀.
    double axial = 0.0;
    /// Euclidean distance from the axis.
    double radial = 0.0;
    bool member = false;
};

struct TubeReport {
    std::string geometry;
    Point p0;
    Point p1;
    double tolerance = 0.0;
    /// Membership cutoff on the residual: tolerance · (2σ(P₀,P₁))².
    double threshold = 0.0;
    TubeGrid grid;
    std::uint64_t seed = 0;
    std::vector<TubeSample> samples;
    /// Largest radial distance among members; 0 when no off-axis point is a member.
    double width = 0.0;
    std::size_t member_count = 0;
};

inline constexpr std::size_t kMaxTubeSamples = 20'000'000;

/// Samples the tube through P₀ and P₁ on a lattice aligned with the segment.
///
/// The lattice spans the segment plus `extent` on every side; its axial
/// origin is shifted by a seeded offset in [0, spacing). Points outside the
/// geometry's domain are skipped. Results are a function of the inputs and
/// the seed only.
inline TubeReport sample_tube(const WorldFunction& wf, const Point& p0, const Point& p1,
                              const TubeGrid& grid, double tol, std::uint64_t seed) {
    if (!wf.domain().is_coordinate()) {
        throw DomainError("sample_tube: " + wf.name() + " is not a coordinate geometry");
    }
    if (!(grid.spacing > 0.0) || !std::isfinite(grid.spacing)) {
        throw InvalidArgument("sample_tube: spacing must be > 0");
    }
    if (!(grid.extent >= 0.0) || !std::isfinite(grid.extent)) {
        throw InvalidArgument("sample_tube: extent must be >= 0");
    }
    if (grid.dimension != wf.domain().size) {
        throw InvalidArgument("sample_tube: grid dimension " + std::to_string(grid.dimension) +
                              " does not match geometry dimension " + std::to_string(wf.domain().size));
    }
    if (!(tol >= 0.0)) throw InvalidArgument("sample_tube: tol must be >= 0");
    wf.require(p0, 0);
    wf.require(p1, 1);
    if (p0 == p1) throw InvalidArgument("sample_tube: P0 and P1 must differ");

    const std::size_t n = grid.dimension;
    const Coordinates& origin = p0.coords();

    // orthonormal frame: axis first, then the standard basis orthogonalised against it
    std::vector<Coordinates> frame;
    {
        Coordinates axis(n);
        double len2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            axis[i] = p1.coords()[i] - origin[i];
            len2 += axis[i] * axis[i];
        }
        const double len = std::sqrt(len2);
        for (double& x : axis) x /= len;
        frame.push_back(axis);
        for (std::size_t j = 0; j < n && frame.size() < n; ++j) {
            Coordinates e(n, 0.0);
            e[j] = 1.0;
            for (const auto& b : frame) {
                double proj = 0.0;
                for (std::size_t i = 0; i < n; ++i) proj += e[i] * b[i];
                for (std::size_t i = 0; i < n; ++i) e[i] -= proj * b[i];
            }
            double norm2 = 0.0;
            for (double x : e) norm2 += x * x;
            if (norm2 < 1e-12) continue;
            const double norm = std::sqrt(norm2);
            for (double& x : e) x /= norm;
            frame.push_back(e);
        }
    }
    double axis_length = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double diff = p1.coords()[i] - origin[i];
        axis_length += diff * diff;
    }
    axis_length = std::sqrt(axis_length);

    SeededRng rng(seed);
    const double jitter = rng.uniform() * grid.spacing;
    const double slack = 1e-9 * grid.spacing;
    const auto axial_count =
        static_cast<std::size_t>(std::floor((axis_length + 2.0 * grid.extent - jitter + slack) / grid.spacing)) + 1;
    const auto half = static_cast<long>(std::floor(grid.extent / grid.spacing + 1e-9));
    const std::size_t side = static_cast<std::size_t>(2 * half + 1);
    std::size_t perp_count = 1;
    for (std::size_t j = 1; j < n; ++j) {
        if (perp_count > kMaxTubeSamples / side) throw InvalidArgument("sample_tube: grid too large");
        perp_count *= side;
    }
    if (axial_count > kMaxTubeSamples / perp_count) throw InvalidArgument("sample_tube: grid too large");

    TubeReport report;
    report.geometry = wf.name();
    report.p0 = p0;
    report.p1 = p1;
    report.tolerance = tol;
    report.grid = grid;
    report.seed = seed;
    const double s01 = wf(p0, p1);
    report.threshold = tol * (2.0 * s01) * (2.0 * s01);
    report.samples.reserve(axial_count * perp_count);

    std::vector<long> offsets(n > 0 ? n - 1 : 0);
    for (std::size_t perp = 0; perp < perp_count; ++perp) {
        std::size_t rest = perp;
        double radial2 = 0.0;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            offsets[j] = static_cast<long>(rest % side) - half;
            rest /= side;
            const double off = static_cast<double>(offsets[j]) * grid.spacing;
            radial2 += off * off;
        }
        const double radial = std::sqrt(radial2);
        for (std::size_t k = 0; k < axial_count; ++k) {
            const double axial = -grid.extent + jitter + static_cast<double>(k) * grid.spacing;
            Coordinates c(origin);
            for (std::size_t i = 0; i < n; ++i) {
                c[i] += axial * frame[0][i];
                for (std::size_t j = 0; j + 1 < n; ++j) {
                    c[i] += static_cast<double>(offsets[j]) * grid.spacing * frame[j + 1][i];
                }
            }
            Point r(std::move(c));
            if (!wf.contains(r)) continue;
            TubeSample sample;
            sample.residual = collinearity_residual(wf, p0, p1, r);
            sample.point = std::move(r);
            sample.axial = axial;
            sample.radial = radial;
            sample.member = sample.residual <= report.threshold;
            if (sample.member) {
                ++report.member_count;
                if (sample.radial > report.width) report.width = sample.radial;
            }
            report.samples.push_back(std::move(sample));
        }
    }
    return report;
}

struct IntransitivitySearch {
    std::size_t trials = 10'000;
    /// Points are drawn from [−box, box]ⁿ.
    double box = 20.0;
};

struct CounterexampleReport {
    VectorPQ u;
    VectorPQ v;
    VectorPQ w;
    double cos_uv = 0.0;
    double cos_vw = 0.0;
    double cos_uw = 0.0;
    double tol = 0.0;
    bool found = false;
    /// Index of the trial that produced the witness (or trials run when not found).
    std::size_t trial = 0;
};

/// Random search for u ∥ v, v ∥ w but not u ∥ w.
///
/// Each trial draws u with uniform endpoints in the box, then v and w with
/// uniform tails, the previous direction plus Gaussian jitter, and a uniform
/// length in [0.1·box, 2·box]. Trials whose points leave the domain or whose
/// vectors are degenerate are skipped. The first witness in trial order is
/// returned.
inline CounterexampleReport find_intransitivity(const WorldFunction& wf, const IntransitivitySearch& search,
                                                double tol, std::uint64_t seed) {
    if (!wf.domain().is_coordinate()) {
        throw DomainError("find_intransitivity: " + wf.name() + " is not a coordinate geometry");
    }
    if (!(search.box > 0.0) || !std::isfinite(search.box)) {
        throw InvalidArgument("find_intransitivity: box must be > 0");
    }
    if (!(tol > 0.0 && tol < 1.0)) throw InvalidArgument("find_intransitivity: tol must be in (0, 1)");

    constexpr double kDirectionJitter = 0.05;
    const std::size_t n = wf.domain().size;
    const double box = search.box;
    SeededRng rng(seed);

    CounterexampleReport out;
    out.tol = tol;
    out.trial = search.trials;

    auto draw_box_point = [&] {
        Coordinates c(n);
        for (double& x : c) x = rng.uniform(-box, box);
        return c;
    };

    for (std::size_t trial = 0; trial < search.trials; ++trial) {
        Coordinates a = draw_box_point();
        Coordinates b = draw_box_point();
        Coordinates dir(n);
        double len2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dir[i] = b[i] - a[i];
            len2 += dir[i] * dir[i];
        }
        std::vector<VectorPQ> vecs;
        vecs.push_back({Point(a), Point(b)});
        for (int k = 0; k < 2; ++k) {
            const double len = std::sqrt(len2);
            for (std::size_t i = 0; i < n; ++i) dir[i] = dir[i] / len + kDirectionJitter * rng.normal();
            len2 = 0.0;
            for (double x : dir) len2 += x * x;
            Coordinates tail = draw_box_point();
            const double length = rng.uniform(0.1 * box, 2.0 * box);
            const double norm = std::sqrt(len2);
            Coordinates head(tail);
            for (std::size_t i = 0; i < n; ++i) head[i] += length * dir[i] / norm;
            vecs.push_back({Point(std::move(tail)), Point(std::move(head))});
        }

        bool usable = true;
        for (const auto& vec : vecs) {
            if (!wf.contains(vec.tail) || !wf.contains(vec.head) ||
                magnitude(wf, vec) <= kDegenerateMagnitude) {
                usable = false;
                break;
            }
        }
        if (!usable) continue;

        const auto uv = classify_parallel(wf, vecs[0], vecs[1], tol);
        if (!uv.parallel) continue;
        const auto vw = classify_parallel(wf, vecs[1], vecs[2], tol);
        if (!vw.parallel) continue;
        const auto uw = classify_parallel(wf, vecs[0], vecs[2], tol);
        if (uw.parallel) continue;

        out.u = vecs[0];
        out.v = vecs[1];
        out.w = vecs[2];
        out.cos_uv = uv.cosine;
        out.cos_vw = vw.cosine;
        out.cos_uw = uw.cosine;
        out.found = true;
        out.trial = trial;
        return out;
    }
    return out;
}

/// Gram report for probes inside a polygonal region under its intrinsic σ.
inline GramReport convexity_demo(const RegionSpec& region, const Point& base, const PointTuple& probes) {
    const WorldFunction wf = polygon_region_sigma(region);
    if (auto why = wf.reject_reason(base)) throw DomainError("convexity_demo: base point: " + *why);
    for (std::size_t i = 0; i < probes.size(); ++i) {
        if (auto why = wf.reject_reason(probes[i])) {
            throw DomainError("convexity_demo: probe " + std::to_string(i) + ": " + *why);
        }
    }
    return gram_report(wf, base, probes);
}

}  // namespace tgeom
