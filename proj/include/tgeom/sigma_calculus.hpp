#pragma once

// Euclidean notions written only in terms of world-function values. Every
// formula here is evaluated unchanged under any geometry.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tgeom/core_types.hpp"
#include "tgeom/world_function.hpp"

namespace tgeom {

/// Magnitudes below this are treated as zero-length vectors.
inline constexpr double kDegenerateMagnitude = 1e-12;
/// Floor for the scale of relative predicate tests.
inline constexpr double kRelativeFloor = 1e-30;

/// |PQ| = √(2σ(P,Q)).
inline double magnitude(const WorldFunction& wf, const VectorPQ& v) {
    const double s = wf(v.tail, v.head);
    if (s < 0.0) {
        throw NegativeSigmaError(wf.name() + ": sigma(" + describe(v.tail) + ", " + describe(v.head) +
                                 ") is negative, magnitude undefined");
    }
    return std::sqrt(2.0 * s);
}

/// (AB.AC) = σ(A,B) + σ(A,C) − σ(B,C).
inline double scalar_product(const WorldFunction& wf, const Point& a, const Point& b, const Point& c) {
    return wf(a, b) + wf(a, c) - wf(b, c);
}

/// (P₀P₁.Q₀Q₁) = σ(P₀,Q₁) + σ(P₁,Q₀) − σ(P₀,Q₀) − σ(P₁,Q₁).
///
/// Vectors may sit at different points. With a shared tail it collapses to
/// scalar_product (bitwise, for symmetric σ).
inline double scalar_product_general(const WorldFunction& wf, const VectorPQ& u, const VectorPQ& w) {
    return wf(u.tail, w.head) + wf(u.head, w.tail) - wf(u.tail, w.tail) - wf(u.head, w.head);
}

struct AngleResult {
    /// Unclamped cosine; 0 when degenerate.
    double cosine = 0.0;
    /// arccos of the cosine clamped to [−1, 1].
    double angle_radians = std::numbers::pi / 2;
    bool degenerate = false;
    /// |cosine| − 1 when that exceeds 1e-9, else 0.
    double clamp_excess = 0.0;
};

/// Angle BAC from the cosine theorem read as a definition.
inline AngleResult cosine_angle(const WorldFunction& wf, const Point& a, const Point& b, const Point& c) {
    const double ab = magnitude(wf, {a, b});
    const double ac = magnitude(wf, {a, c});
    AngleResult out;
    if (ab < kDegenerateMagnitude || ac < kDegenerateMagnitude) {
        out.degenerate = true;
        return out;
    }
    out.cosine = scalar_product(wf, a, b, c) / (ab * ac);
    const double excess = std::abs(out.cosine) - 1.0;
    if (excess > 1e-9) out.clamp_excess = excess;
    out.angle_radians = std::acos(std::clamp(out.cosine, -1.0, 1.0));
    return out;
}

/// σ(A,B) + σ(A,C) − σ(B,C) = 0, tested relative to σ(A,B) + σ(A,C).
inline bool is_right_angle(const WorldFunction& wf, const Point& a, const Point& b, const Point& c,
                           double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("is_right_angle: tol must be > 0");
    const double sab = wf(a, b);
    const double sac = wf(a, c);
    const double residual = sab + sac - wf(b, c);
    return std::abs(residual) <= tol * std::max(sab + sac, kRelativeFloor);
}

/// F₂ = |P₀P₁|²·|P₀R|² − (P₀P₁.P₀R)². Zero marks R as a member of the tube
/// through P₀ and P₁; in Euclidean space that tube is the line.
inline double collinearity_residual(const WorldFunction& wf, const Point& p0, const Point& p1,
                                    const Point& r) {
    if (p0 == p1) throw InvalidArgument("collinearity_residual: P0 and P1 must differ");
    const double s01 = wf(p0, p1);
    const double s0r = wf(p0, r);
    const double s1r = wf(p1, r);
    const double dot = s01 + s0r - s1r;
    return 4.0 * s01 * s0r - dot * dot;
}

struct ParallelResult {
    bool parallel = false;
    /// +1 for same direction, −1 for opposite; meaningful only when parallel.
    int orientation = 0;
    /// (u.w) / (|u||w|), unclamped.
    double cosine = 0.0;
};

/// Remote parallelism: |(u.w)| ≥ (1 − tol)·|u|·|w|.
inline ParallelResult classify_parallel(const WorldFunction& wf, const VectorPQ& u, const VectorPQ& w,
                                        double tol) {
    const double mu = magnitude(wf, u);
    const double mw = magnitude(wf, w);
    if (mu <= kDegenerateMagnitude || mw <= kDegenerateMagnitude) {
        throw InvalidArgument("is_parallel: degenerate vector");
    }
    const double product = scalar_product_general(wf, u, w);
    ParallelResult out;
    out.cosine = product / (mu * mw);
    out.parallel = std::abs(product) >= (1.0 - tol) * mu * mw;
    if (out.parallel) out.orientation = product >= 0.0 ? 1 : -1;
    return out;
}

inline bool is_parallel(const WorldFunction& wf, const VectorPQ& u, const VectorPQ& w, double tol) {
    return classify_parallel(wf, u, w, tol).parallel;
}

/// Relative eigenvalue tolerance for embeddability verdicts.
inline constexpr double kEmbedRelativeTolerance = 1e-8;

/// Gram matrix of σ-scalar products at a base point, with its spectrum.
struct GramReport {
    std::size_t size = 0;
    /// Row-major G[i][k] = (P₀P_i.P₀P_k).
    std::vector<double> gram;
    /// Ascending.
    std::vector<double> eigenvalues;
    double min_eigenvalue = 0.0;
    double tol_embed = 0.0;
    std::size_t negative_count = 0;
    bool embeddable = true;
    /// Eigenvalues above +tol_embed: the smallest Euclidean dimension that fits.
    std::size_t rank = 0;

    double at(std::size_t i, std::size_t k) const { return gram[i * size + k]; }
};

/// Flat embeddability test: the points embed isometrically into some
/// Euclidean space iff the Gram matrix at the base point is positive
/// semidefinite.
inline GramReport gram_report(const WorldFunction& wf, const Point& base, const PointTuple& others,
                              double relative_tol = kEmbedRelativeTolerance) {
    wf.require(base, 0);
    for (std::size_t i = 0; i < others.size(); ++i) {
        wf.require(others[i], i + 1);
        if (others[i] == base) {
            throw InvalidArgument("gram_report: point " + std::to_string(i) + " coincides with the base");
        }
    }

    const std::size_t n = others.size();
    GramReport out;
    out.size = n;
    out.gram.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            out.gram[i * n + k] = scalar_product(wf, base, others[i], others[k]);
        }
    }
    if (!wf.symmetric()) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = i + 1; k < n; ++k) {
                const double avg = 0.5 * (out.gram[i * n + k] + out.gram[k * n + i]);
                out.gram[i * n + k] = out.gram[k * n + i] = avg;
            }
        }
    }
    if (n == 0) return out;

    Eigen::MatrixXd g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) g(i, k) = out.gram[i * n + k];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error("gram_report: eigensolver did not converge");

    double largest = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        out.eigenvalues.push_back(solver.eigenvalues()(i));
        largest = std::max(largest, std::abs(solver.eigenvalues()(i)));
    }
    out.min_eigenvalue = out.eigenvalues.front();
    out.tol_embed = relative_tol * largest;
    for (double lambda : out.eigenvalues) {
        if (lambda < -out.tol_embed) ++out.negative_count;
        if (lambda > out.tol_embed) ++out.rank;
    }
    out.embeddable = out.negative_count == 0;
    return out;
}

}  // namespace tgeom
