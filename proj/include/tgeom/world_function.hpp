#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tgeom/core_types.hpp"

namespace tgeom {

/// What kind of points a geometry accepts.
struct Domain {
    enum class Kind { coordinate, discrete };

    Kind kind = Kind::coordinate;
    /// Ambient dimension for coordinate domains, point count for discrete ones.
    std::size_t size = 0;

    static Domain coordinate(std::size_t dimension) { return {Kind::coordinate, dimension}; }
    static Domain discrete(std::size_t count) { return {Kind::discrete, count}; }

    bool is_coordinate() const { return kind == Kind::coordinate; }

    friend bool operator==(const Domain&, const Domain&) = default;
};

/// A geometry, defined entirely by its world function σ(P,Q).
///
/// The evaluator is pure and may be called concurrently. Calls through
/// operator() validate both arguments against the domain first, so the
/// evaluator itself only ever sees admissible points.
class WorldFunction {
public:
    using Evaluator = std::function<double(const Point&, const Point&)>;
    /// Extra membership test for coordinate points; returns a reason when the
    /// point is rejected.
    using Membership = std::function<std::optional<std::string>(const Coordinates&)>;

    WorldFunction(std::string name, Domain domain, bool symmetric, Evaluator evaluator,
                  Membership membership = {})
        : name_(std::move(name)),
          domain_(domain),
          symmetric_(symmetric),
          evaluator_(std::move(evaluator)),
          membership_(std::move(membership)) {}

    const std::string& name() const { return name_; }
    const Domain& domain() const { return domain_; }
    bool symmetric() const { return symmetric_; }

    /// Optional display names for discrete points (empty when unnamed).
    const std::vector<std::string>& labels() const { return labels_; }
    WorldFunction& set_labels(std::vector<std::string> labels) {
        labels_ = std::move(labels);
        return *this;
    }

    /// Why `p` is outside the domain, or nullopt when it is admissible.
    std::optional<std::string> reject_reason(const Point& p) const {
        if (domain_.is_coordinate()) {
            if (!p.is_coordinate()) return "expected a coordinate point, got id " + describe(p);
            if (p.dimension() != domain_.size) {
                return "expected dimension " + std::to_string(domain_.size) + ", got " +
                       std::to_string(p.dimension());
            }
            if (membership_) return membership_(p.coords());
            return std::nullopt;
        }
        if (!p.is_discrete()) return "expected a point id, got coordinates " + describe(p);
        if (p.index() >= domain_.size) {
            return "id " + std::to_string(p.index()) + " out of range [0, " +
                   std::to_string(domain_.size) + ")";
        }
        return std::nullopt;
    }

    bool contains(const Point& p) const { return !reject_reason(p); }

    /// Throws DomainError naming `index` when `p` is not admissible.
    void require(const Point& p, std::size_t index) const {
        if (auto why = reject_reason(p)) {
            throw DomainError(name_ + ": point " + std::to_string(index) + " rejected: " + *why);
        }
    }

    /// σ(p, q) in written argument order.
    double operator()(const Point& p, const Point& q) const {
        require(p, 0);
        require(q, 1);
        return evaluator_(p, q);
    }

    /// σ(p, q) without domain checks; callers must have validated both points.
    double unchecked(const Point& p, const Point& q) const { return evaluator_(p, q); }

private:
    std::string name_;
    Domain domain_;
    bool symmetric_ = true;
    Evaluator evaluator_;
    Membership membership_;
    std::vector<std::string> labels_;
};

/// The full pairwise table σ(P_i, P_k) over `tuple`, with an exactly zero
/// diagonal. Symmetric geometries are evaluated on the upper triangle and
/// mirrored.
inline SigmaMatrix build_sigma_matrix(const WorldFunction& wf, const PointTuple& tuple) {
    if (tuple.empty()) throw InvalidArgument("build_sigma_matrix: empty point tuple");
    for (std::size_t i = 0; i < tuple.size(); ++i) wf.require(tuple[i], i);

    const std::size_t n = tuple.size();
    std::vector<double> values(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (i == k) continue;
            if (wf.symmetric() && k < i) {
                values[i * n + k] = values[k * n + i];
            } else {
                values[i * n + k] = wf.unchecked(tuple[i], tuple[k]);
            }
        }
    }
    return SigmaMatrix(n, std::move(values), !wf.symmetric());
}

}  // namespace tgeom
