#pragma once

// Geometric relations written once as functions of a σ-table and evaluated
// under any geometry by swapping the world function that fills the table.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tgeom/core_types.hpp"
#include "tgeom/world_function.hpp"

namespace tgeom {

/// A relation over a point tuple, seen only through its σ-table.
/// The evaluator returns a residual; 0 means the relation holds.
struct SigmaPredicate {
    std::string name;
    std::size_t arity = 0;
    std::function<double(const SigmaMatrix&)> evaluator;
};

namespace predicates {

/// Angle at point 0 between points 1 and 2: σ01 + σ02 − σ12.
inline double right_angle(const SigmaMatrix& s) { return s(0, 1) + s(0, 2) - s(1, 2); }

/// F₂ for the tube through points 0 and 1, probed at point 2.
inline double collinear(const SigmaMatrix& s) {
    const double dot = s(0, 1) + s(0, 2) - s(1, 2);
    return 4.0 * s(0, 1) * s(0, 2) - dot * dot;
}

/// 1 − |cos| between vectors 0→1 and 2→3. Degenerate vectors give 1 (cosine
/// taken as 0); negative σ gives NaN.
inline double parallel(const SigmaMatrix& s) {
    if (s(0, 1) < 0.0 || s(2, 3) < 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double mu = std::sqrt(2.0 * s(0, 1));
    const double mw = std::sqrt(2.0 * s(2, 3));
    if (mu <= 1e-12 || mw <= 1e-12) return 1.0;
    const double product = s(0, 3) + s(1, 2) - s(0, 2) - s(1, 3);
    return 1.0 - std::abs(product / (mu * mw));
}

/// Relative residual of |BC|² = |AB|² + |AC|² − 2(AB.AC) with A,B,C = points
/// 0,1,2 and lengths taken through √(2σ).
inline double cosine_identity(const SigmaMatrix& s) {
    if (s(0, 1) < 0.0 || s(0, 2) < 0.0 || s(1, 2) < 0.0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const double ab = std::sqrt(2.0 * s(0, 1));
    const double ac = std::sqrt(2.0 * s(0, 2));
    const double bc = std::sqrt(2.0 * s(1, 2));
    const double dot = s(0, 1) + s(0, 2) - s(1, 2);
    const double lhs = bc * bc;
    const double rhs = ab * ab + ac * ac - 2.0 * dot;
    const double scale = std::max(ab * ab + ac * ac + bc * bc, 1e-30);
    return std::abs(lhs - rhs) / scale;
}

}  // namespace predicates

/// Append-only name → predicate table. The built-ins are always present and
/// cannot be replaced.
class PredicateRegistry {
public:
    PredicateRegistry() {
        add({"right_angle", 3, predicates::right_angle});
        add({"collinear", 3, predicates::collinear});
        add({"parallel", 4, predicates::parallel});
        add({"cosine_identity", 3, predicates::cosine_identity});
    }

    PredicateRegistry& add(SigmaPredicate pred) {
        if (pred.name.empty()) throw InvalidArgument("predicate registry: empty name");
        if (pred.arity == 0) throw InvalidArgument("predicate registry: arity must be positive");
        if (!pred.evaluator) throw InvalidArgument("predicate registry: missing evaluator");
        if (entries_.count(pred.name)) {
            throw InvalidArgument("predicate registry: duplicate name '" + pred.name + "'");
        }
        std::string key = pred.name;
        entries_.emplace(std::move(key), std::move(pred));
        return *this;
    }

    bool contains(const std::string& name) const { return entries_.count(name) != 0; }

    const SigmaPredicate& at(const std::string& name) const {
        auto it = entries_.find(name);
        if (it == entries_.end()) throw InvalidArgument("unknown predicate '" + name + "'");
        return it->second;
    }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& [name, _] : entries_) out.push_back(name);
        return out;
    }

    static const std::set<std::string>& builtin_names() {
        static const std::set<std::string> names{"right_angle", "collinear", "parallel",
                                                 "cosine_identity"};
        return names;
    }

private:
    std::map<std::string, SigmaPredicate> entries_;
};

/// Copy of `registry` with `pred` added.
inline PredicateRegistry register_predicate(PredicateRegistry registry, SigmaPredicate pred) {
    registry.add(std::move(pred));
    return registry;
}

/// Residual of predicate `name` on `tuple` under geometry `wf`.
inline double evaluate(const PredicateRegistry& registry, const std::string& name,
                       const WorldFunction& wf, const PointTuple& tuple) {
    const SigmaPredicate& pred = registry.at(name);
    if (tuple.size() != pred.arity) {
        throw InvalidArgument("predicate '" + name + "' takes " + std::to_string(pred.arity) +
                              " points, got " + std::to_string(tuple.size()));
    }
    return pred.evaluator(build_sigma_matrix(wf, tuple));
}

}  // namespace tgeom
