#pragma once

// Shared vocabulary: points, point tuples, vectors and σ-tables.

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tgeom {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point is not in the geometry's domain (wrong dimension, id out of range,
/// outside a region, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A caller-supplied parameter violates a precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An operation needed √(2σ) but σ was negative.
class NegativeSigmaError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Identifier of a point in a tabulated geometry.
struct PointId {
    std::size_t value = 0;
    friend bool operator==(PointId, PointId) = default;
};

using Coordinates = std::vector<double>;

/// Either a coordinate vector in ambient space or a discrete id into a table.
class Point {
public:
    Point() : repr_(Coordinates{}) {}
    Point(Coordinates coords) : repr_(std::move(coords)) {}
    Point(std::initializer_list<double> coords) : repr_(Coordinates(coords)) {}
    Point(PointId id) : repr_(id) {}

    static Point id(std::size_t value) { return Point(PointId{value}); }

    bool is_coordinate() const { return std::holds_alternative<Coordinates>(repr_); }
    bool is_discrete() const { return std::holds_alternative<PointId>(repr_); }

    const Coordinates& coords() const { return std::get<Coordinates>(repr_); }
    std::size_t index() const { return std::get<PointId>(repr_).value; }

    std::size_t dimension() const { return is_coordinate() ? coords().size() : 0; }

    friend bool operator==(const Point&, const Point&) = default;

private:
    std::variant<Coordinates, PointId> repr_;
};

/// Ordered points P_0 … P_n that a relation depends on.
using PointTuple = std::vector<Point>;

/// The ordered pair (tail, head) denoting vector **PQ**.
struct VectorPQ {
    Point tail;
    Point head;
    friend bool operator==(const VectorPQ&, const VectorPQ&) = default;
};

/// n×n table of world-function values σ(P_i, P_k) over a point tuple.
///
/// The diagonal is exactly zero. When `ordered()` is false the table is
/// symmetric bit for bit; otherwise σ(P_i,P_k) and σ(P_k,P_i) are stored
/// independently.
class SigmaMatrix {
public:
    SigmaMatrix() = default;

    /// Row-major values; throws InvalidArgument unless square with an exactly
    /// zero diagonal (and symmetric when `ordered` is false).
    SigmaMatrix(std::size_t n, std::vector<double> values, bool ordered)
        : n_(n), values_(std::move(values)), ordered_(ordered) {
        if (values_.size() != n_ * n_) {
            throw InvalidArgument("sigma matrix: expected " + std::to_string(n_ * n_) +
                                  " values, got " + std::to_string(values_.size()));
        }
        for (std::size_t i = 0; i < n_; ++i) {
            if (values_[i * n_ + i] != 0.0) {
                throw InvalidArgument("sigma matrix: nonzero diagonal at index " +
                                      std::to_string(i));
            }
            if (!ordered_) {
                for (std::size_t k = i + 1; k < n_; ++k) {
                    if (values_[i * n_ + k] != values_[k * n_ + i]) {
                        throw InvalidArgument("sigma matrix: declared symmetric but entry (" +
                                              std::to_string(i) + "," + std::to_string(k) +
                                              ") differs from its transpose");
                    }
                }
            }
        }
    }

    std::size_t size() const { return n_; }
    bool ordered() const { return ordered_; }

    double operator()(std::size_t i, std::size_t k) const { return values_[i * n_ + k]; }

    const std::vector<double>& values() const { return values_; }

    friend bool operator==(const SigmaMatrix&, const SigmaMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> values_;
    bool ordered_ = false;
};

inline std::string describe(const Point& p) {
    if (p.is_discrete()) {
        return "#" + std::to_string(p.index());
    }
    std::string out = "(";
    for (std::size_t i = 0; i < p.coords().size(); ++i) {
        if (i) out += ",";
        out += std::to_string(p.coords()[i]);
    }
    return out + ")";
}

}  // namespace tgeom
