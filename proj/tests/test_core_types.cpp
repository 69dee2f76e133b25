#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tgeom/geometries.hpp"
#include "tgeom/world_function.hpp"

using namespace tgeom;

TEST(SigmaMatrix, TwoPointEuclidean) {
    const auto m = build_sigma_matrix(euclidean_sigma(2), {{0.0, 0.0}, {1.0, 0.0}});
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m(0, 0), 0.0);
    EXPECT_EQ(m(0, 1), 0.5);
    EXPECT_EQ(m(1, 0), 0.5);
    EXPECT_EQ(m(1, 1), 0.0);
    EXPECT_FALSE(m.ordered());
}

TEST(SigmaMatrix, SinglePointIsZero) {
    for (const auto& wf : {euclidean_sigma(3), sphere_sigma(2.0)}) {
        const auto m = build_sigma_matrix(wf, {{0.3, -0.2, 0.9}});
        ASSERT_EQ(m.size(), 1u);
        EXPECT_EQ(m(0, 0), 0.0);
    }
}

TEST(SigmaMatrix, MatchesCoordinateBruteForce) {
    std::mt19937_64 rng(7);
    PointTuple tuple;
    std::vector<oracle::Vec> raw;
    for (int i = 0; i < 4; ++i) {
        raw.push_back(oracle::random_point(rng, 3, -5, 5));
        tuple.emplace_back(raw.back());
    }
    const auto m = build_sigma_matrix(euclidean_sigma(3), tuple);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t k = 0; k < 4; ++k) {
            EXPECT_NEAR(m(i, k), oracle::half_sq_dist(raw[i], raw[k]), 1e-12);
        }
    }
}

TEST(SigmaMatrix, RejectsOffendingIndex) {
    try {
        build_sigma_matrix(euclidean_sigma(2), {{0.0, 0.0}, {1.0, 0.0}, {1.0, 2.0, 3.0}});
        FAIL() << "expected DomainError";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("point 2"), std::string::npos) << e.what();
    }
    EXPECT_THROW(build_sigma_matrix(tabulated_sigma({{0.0, 1.0}, {1.0, 0.0}}), {Point::id(0), Point::id(2)}),
                 DomainError);
    EXPECT_THROW(build_sigma_matrix(euclidean_sigma(2), {Point::id(0)}), DomainError);
    EXPECT_THROW(build_sigma_matrix(euclidean_sigma(2), {}), InvalidArgument);
}

TEST(SigmaMatrix, SymmetricBitForBitAndPure) {
    std::mt19937_64 rng(11);
    PointTuple tuple;
    for (int i = 0; i < 6; ++i) tuple.emplace_back(oracle::random_point(rng, 3));
    for (const auto& wf : {euclidean_sigma(3), distorted_sigma(euclidean_sigma(3), {0.1}), sphere_sigma(1.0)}) {
        const auto a = build_sigma_matrix(wf, tuple);
        const auto b = build_sigma_matrix(wf, tuple);
        EXPECT_EQ(a, b);
        for (std::size_t i = 0; i < a.size(); ++i) {
            EXPECT_EQ(a(i, i), 0.0);
            for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a(i, k), a(k, i));
        }
    }
}

TEST(SigmaMatrix, OrderedTableKeepsBothEntries) {
    const auto wf = tabulated_sigma({{0.0, 1.0, 2.0}, {3.0, 0.0, 4.0}, {2.0, 4.0, 0.0}});
    const auto m = build_sigma_matrix(wf, identity_tuple(3));
    EXPECT_TRUE(m.ordered());
    EXPECT_EQ(m(0, 1), 1.0);
    EXPECT_EQ(m(1, 0), 3.0);
}

TEST(SigmaMatrix, ConstructorValidates) {
    EXPECT_THROW(SigmaMatrix(2, {0.0, 1.0, 1.0}, false), InvalidArgument);
    EXPECT_THROW(SigmaMatrix(2, {0.5, 1.0, 1.0, 0.0}, false), InvalidArgument);
    EXPECT_THROW(SigmaMatrix(2, {0.0, 1.0, 2.0, 0.0}, false), InvalidArgument);
    EXPECT_NO_THROW(SigmaMatrix(2, {0.0, 1.0, 2.0, 0.0}, true));
}

TEST(Point, VariantsAndEquality) {
    const Point a{1.0, 2.0};
    const Point b = Point::id(3);
    EXPECT_TRUE(a.is_coordinate());
    EXPECT_TRUE(b.is_discrete());
    EXPECT_EQ(b.index(), 3u);
    EXPECT_EQ(a.dimension(), 2u);
    EXPECT_EQ(a, (Point{1.0, 2.0}));
    EXPECT_NE(a, b);
    EXPECT_EQ(describe(b), "#3");
}
