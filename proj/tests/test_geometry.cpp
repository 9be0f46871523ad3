#include "doctest.h"

#include <algorithm>

#include "ldrwe/errors.hpp"
#include "ldrwe/geometry.hpp"
#include "ldrwe/rng.hpp"

using namespace ldrwe;

namespace {

Eigen::VectorXd vec1(double x) {
    Eigen::VectorXd v(1);
    v << x;
    return v;
}

Eigen::VectorXd vec2(double x, double y) {
    Eigen::VectorXd v(2);
    v << x, y;
    return v;
}

} // namespace

TEST_CASE("step set invariants") {
    CHECK_THROWS_AS(StepSet(1, {{1}}), ConfigError);          // too few
    CHECK_THROWS_AS(StepSet(1, {{1}, {1}}), ConfigError);     // duplicate
    CHECK_THROWS_AS(StepSet(2, {{1}, {0, 1}}), ConfigError);  // dim mismatch
    StepSet ok(1, {{-1}, {1}});
    CHECK(ok.size() == 2);
    CHECK(ok.index_of({1}) == 1);
    CHECK(ok.index_of({7}) == -1);
}

TEST_CASE("geometry of the 1-d full segment") {
    StepSet steps(1, {{-1}, {1}});
    Geometry g = Geometry::build(steps);
    CHECK(g.hull_dim() == 1);
    CHECK(g.lperp_basis().cols() == 0);
    CHECK(g.extreme_points() == std::vector<int>{0, 1});
    // full-dimensional: project_tilt is the identity
    CHECK(g.project_tilt(vec1(3.7))(0) == doctest::Approx(3.7).epsilon(1e-14));
}

TEST_CASE("geometry of a two-point affine hull in d=2") {
    StepSet steps(2, {{1, 0}, {0, 1}});
    Geometry g = Geometry::build(steps);
    CHECK(g.hull_dim() == 1);
    REQUIRE(g.l_basis().cols() == 1);
    REQUIRE(g.lperp_basis().cols() == 1);
    // L is spanned by (1,-1)/sqrt(2) up to sign
    Eigen::VectorXd l = g.l_basis().col(0);
    CHECK(std::abs(std::abs(l(0)) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(l(0) * l(1) < 0);
    // rho = (3,3) lies in L-perp
    CHECK(g.project_tilt(vec2(3, 3)).norm() < 1e-12);
    // orthogonal projection of (1,0) onto L is (0.5,-0.5)
    Eigen::VectorXd p = g.project_tilt(vec2(1, 0));
    CHECK(p(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p(1) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("unit square: full hull, all four steps extreme") {
    StepSet steps(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    Geometry g = Geometry::build(steps);
    CHECK(g.hull_dim() == 2);
    CHECK(g.extreme_points() == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("interior point of the square is not extreme") {
    StepSet steps(2, {{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}});
    Geometry g = Geometry::build(steps);
    CHECK(g.extreme_points() == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("collinear steps collapse to a one-dimensional hull") {
    StepSet steps(2, {{0, 0}, {2, 2}, {4, 4}, {1, 1}});
    Geometry g = Geometry::build(steps);
    CHECK(g.hull_dim() == 1);
    CHECK(g.extreme_points() == std::vector<int>{0, 2}); // endpoints of the segment
    Eigen::VectorXd mid(2);
    mid << 1.5, 1.5;
    CHECK(in_relative_interior(mid, g, steps));
    Eigen::VectorXd end(2);
    end << 4.0, 4.0;
    CHECK_FALSE(in_relative_interior(end, g, steps));
}

TEST_CASE("relative interior membership") {
    StepSet steps(1, {{-1}, {1}});
    Geometry g = Geometry::build(steps);
    CHECK(in_relative_interior(vec1(0.0), g, steps));
    CHECK_FALSE(in_relative_interior(vec1(1.0), g, steps));   // extreme point
    CHECK_FALSE(in_relative_interior(vec1(1.5), g, steps));   // outside hull
    CHECK(in_relative_interior(vec1(0.999), g, steps));

    StepSet seg(2, {{1, 0}, {0, 1}});
    Geometry gs = Geometry::build(seg);
    CHECK(in_relative_interior(vec2(0.5, 0.5), gs, seg));
    CHECK_FALSE(in_relative_interior(vec2(0.5, 0.6), gs, seg)); // off the affine hull
    CHECK_FALSE(in_relative_interior(vec2(1, 0), gs, seg));
}

TEST_CASE("relative interior is invariant under step reordering") {
    StepSet a(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    StepSet b(2, {{1, 1}, {0, 1}, {1, 0}, {0, 0}});
    Geometry ga = Geometry::build(a);
    Geometry gb = Geometry::build(b);
    rng::Stream s(2024);
    for (int i = 0; i < 50; ++i) {
        Eigen::VectorXd xi = vec2(s.next_u01() * 1.4 - 0.2, s.next_u01() * 1.4 - 0.2);
        CHECK(in_relative_interior(xi, ga, a) == in_relative_interior(xi, gb, b));
    }
}

TEST_CASE("projection splits rho orthogonally") {
    StepSet steps(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {2, 0, 0}});
    Geometry g = Geometry::build(steps);
    rng::Stream s(7);
    for (int i = 0; i < 100; ++i) {
        Eigen::VectorXd rho(3);
        rho << s.next_u01() * 4 - 2, s.next_u01() * 4 - 2, s.next_u01() * 4 - 2;
        Eigen::VectorXd p = g.project_tilt(rho);
        Eigen::VectorXd q = rho - p;
        CHECK((p + q - rho).lpNorm<Eigen::Infinity>() < 1e-12);
        CHECK(std::abs(p.dot(q)) < 1e-12);
    }
}

TEST_CASE("lperp basis annihilates step differences") {
    StepSet steps(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {2, 0, 0}});
    Geometry g = Geometry::build(steps);
    CHECK(g.hull_dim() == 2);
    for (int c = 0; c < g.lperp_basis().cols(); ++c) {
        Eigen::VectorXd v = g.lperp_basis().col(c);
        for (int i = 0; i < steps.size(); ++i) {
            for (int j = 0; j < steps.size(); ++j) {
                CHECK(std::abs(v.dot(steps.step_vector(i) - steps.step_vector(j))) < 1e-12);
            }
        }
    }
}
