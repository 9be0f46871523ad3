#include "doctest.h"

#include "ldrwe/linprog.hpp"

using namespace ldrwe;

TEST_CASE("lp: simple bounded minimum") {
    // min x0 + x1 s.t. x0 + 2 x1 = 4, x >= 0  -> x = (0, 2), obj 2
    Eigen::MatrixXd A(1, 2);
    A << 1, 2;
    Eigen::VectorXd b(1);
    b << 4;
    Eigen::VectorXd c(2);
    c << 1, 1;
    auto res = linprog::solve(A, b, c);
    REQUIRE(res.status == linprog::LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(res.solution(1) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("lp: infeasible system detected") {
    // x0 = 1 and x0 = 2 cannot both hold
    Eigen::MatrixXd A(2, 1);
    A << 1, 1;
    Eigen::VectorXd b(2);
    b << 1, 2;
    auto res = linprog::solve(A, b, Eigen::VectorXd::Zero(1));
    CHECK(res.status == linprog::LpStatus::Infeasible);
}

TEST_CASE("lp: unbounded objective detected") {
    // min -x0 s.t. x0 - x1 = 0: x0 can grow without bound
    Eigen::MatrixXd A(1, 2);
    A << 1, -1;
    Eigen::VectorXd b(1);
    b << 0;
    Eigen::VectorXd c(2);
    c << -1, 0;
    auto res = linprog::solve(A, b, c);
    CHECK(res.status == linprog::LpStatus::Unbounded);
}

TEST_CASE("lp: redundant but consistent rows are fine") {
    Eigen::MatrixXd A(2, 2);
    A << 1, 1, 2, 2;
    Eigen::VectorXd b(2);
    b << 1, 2;
    Eigen::VectorXd c(2);
    c << 0, 1;
    auto res = linprog::solve(A, b, c);
    REQUIRE(res.status == linprog::LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(res.solution(0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("lp: negative rhs handled by row flip") {
    // x0 - x1 = -3, x0 + x1 = 5 -> x = (1, 4)
    Eigen::MatrixXd A(2, 2);
    A << 1, -1, 1, 1;
    Eigen::VectorXd b(2);
    b << -3, 5;
    Eigen::VectorXd c(2);
    c << 1, 0;
    auto res = linprog::solve(A, b, c);
    REQUIRE(res.status == linprog::LpStatus::Optimal);
    CHECK(res.solution(0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(res.solution(1) == doctest::Approx(4.0).epsilon(1e-10));
}
