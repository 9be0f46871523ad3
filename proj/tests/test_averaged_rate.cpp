#include "doctest.h"

#include <cmath>

#include "ldrwe/averaged_rate.hpp"
#include "ldrwe/errors.hpp"
#include "oracles.hpp"

using namespace ldrwe;

namespace {

const StepSet kWalk1d(1, {{1}, {-1}});
const StepKernel kUniform1d{{0.5, 0.5}};

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

TEST_CASE("log mgf values and derivatives") {
    Geometry g = Geometry::build(kWalk1d);
    auto at0 = log_mgf(vec1(0.0), kUniform1d, kWalk1d);
    CHECK(at0.value == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(at0.gradient(0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(at0.hessian(0, 0) == doctest::Approx(1.0).epsilon(1e-14)); // +-1 variance

    auto at1 = log_mgf(vec1(1.0), kUniform1d, kWalk1d);
    CHECK(at1.value == doctest::Approx(0.43378083048302719).epsilon(1e-14)); // log cosh 1
    CHECK(at1.gradient(0) == doctest::Approx(std::tanh(1.0)).epsilon(1e-14));
}

TEST_CASE("log mgf is stable at extreme tilts") {
    auto big = log_mgf(vec1(500.0), kUniform1d, kWalk1d);
    // log(0.5 e^500 + 0.5 e^-500) = 500 - log 2
    CHECK(big.value == doctest::Approx(500.0 - std::log(2.0)).epsilon(1e-14));
    CHECK(big.gradient(0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("lln velocity") {
    CHECK(lln_velocity(kUniform1d, kWalk1d)(0) == doctest::Approx(0.0));
    CHECK(lln_velocity(StepKernel{{0.9, 0.1}}, kWalk1d)(0) == doctest::Approx(0.8).epsilon(1e-15));
    StepSet seg(2, {{1, 0}, {0, 1}});
    Eigen::VectorXd v = lln_velocity(StepKernel{{0.25, 0.75}}, seg);
    CHECK(v(0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(v(1) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("rate solve at the lln velocity is zero with zero tilt") {
    Geometry g = Geometry::build(kWalk1d);
    RateSolution sol = rate_averaged(vec1(0.0), kUniform1d, kWalk1d, g);
    CHECK(sol.value <= 1e-12);
    CHECK(std::abs(sol.rho(0)) <= 1e-12);
    CHECK(sol.residual <= 1e-12);
}

TEST_CASE("closed-form anchor at xi = 0.5") {
    Geometry g = Geometry::build(kWalk1d);
    RateSolution sol = rate_averaged(vec1(0.5), kUniform1d, kWalk1d, g);
    // 0.75 ln 1.5 + 0.25 ln 0.5
    CHECK(sol.value == doctest::Approx(0.13081203594113696).epsilon(1e-12));
    CHECK(sol.rho(0) == doctest::Approx(0.54930614433405489).epsilon(1e-12)); // artanh(1/2)

    // independent route: brute-force Legendre of log cosh
    double oracle = oracles::legendre_1d([](double r) { return std::log(std::cosh(r)); }, 0.5);
    CHECK(std::abs(sol.value - oracle) < 1e-9);
}

TEST_CASE("two-point hull in d=2: binary KL closed form") {
    StepSet seg(2, {{1, 0}, {0, 1}});
    Geometry g = Geometry::build(seg);
    StepKernel uni{{0.5, 0.5}};
    RateSolution sol = rate_averaged(vec2(0.7, 0.3), uni, seg, g);
    CHECK(sol.value == doctest::Approx(0.082282878505051846).epsilon(1e-12));
    // canonical representative lies in L
    CHECK((sol.rho - g.project_tilt(sol.rho)).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("boundary velocities are rejected") {
    Geometry g = Geometry::build(kWalk1d);
    CHECK_THROWS_AS(rate_averaged(vec1(1.0), kUniform1d, kWalk1d, g), NotInRelativeInterior);
    CHECK_THROWS_AS(rate_averaged(vec1(1.3), kUniform1d, kWalk1d, g), NotInRelativeInterior);
    StepKernel holey{{1.0, 0.0}};
    CHECK_THROWS_AS(rate_averaged(vec1(0.0), holey, kWalk1d, g), ZeroProbabilityStep);
}

TEST_CASE("duality identity and nonnegativity on a grid") {
    Geometry g = Geometry::build(kWalk1d);
    for (int k = 0; k <= 20; ++k) {
        double xi = -0.9 + 0.09 * k;
        RateSolution sol = rate_averaged(vec1(xi), kUniform1d, kWalk1d, g);
        double log_phi = log_mgf(sol.rho, kUniform1d, kWalk1d).value;
        CHECK(std::abs(sol.value + log_phi - sol.rho(0) * xi) < 1e-10);
        CHECK(sol.value >= -1e-12);
        CHECK(sol.residual <= 1e-10);
        if (std::abs(xi) >= 0.1) CHECK(sol.value >= 1e-4);
    }
}

TEST_CASE("convexity along the grid") {
    Geometry g = Geometry::build(kWalk1d);
    auto rate = [&](double xi) { return rate_averaged(vec1(xi), kUniform1d, kWalk1d, g).value; };
    for (double a = -0.8; a < 0.8; a += 0.16) {
        for (double b = a + 0.1; b < 0.85; b += 0.16) {
            double t = 0.375;
            CHECK(rate(t * a + (1 - t) * b) <= t * rate(a) + (1 - t) * rate(b) + 1e-9);
        }
    }
}

TEST_CASE("gradient matches central finite differences") {
    StepSet square(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    StepKernel q{{0.1, 0.2, 0.3, 0.4}};
    for (double r0 : {-1.0, 0.3, 2.0}) {
        Eigen::VectorXd rho = vec2(r0, 0.5 * r0 - 0.2);
        auto mg = log_mgf(rho, q, square);
        const double h = 6e-6;
        for (int k = 0; k < 2; ++k) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(2);
            e(k) = h;
            double fd = (log_mgf(rho + e, q, square).value - log_mgf(rho - e, q, square).value) / (2 * h);
            CHECK(std::abs(mg.gradient(k) - fd) / std::max(1.0, std::abs(fd)) < 1e-6);
        }
    }
}

TEST_CASE("tilted kernel basics") {
    CHECK(tilted_step_kernel(vec1(0.0), kUniform1d, kWalk1d)[0] == doctest::Approx(0.5).epsilon(1e-15));
    StepKernel t = tilted_step_kernel(vec1(0.54930614433405489), kUniform1d, kWalk1d);
    CHECK(t[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(t[1] == doctest::Approx(0.25).epsilon(1e-12));
    // tilted mean equals the dual gradient
    auto mg = log_mgf(vec1(0.7), kUniform1d, kWalk1d);
    StepKernel t2 = tilted_step_kernel(vec1(0.7), kUniform1d, kWalk1d);
    CHECK(t2[0] - t2[1] == doctest::Approx(mg.gradient(0)).epsilon(1e-13));
}

TEST_CASE("tilts are identified modulo L-perp") {
    StepSet seg(2, {{1, 0}, {0, 1}});
    Geometry g = Geometry::build(seg);
    StepKernel q{{0.6, 0.4}};
    Eigen::VectorXd rho = vec2(0.8, -0.1);
    StepKernel base = tilted_step_kernel(rho, q, seg);
    for (int c = 0; c < g.lperp_basis().cols(); ++c) {
        StepKernel shifted = tilted_step_kernel(rho + 2.3 * g.lperp_basis().col(c), q, seg);
        for (int z = 0; z < seg.size(); ++z) {
            CHECK(std::abs(shifted[z] - base[z]) < 1e-12);
        }
    }
}
