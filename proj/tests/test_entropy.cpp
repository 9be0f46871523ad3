#include "doctest.h"

#include <cmath>
#include <limits>

#include "ldrwe/config.hpp"
#include "ldrwe/entropy.hpp"
#include "ldrwe/errors.hpp"
#include "ldrwe/quenched_rate.hpp"

using namespace ldrwe;

namespace {

const StepSet kWalk1d(1, {{1}, {-1}});
const StepKernel kUniform1d{{0.5, 0.5}};
const KernelMixture kSymBinary = preset("symmetric-binary").make_environment().mixture;

Eigen::VectorXd vec1(double x) {
    Eigen::VectorXd v(1);
    v << x;
    return v;
}

} // namespace

TEST_CASE("relative entropy basics") {
    CHECK(rel_entropy(kUniform1d, kUniform1d) == 0.0);
    CHECK(rel_entropy(StepKernel{{0.75, 0.25}}, kUniform1d) ==
          doctest::Approx(0.13081203594113696).epsilon(1e-13));
    CHECK(rel_entropy(StepKernel{{1.0, 0.0}}, kUniform1d) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
    // charging a null step yields the exact infinity value
    double inf = rel_entropy(StepKernel{{0.5, 0.5}}, StepKernel{{1.0, 0.0}});
    CHECK(inf == std::numeric_limits<double>::infinity());
    // zero iff equal, and never negative
    CHECK(rel_entropy(StepKernel{{0.3, 0.7}}, StepKernel{{0.30000000001, 0.69999999999}}) >= 0.0);
}

TEST_CASE("decomposition at the lln velocity is trivial") {
    Geometry g = Geometry::build(kWalk1d);
    EntropyReport rep = sc_entropy_decomposition(vec1(0.0), kSymBinary, kWalk1d, g);
    CHECK(std::abs(rep.h_env) < 1e-12);
    CHECK(std::abs(rep.h_q) < 1e-12);
    CHECK(rep.residual < 1e-12);
}

TEST_CASE("decomposition anchor at xi = tanh(1)") {
    Geometry g = Geometry::build(kWalk1d);
    const double xi = std::tanh(1.0);
    EntropyReport rep = sc_entropy_decomposition(vec1(xi), kSymBinary, kWalk1d, g);
    CHECK(rep.rho(0) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(rep.h_env == doctest::Approx(0.19924152905358053).epsilon(1e-11));
    CHECK(rep.h_q == doctest::Approx(0.12857179641915717).epsilon(1e-11));
    CHECK(rep.i_avg == doctest::Approx(0.32781332547273770).epsilon(1e-11));
    CHECK(rep.residual < 1e-10);

    // the direct kernel-entropy route agrees with the closed form
    double closed = rep.rho(0) * xi - std::log(std::cosh(rep.rho(0))) - rep.h_env;
    CHECK(std::abs(rep.h_q - closed) < 1e-12);
}

TEST_CASE("single-atom mixture has zero environment entropy") {
    Geometry g = Geometry::build(kWalk1d);
    KernelMixture single;
    single.weights = {1.0};
    single.atoms = {StepKernel{{0.5, 0.5}}};
    for (double xi : {0.2, 0.5, -0.6}) {
        EntropyReport rep = sc_entropy_decomposition(vec1(xi), single, kWalk1d, g);
        CHECK(rep.h_env == 0.0);
        CHECK(rep.residual < 1e-10);
        CHECK(std::abs(rep.i_quenched - rep.i_avg) < 1e-10);
    }
}

TEST_CASE("decomposition residual stays small across a grid and mixtures") {
    Geometry g = Geometry::build(kWalk1d);
    KernelMixture asym;
    asym.weights = {0.3, 0.7};
    asym.atoms = {StepKernel{{0.8, 0.2}}, StepKernel{{0.2, 0.8}}};
    KernelMixture three;
    three.weights = {0.25, 0.5, 0.25};
    three.atoms = {StepKernel{{0.7, 0.3}}, StepKernel{{0.5, 0.5}}, StepKernel{{0.2, 0.8}}};
    for (const auto& mix : {kSymBinary, asym, three}) {
        Eigen::VectorXd center = lln_velocity(averaged_kernel(mix), kWalk1d);
        for (int k = 0; k <= 19; ++k) {
            double t = -0.85 + 0.09 * k;
            Eigen::VectorXd xi = vec1(center(0) + t * (0.95 - std::abs(center(0))));
            EntropyReport rep = sc_entropy_decomposition(xi, mix, kWalk1d, g);
            CHECK(rep.residual <= 1e-10);
            CHECK(rep.h_env >= -1e-12);
            CHECK(rep.h_q >= -1e-12);
            // chain: H_q(mu) <= I_avg <= I_quenched
            CHECK(rep.h_q <= rep.i_avg + 1e-10);
            CHECK(rep.i_avg <= rep.i_quenched + 1e-10);
        }
    }
}

TEST_CASE("environment entropy is positive away from the lln velocity") {
    Geometry g = Geometry::build(kWalk1d);
    for (double xi : {0.2, 0.5, -0.5, 0.8}) {
        EntropyReport rep = sc_entropy_decomposition(vec1(xi), kSymBinary, kWalk1d, g);
        CHECK(rep.h_env > 1e-6);
    }
}

TEST_CASE("hq of the quenched minimizer equals the quenched rate") {
    Geometry g = Geometry::build(kWalk1d);
    for (double xi : {0.0, 0.3, 0.5, -0.7}) {
        double h = hq_nu(vec1(xi), kSymBinary, kWalk1d, g);
        RateSolution q = rate_quenched(vec1(xi), kSymBinary, kWalk1d, g);
        CHECK(std::abs(h - q.value) < 1e-10);
    }
    // single atom: equals the averaged rate
    KernelMixture single;
    single.weights = {1.0};
    single.atoms = {StepKernel{{0.5, 0.5}}};
    double h = hq_nu(vec1(0.5), single, kWalk1d, g);
    CHECK(std::abs(h - 0.13081203594113696) < 1e-10);
}

TEST_CASE("finite-n specific entropy is exactly linear") {
    Geometry g = Geometry::build(kWalk1d);
    CHECK(finite_n_specific_entropy(vec1(0.0), kUniform1d, kWalk1d, g, 4) < 1e-12);
    double h1 = finite_n_specific_entropy(vec1(0.5), kUniform1d, kWalk1d, g, 1);
    double h3 = finite_n_specific_entropy(vec1(0.5), kUniform1d, kWalk1d, g, 3);
    double h5 = finite_n_specific_entropy(vec1(0.5), kUniform1d, kWalk1d, g, 5);
    CHECK(h1 == doctest::Approx(0.13081203594113696).epsilon(1e-11));
    CHECK(std::abs(h1 - h3) < 1e-12);
    CHECK(std::abs(h1 - h5) < 1e-12);
    CHECK_THROWS_AS(finite_n_specific_entropy(vec1(0.5), kUniform1d, kWalk1d, g, 40), CapExceeded);
}

TEST_CASE("zero-entry atoms are rejected") {
    Geometry g = Geometry::build(kWalk1d);
    KernelMixture mix;
    mix.weights = {0.5, 0.5};
    mix.atoms = {StepKernel{{1.0, 0.0}}, StepKernel{{0.5, 0.5}}};
    CHECK_THROWS_AS(sc_entropy_decomposition(vec1(0.3), mix, kWalk1d, g), ZeroProbabilityStep);
}
