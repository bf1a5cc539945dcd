#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "cavopt/fock_oracle.hpp"

using namespace cavopt;
using std::complex;

TEST_CASE("spec validation") {
    OneModeSpec s;
    s.n_max = 3;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.n_max = 10;
    s.kappa = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    TwoModeSpec t;
    t.cavity_cutoff = 1;
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}

TEST_CASE("trace functional is a left null vector of the Liouvillian") {
    OneModeSpec s;
    s.detuning = 0.7;
    s.kerr = 0.3;
    s.zeta = 0.05;
    s.mu = 0.02;
    s.drive = complex<double>(0.4, 0.1);
    s.n_th = 0.2;
    s.n_max = 8;
    const SparseOp L = build_liouvillian(s);
    const int dim = s.n_max + 1;
    Eigen::VectorXcd tr = Eigen::VectorXcd::Zero(dim * dim);
    for (int n = 0; n < dim; ++n) tr(n * dim + n) = 1.0;  // vec(I), column-major
    const double scale = Eigen::MatrixXcd(L).cwiseAbs().maxCoeff();
    CHECK((L.adjoint() * tr).norm() / scale < 1e-12);
}

TEST_CASE("undriven cavity relaxes to vacuum") {
    OneModeSpec s;
    s.n_max = 6;
    const SteadyDensity rho = steady_density(build_liouvillian(s));
    CHECK(rho.trace_error < 1e-12);
    CHECK(std::abs(rho.rho(0, 0) - 1.0) < 1e-12);
    const Expectations e = expectations(rho);
    CHECK(e.n < 1e-13);
    CHECK_FALSE(e.g2_valid);
}

TEST_CASE("steady density invariants") {
    OneModeSpec s;
    s.detuning = -2.0;
    s.kerr = 0.4;
    s.zeta = 0.08;
    s.drive = 0.9;
    s.n_max = 30;
    const SteadyDensity rho = steady_density(build_liouvillian(s));
    CHECK(rho.trace_error < 1e-12);
    CHECK(rho.min_eigenvalue > -1e-8);
    CHECK(rho.residual < 1e-10);
    CHECK((rho.rho - rho.rho.adjoint()).norm() < 1e-12);
}

TEST_CASE("linear drive gives a coherent state") {
    OneModeSpec s;
    s.detuning = 1.5;
    s.drive = complex<double>(0.8, -0.3);
    s.n_max = 25;
    const SteadyDensity rho = steady_density(build_liouvillian(s));
    const Expectations e = expectations(rho);
    const double n_expect = std::norm(s.drive) /
                            (s.kappa * s.kappa + s.detuning * s.detuning);
    CHECK(e.n == doctest::Approx(n_expect).epsilon(1e-8));
    CHECK(e.g2_0 == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(e.mean_c) == doctest::Approx(std::sqrt(n_expect)).epsilon(1e-8));
}

TEST_CASE("pure thermal state") {
    OneModeSpec s;
    s.n_th = 0.5;
    s.n_max = 45;
    const Expectations e = expectations(steady_density(build_liouvillian(s)));
    CHECK(e.n == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(e.g2_0 == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(std::abs(e.mean_c) < 1e-10);
}

TEST_CASE("photon blockade in the strong-Kerr weak-drive regime") {
    OneModeSpec s;
    s.detuning = 0.0;
    s.kerr = 30.0;
    s.drive = 0.3;
    s.n_max = 12;
    const Expectations e = expectations(steady_density(build_liouvillian(s)));
    CHECK(e.g2_0 < 0.5);
    CHECK(e.g2_0 < 0.05);  // deep blockade for kerr/kappa = 30
}

TEST_CASE("truncation check converges quickly on easy problems") {
    OneModeSpec s;
    s.n_max = 4;
    const TruncationResult vac = truncation_check(s, OracleObservable::photon_number);
    CHECK(vac.cutoff <= 8);
    CHECK(vac.value < 1e-13);

    OneModeSpec coh;
    coh.drive = 1.0;  // n = 1 coherent state
    coh.n_max = 4;
    const TruncationResult c = truncation_check(coh, OracleObservable::photon_number);
    CHECK(c.value == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(c.cutoff <= 25);

    OneModeSpec blockade;
    blockade.kerr = 30.0;
    blockade.drive = 0.3;
    blockade.n_max = 4;
    const TruncationResult b = truncation_check(blockade, OracleObservable::g2);
    CHECK(b.cutoff <= 12);
    CHECK(b.value < 0.5);
}

TEST_CASE("truncation check reports non-convergence at the cap") {
    OneModeSpec s;
    s.drive = 40.0;  // n ~ 1600, far beyond any reasonable cutoff
    s.n_max = 4;
    CHECK_THROWS_AS(truncation_check(s, OracleObservable::photon_number, 1e-8, 40),
                    std::runtime_error);
}

TEST_CASE("two-mode oracle: decoupled and undriven limits") {
    TwoModeSpec s;
    s.delta_b = 50.0;
    s.G = 0.0;
    s.chi = 3.0;
    s.gamma = 10.0;
    s.cavity_cutoff = 3;
    s.collective_cutoff = 6;
    const TwoModeResult decoupled = two_mode_oracle(s);
    CHECK(decoupled.n_cavity < 1e-10);  // cavity stays in vacuum
    CHECK(decoupled.n_collective ==
          doctest::Approx(s.chi * s.chi /
                          (s.gamma * s.gamma / 4.0 + s.delta_b * s.delta_b))
              .epsilon(1e-6));

    s.G = 1.0;
    s.chi = 0.0;
    const TwoModeResult undriven = two_mode_oracle(s);
    CHECK(undriven.n_cavity < 1e-10);
    CHECK(undriven.n_collective < 1e-10);
}

TEST_CASE("two-mode oracle matches the adiabatically eliminated model") {
    TwoModeSpec s;
    s.delta_c = 0.0;
    s.delta_b = 5000.0;
    s.G = 2.0;
    s.chi = 100.0;
    s.kappa = 1.0;
    s.gamma = 100.0;
    s.cavity_cutoff = 5;
    s.collective_cutoff = 4;
    const TwoModeResult r = two_mode_oracle(s);
    const double f = -s.G * s.chi / s.delta_b;
    const double delta_eff = s.delta_c - s.G * s.G / s.delta_b;
    const double n_pred = f * f / (s.kappa * s.kappa / 4.0 + delta_eff * delta_eff);
    CHECK(r.n_cavity == doctest::Approx(6.399139e-3).epsilon(1e-4));
    CHECK(std::abs(r.n_cavity - n_pred) / n_pred < 0.10);
    CHECK(r.residual < 1e-10);
}
