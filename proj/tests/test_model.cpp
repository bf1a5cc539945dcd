#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "cavopt/model.hpp"

using namespace cavopt;

namespace {
SystemParams fig3_params(double g) {
    SystemParams p;
    p.omega_c = 0.0;
    p.omega_a = 60.0;
    p.omega_f = 0.0;
    p.g = g;
    p.Omega = 0.1;
    p.N = 10000;
    p.kappa = 1.0;
    return p;
}
}  // namespace

TEST_CASE("thermal occupation limits and closed forms") {
    CHECK(thermal_occupation(1.0, 0.0) == 0.0);
    // T = 1/ln 2 makes exp(omega/T) = 2
    CHECK(thermal_occupation(1.0, 1.0 / std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-12));
    // high-T expansion 1/(e^x - 1) ~ 1/x - 1/2
    CHECK(thermal_occupation(1.0, 1e6) == doctest::Approx(1e6 - 0.5).epsilon(0.01));
    CHECK_THROWS_AS(thermal_occupation(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(thermal_occupation(-1.0, 1.0), std::domain_error);
}

TEST_CASE("thermal occupation monotonicity") {
    double prev = thermal_occupation(1.0, 0.1);
    for (double T : {0.5, 1.0, 2.0, 10.0, 100.0}) {
        const double n = thermal_occupation(1.0, T);
        CHECK(n > prev);
        prev = n;
    }
    prev = thermal_occupation(0.1, 1.0);
    for (double w : {0.5, 1.0, 2.0, 10.0}) {
        const double n = thermal_occupation(w, 1.0);
        CHECK(n < prev);
        prev = n;
    }
}

TEST_CASE("linear model: ensemble shift and induced drive") {
    SystemParams p;
    p.omega_c = 0.0;
    p.omega_a = 5e4;
    p.omega_f = 0.0;
    p.g = 1.0;
    p.Omega = 1.0;
    p.N = 10000;
    const LinearEffectiveModel m = derive_linear_model(p);
    CHECK(m.G == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(m.chi == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(m.delta_shift == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(m.omega_eff0 == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK(m.f == doctest::Approx(-0.2).epsilon(1e-12));
}

TEST_CASE("linear model: no coupling means no induced terms") {
    SystemParams p = fig3_params(0.0);
    const LinearEffectiveModel m = derive_linear_model(p);
    CHECK(m.f == 0.0);
    CHECK(m.delta_shift == 0.0);
}

TEST_CASE("nonlinear coefficients at the antibunching working point") {
    const NonlinearEffectiveModel m = derive_nonlinear_model(fig3_params(1.0));
    CHECK(m.chi_kerr == doctest::Approx(4.6296296296296294e-2).epsilon(1e-12));
    CHECK(m.mu == doctest::Approx(4.62962962962963e-4).epsilon(1e-12));
    CHECK(m.zeta == doctest::Approx(9.259259259259259e-3).epsilon(1e-12));
    CHECK(m.F == doctest::Approx(-16.661944444444448).epsilon(1e-12));
    CHECK(m.delta_eff1 ==
          doctest::Approx(-166.6185185185185).epsilon(1e-12));
}

TEST_CASE("undriven ensemble keeps only the Kerr term") {
    SystemParams p = fig3_params(1.0);
    p.Omega = 0.0;
    const NonlinearEffectiveModel m = derive_nonlinear_model(p);
    CHECK(m.mu == 0.0);
    CHECK(m.zeta == 0.0);
    CHECK(m.F == 0.0);
    CHECK(m.chi_kerr == doctest::Approx(4.6296296296296294e-2).epsilon(1e-12));
}

TEST_CASE("kerr reduction") {
    const KerrModel k = reduce_kerr(derive_nonlinear_model(fig3_params(1.0)));
    CHECK(k.delta_eff_k == doctest::Approx(-166.62037037037035).epsilon(1e-12));
    CHECK(k.F_prime ==
          doctest::Approx(-10000.0 * 0.1 / 60.0 + 9.259259259259259e-3 / 2.0)
              .epsilon(1e-12));
}

TEST_CASE("squeeze reduction") {
    SystemParams p;
    p.omega_c = 1.0;
    p.omega_a = 60.0;
    p.omega_f = 0.0;
    p.g = 0.1;
    p.Omega = 10.0;
    p.N = 10000;
    const SqueezeModel s = reduce_squeeze(derive_nonlinear_model(p));
    CHECK(s.mu == doctest::Approx(4.6296296296296294e-2).epsilon(1e-12));
    CHECK(s.delta_eff_s ==
          doctest::Approx(1.0 - 100.0 / 60.0 + 4.0 * s.mu).epsilon(1e-12));
    CHECK(s.F_dprime ==
          doctest::Approx(-10000.0 * 0.1 * 10.0 / 60.0 +
                          2.0 * 10000.0 * 0.1 * 1000.0 / 216000.0)
              .epsilon(1e-12));
}

TEST_CASE("exact identity zeta^2 = 4 chi_kerr mu") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> unif(0.05, 3.0);
    for (int i = 0; i < 50; ++i) {
        SystemParams p;
        p.omega_a = 40.0 + 100.0 * unif(rng);
        p.g = unif(rng);
        p.Omega = unif(rng);
        p.N = 1 + (rng() % 100000);
        const NonlinearEffectiveModel m = derive_nonlinear_model(p);
        CHECK(m.zeta * m.zeta ==
              doctest::Approx(4.0 * m.chi_kerr * m.mu).epsilon(1e-12));
    }
}

TEST_CASE("scaling law under (g, Omega, Delta_b) -> s*(g, Omega, Delta_b)") {
    SystemParams p = fig3_params(1.3);
    const NonlinearEffectiveModel m = derive_nonlinear_model(p);
    const LinearEffectiveModel l = derive_linear_model(p);
    for (double s : {0.5, 2.0, 7.5}) {
        SystemParams q = p;
        q.g = s * p.g;
        q.Omega = s * p.Omega;
        q.omega_a = s * p.omega_a;
        const NonlinearEffectiveModel ms = derive_nonlinear_model(q);
        const LinearEffectiveModel ls = derive_linear_model(q);
        // every induced coefficient is homogeneous of degree one:
        // N g^4/Db^3, N g^2 O^2/Db^3, N g^3 O/Db^3 and N g^2/Db, N g O/Db
        // all pick up a single power of s
        CHECK(ms.chi_kerr == doctest::Approx(s * m.chi_kerr).epsilon(1e-12));
        CHECK(ms.mu == doctest::Approx(s * m.mu).epsilon(1e-12));
        CHECK(ms.zeta == doctest::Approx(s * m.zeta).epsilon(1e-12));
        CHECK(ls.delta_shift == doctest::Approx(s * l.delta_shift).epsilon(1e-12));
        CHECK(ls.f == doctest::Approx(s * l.f).epsilon(1e-12));
    }
}

TEST_CASE("sign flip under Delta_b -> -Delta_b") {
    SystemParams p = fig3_params(1.0);
    SystemParams q = p;
    q.omega_a = -p.omega_a;  // omega_f = 0, so Delta_b flips sign
    const NonlinearEffectiveModel m = derive_nonlinear_model(p);
    const NonlinearEffectiveModel n = derive_nonlinear_model(q);
    const LinearEffectiveModel lm = derive_linear_model(p);
    const LinearEffectiveModel ln = derive_linear_model(q);
    CHECK(n.chi_kerr == doctest::Approx(-m.chi_kerr).epsilon(1e-12));
    CHECK(n.mu == doctest::Approx(-m.mu).epsilon(1e-12));
    CHECK(n.zeta == doctest::Approx(-m.zeta).epsilon(1e-12));
    CHECK(ln.delta_shift == doctest::Approx(-lm.delta_shift).epsilon(1e-12));
    CHECK(ln.f == doctest::Approx(-lm.f).epsilon(1e-12));
}

TEST_CASE("degenerate detuning rejected") {
    SystemParams p = fig3_params(1.0);
    p.omega_a = 0.0;  // Delta_b = 0
    CHECK_THROWS_AS(derive_linear_model(p), std::domain_error);
    CHECK_THROWS_AS(derive_nonlinear_model(p), std::domain_error);
}

TEST_CASE("parameter validation") {
    SystemParams p = fig3_params(1.0);
    p.N = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = fig3_params(1.0);
    p.kappa = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = fig3_params(1.0);
    p.gamma = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = fig3_params(1.0);
    p.T = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = fig3_params(1.0);
    p.g = std::nan("");
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("validity report flags the adiabatic-elimination ratios") {
    SystemParams p = fig3_params(1.0);
    p.gamma = 100.0;
    const ValidityReport r = validity_report(p);
    REQUIRE(r.checks.size() == 4);
    bool saw_gamma = false, saw_coupling = false, saw_drive = false;
    for (const auto& c : r.checks) {
        if (c.name == "gamma/kappa") {
            CHECK(c.value == doctest::Approx(100.0));
            CHECK(c.pass);
            saw_gamma = true;
        }
        if (c.name == "|Delta_b|/(g sqrt(N))") {
            CHECK(c.value == doctest::Approx(0.6));
            CHECK_FALSE(c.pass);
            saw_coupling = true;
        }
        if (c.name == "|Delta_b|/Omega") {
            CHECK(c.value == doctest::Approx(600.0));
            CHECK(c.pass);
            saw_drive = true;
        }
    }
    CHECK(saw_gamma);
    CHECK(saw_coupling);
    CHECK(saw_drive);
    CHECK_FALSE(r.all_pass());
    CHECK(r.excitation_fraction == doctest::Approx(2.7777777777777775e-06).epsilon(1e-10));
}

TEST_CASE("undamped collective mode fails the gamma check") {
    SystemParams p = fig3_params(1.0);
    p.gamma = 0.0;
    const ValidityReport r = validity_report(p);
    bool found = false;
    for (const auto& c : r.checks)
        if (c.name == "gamma/kappa") {
            CHECK_FALSE(c.pass);
            found = true;
        }
    CHECK(found);
}

TEST_CASE("extreme dispersive limit passes every check") {
    SystemParams p;
    p.omega_a = 1e5;
    p.g = 0.5;
    p.Omega = 0.5;
    p.N = 4;
    p.gamma = 100.0;
    CHECK(validity_report(p).all_pass());
}
