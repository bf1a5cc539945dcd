#include "cavopt/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cavopt {

void SystemParams::validate() const {
    if (N < 1) throw std::invalid_argument("SystemParams: N must be >= 1");
    if (!(kappa > 0.0)) throw std::invalid_argument("SystemParams: kappa must be > 0");
    if (gamma < 0.0) throw std::invalid_argument("SystemParams: gamma must be >= 0");
    if (T < 0.0) throw std::invalid_argument("SystemParams: T must be >= 0");
    for (double v : {omega_c, omega_a, omega_f, g, Omega, kappa, gamma, T}) {
        if (!std::isfinite(v))
            throw std::invalid_argument("SystemParams: non-finite field");
    }
}

double thermal_occupation(double omega_r, double T) {
    if (!(omega_r > 0.0))
        throw std::domain_error("thermal_occupation: omega_r must be > 0");
    if (T == 0.0) return 0.0;
    // expm1 keeps the high-temperature limit accurate
    return 1.0 / std::expm1(omega_r / T);
}

namespace {
double require_delta_b(const SystemParams& p) {
    const double db = p.delta_b();
    if (db == 0.0)
        throw std::domain_error("Delta_b = 0: adiabatic elimination is singular");
    return db;
}
}  // namespace

LinearEffectiveModel derive_linear_model(const SystemParams& p) {
    p.validate();
    const double db = require_delta_b(p);
    const double n = static_cast<double>(p.N);
    LinearEffectiveModel m;
    m.delta_c = p.delta_c();
    m.delta_b = db;
    m.G = p.g * std::sqrt(n);
    m.chi = p.Omega * std::sqrt(n);
    m.delta_shift = n * p.g * p.g / db;
    m.omega_eff0 = p.omega_c - m.delta_shift;
    m.f = -m.G * m.chi / db;
    return m;
}

NonlinearEffectiveModel derive_nonlinear_model(const SystemParams& p) {
    p.validate();
    const double db = require_delta_b(p);
    const double n = static_cast<double>(p.N);
    const double db3 = db * db * db;
    NonlinearEffectiveModel m;
    m.chi_kerr = n * std::pow(p.g, 4) / db3;
    m.mu = n * p.g * p.g * p.Omega * p.Omega / db3;
    m.zeta = 2.0 * n * std::pow(p.g, 3) * p.Omega / db3;
    m.F = -(n * p.g * p.Omega / db) *
          (1.0 - (2.0 * p.Omega * p.Omega + p.g * p.g) / (db * db));
    m.delta_eff1 = p.delta_c() - n * p.g * p.g / db + m.chi_kerr + 4.0 * m.mu;
    m.source = p;
    return m;
}

KerrModel reduce_kerr(const NonlinearEffectiveModel& m) {
    const SystemParams& p = m.source;
    const double db = p.delta_b();
    const double n = static_cast<double>(p.N);
    KerrModel k;
    k.chi_kerr = m.chi_kerr;
    k.zeta = m.zeta;
    k.delta_eff_k = p.delta_c() - n * p.g * p.g / db + m.chi_kerr;
    k.F_prime = -n * p.g * p.Omega / db + 0.5 * m.zeta;
    return k;
}

SqueezeModel reduce_squeeze(const NonlinearEffectiveModel& m) {
    const SystemParams& p = m.source;
    const double db = p.delta_b();
    const double n = static_cast<double>(p.N);
    SqueezeModel s;
    s.mu = m.mu;
    s.zeta = m.zeta;
    s.delta_eff_s = p.delta_c() - n * p.g * p.g / db + 4.0 * m.mu;
    s.F_dprime = -n * p.g * p.Omega / db +
                 2.0 * n * p.g * std::pow(p.Omega, 3) / std::pow(db, 3);
    return s;
}

bool ValidityReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

ValidityReport validity_report(const SystemParams& p, const ValidityThresholds& thr) {
    const double db = std::abs(p.delta_b());
    const double coll = p.g * std::sqrt(static_cast<double>(p.N));
    ValidityReport r;
    auto add = [&](const std::string& name, double num, double den) {
        ValidityCheck c;
        c.name = name;
        c.threshold = thr.ratio;
        c.value = (den == 0.0) ? std::numeric_limits<double>::infinity() : num / den;
        c.pass = c.value >= c.threshold;
        r.checks.push_back(c);
    };
    add("gamma/kappa", p.gamma, p.kappa);
    add("|Delta_b|/gamma", db, p.gamma);
    add("|Delta_b|/Omega", db, std::abs(p.Omega));
    add("|Delta_b|/(g sqrt(N))", db, std::abs(coll));
    // driven collective amplitude ~ chi/Delta_b
    const double chi = p.Omega * std::sqrt(static_cast<double>(p.N));
    r.excitation_fraction =
        db > 0.0 ? (chi / db) * (chi / db) / static_cast<double>(p.N) : 0.0;
    return r;
}

}  // namespace cavopt
