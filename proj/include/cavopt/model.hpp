#ifndef CAVOPT_MODEL_HPP
#define CAVOPT_MODEL_HPP

#include <string>
#include <vector>

namespace cavopt {

// Microscopic inputs for the driven atomic-wall cavity. All rates and
// frequencies are expressed in units of the cavity decay rate kappa;
// kappa itself is stored so other unit systems remain possible.
struct SystemParams {
    double omega_c = 0.0;   // bare cavity frequency
    double omega_a = 0.0;   // atomic level spacing
    double omega_f = 0.0;   // classical drive frequency
    double g = 0.0;         // single-atom--cavity coupling (real)
    double Omega = 0.0;     // drive strength per atom (real)
    long long N = 1;        // atom count
    double kappa = 1.0;     // cavity decay rate (the unit)
    double gamma = 0.0;     // collective-mode decay rate
    double T = 0.0;         // temperature (k_B = 1)

    double delta_c() const { return omega_c - omega_f; }
    double delta_b() const { return omega_a - omega_f; }

    // Throws std::invalid_argument on N < 1, kappa <= 0, gamma < 0,
    // T < 0 or any non-finite field.
    void validate() const;
};

// n(omega_r) = 1/(exp(omega_r/T) - 1); exactly 0 at T = 0.
// Throws std::domain_error for omega_r <= 0.
double thermal_occupation(double omega_r, double T);

// Zeroth-order (low-excitation) effective model: collective coupling
// G = g sqrt(N), collective drive chi = Omega sqrt(N), ensemble shift
// delta = N g^2 / Delta_b and induced drive f = -G chi / Delta_b.
struct LinearEffectiveModel {
    double delta_c = 0.0;
    double delta_b = 0.0;
    double G = 0.0;
    double chi = 0.0;
    double delta_shift = 0.0;
    double omega_eff0 = 0.0;   // omega_c - delta_shift
    double f = 0.0;
};

struct KerrModel {
    double delta_eff_k = 0.0;  // Delta_c - N g^2/Delta_b + chi_kerr
    double chi_kerr = 0.0;
    double zeta = 0.0;
    double F_prime = 0.0;      // -N g Omega/Delta_b + zeta/2
};

struct SqueezeModel {
    double delta_eff_s = 0.0;  // Delta_c - N g^2/Delta_b + 4 mu
    double mu = 0.0;
    double zeta = 0.0;
    double F_dprime = 0.0;     // -N g Omega/Delta_b + 2 N g Omega^3/Delta_b^3
};

// First-order collective-excitation expansion. Coefficients:
//   chi_kerr = N g^4 / Delta_b^3        (Kerr, c^dag2 c^2)
//   mu       = N g^2 Omega^2 / Delta_b^3  (squeezing, c^2)
//   zeta     = 2 N g^3 Omega / Delta_b^3  (two-photon phase-space filling)
//   F        = -(N g Omega/Delta_b) [1 - (2 Omega^2 + g^2)/Delta_b^2]
//   Delta_eff1 = Delta_c - N g^2/Delta_b + chi_kerr + 4 mu
struct NonlinearEffectiveModel {
    double delta_eff1 = 0.0;
    double chi_kerr = 0.0;
    double mu = 0.0;
    double zeta = 0.0;
    double F = 0.0;
    SystemParams source;
};

// Both throw std::domain_error when Delta_b = 0 (adiabatic elimination
// is singular there).
LinearEffectiveModel derive_linear_model(const SystemParams& p);
NonlinearEffectiveModel derive_nonlinear_model(const SystemParams& p);

KerrModel reduce_kerr(const NonlinearEffectiveModel& m);
SqueezeModel reduce_squeeze(const NonlinearEffectiveModel& m);

struct ValidityThresholds {
    double ratio = 10.0;   // required margin for each "much larger than" check
};

struct ValidityCheck {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

// Diagnostic only; never blocks a computation.
struct ValidityReport {
    std::vector<ValidityCheck> checks;
    double excitation_fraction = 0.0;  // estimated <B^dag B>/N
    bool all_pass() const;
};

ValidityReport validity_report(const SystemParams& p,
                               const ValidityThresholds& thr = {});

}  // namespace cavopt

#endif
