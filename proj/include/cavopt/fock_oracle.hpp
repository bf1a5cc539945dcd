#ifndef CAVOPT_FOCK_ORACLE_HPP
#define CAVOPT_FOCK_ORACLE_HPP

#include <complex>
#include <functional>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "cavopt/model.hpp"

namespace cavopt {

using SparseOp = Eigen::SparseMatrix<std::complex<double>>;

// Truncated-Fock one-mode model
//   H = detuning c^dag c + kerr c^dag2 c^2
//       + (mu c^2 + zeta c^dag c^2 + drive c + H.c.)
// with master-equation damping
//   kappa (n_th+1)(2 c rho c^dag - ...) + kappa n_th (2 c^dag rho c - ...).
// mu = 0 gives the Kerr-dominant Hamiltonian, kerr = 0 the squeeze-dominant one.
struct OneModeSpec {
    double detuning = 0.0;
    double kerr = 0.0;
    double zeta = 0.0;
    double mu = 0.0;
    std::complex<double> drive = 0.0;
    double kappa = 1.0;
    double n_th = 0.0;
    int n_max = 20;  // Fock cutoff, >= 4

    void validate() const;
};

// Two-mode collective model: H = Delta_c c^dag c + Delta_b B^dag B
// + (G c B^dag + chi B + H.c.), Langevin-convention damping kappa/2, gamma/2.
struct TwoModeSpec {
    double delta_c = 0.0;
    double delta_b = 0.0;
    double G = 0.0;
    double chi = 0.0;
    double kappa = 1.0;
    double gamma = 0.0;
    int cavity_cutoff = 6;
    int collective_cutoff = 4;

    void validate() const;
};

// Superoperator on column-major vectorized density matrices, dimension
// (n_max+1)^2.
SparseOp build_liouvillian(const OneModeSpec& spec);

struct SteadyDensity {
    Eigen::MatrixXcd rho;
    double trace_error = 0.0;    // |tr(rho) - 1|
    double min_eigenvalue = 0.0;
    double residual = 0.0;       // ||L vec(rho)|| / (||L||_1 ||vec(rho)||)
};

// Solves L vec(rho) = 0 with one row replaced by the trace condition
// (sparse LU). Throws std::runtime_error when the null space is degenerate.
SteadyDensity steady_density(const SparseOp& L);

struct Expectations {
    double n = 0.0;
    double g2_0 = 0.0;
    std::complex<double> mean_c = 0.0;
    bool g2_valid = true;  // false when n is below 1e-14
};

Expectations expectations(const SteadyDensity& rho);

struct TwoModeResult {
    double n_cavity = 0.0;
    double g2_cavity = 0.0;
    double n_collective = 0.0;
    double residual = 0.0;
};

TwoModeResult two_mode_oracle(const TwoModeSpec& spec);

enum class OracleObservable { photon_number, g2 };

struct TruncationResult {
    int cutoff = 0;
    double value = 0.0;
};

// Grows n_max geometrically until the observable moves by < rel_tol between
// consecutive cutoffs. Throws std::runtime_error at the cutoff cap.
TruncationResult truncation_check(OneModeSpec spec, OracleObservable obs,
                                  double rel_tol = 1e-8, int cap = 120);

}  // namespace cavopt

#endif
