#ifndef CAVOPT_FLUCTUATIONS_HPP
#define CAVOPT_FLUCTUATIONS_HPP

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cavopt/model.hpp"
#include "cavopt/steady_state.hpp"

namespace cavopt {

// Linearized fluctuations of the Kerr-dominant model around a mean-field
// amplitude, basis (alpha_1, alpha_1^dag). Master-equation convention:
// kp = kappa + i Delta_eff1.

Eigen::Matrix2cd drift_matrix(const KerrModel& m, double kappa, complexd alpha0);

Eigen::Matrix2cd diffusion_matrix(const KerrModel& m, double kappa, double n_th,
                                  complexd alpha0);

struct CorrelationResult {
    complexd C11;       // <alpha_1^2>
    double C12 = 0.0;   // <alpha_1^dag alpha_1>, real
    double n_bar = 0.0; // n0 + C12
    double g2_0 = 0.0;
    double n0 = 0.0;
};

// Steady-state second moments from the general 2x2 formula
//   C = [D det(A) + (A - tr(A) I) D (A - tr(A) I)^T] / (2 tr(A) det(A)).
// Throws std::domain_error when tr(A) det(A) is singular (marginal branch).
struct CorrelationPair {
    complexd C11;
    complexd C12;  // imaginary part is a numerical diagnostic
};
CorrelationPair correlation_general(const Eigen::Matrix2cd& A,
                                    const Eigen::Matrix2cd& D);

// Closed forms for C11 and C12 written in the drift/diffusion entries
// (A12 = -D11, Re A11 = kappa, D12 = 2 kappa n_th).
CorrelationPair correlation_closed(const Eigen::Matrix2cd& A,
                                   const Eigen::Matrix2cd& D);

// Full pipeline at a solved root: builds A and D, evaluates both formula
// paths, cross-checks them to cross_tol relative and fails loudly if the
// C12 imaginary part exceeds imag_tol (wrong root or convention error).
CorrelationResult correlation_matrix(const KerrModel& m, double kappa,
                                     double n_th, complexd alpha0,
                                     double cross_tol = 1e-10,
                                     double imag_tol = 1e-10);

// 1 + 2 C12/n0 + 2 Re(C11/alpha0^2). Throws std::domain_error at n0 = 0.
double g2_zero(const CorrelationResult& c, complexd alpha0);

struct G2Point {
    double g = 0.0;
    bool has_root = false;
    SteadyState root;
    CorrelationResult corr;
    std::optional<double> oracle_g2;
    std::optional<double> oracle_n;
};

// Antibunching sweep: for each coupling g the stable root of smallest n0
// is selected; points without a stable root are emitted flagged. When
// with_oracle is set, an exact truncated-Fock solve is run per point.
std::vector<G2Point> g2_scan(const SystemParams& base, std::span<const double> g_grid,
                             bool with_oracle = false, int workers = 1,
                             const SolverConfig& cfg = {});

}  // namespace cavopt

#endif
