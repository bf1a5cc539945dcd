#ifndef CAVOPT_STEADY_STATE_HPP
#define CAVOPT_STEADY_STATE_HPP

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cavopt/model.hpp"

namespace cavopt {

using complexd = std::complex<double>;

enum class Stability { stable, unstable, marginal };

const char* to_string(Stability s);

struct SteadyState {
    complexd alpha0;
    double n0 = 0.0;        // |alpha0|^2
    double residual = 0.0;  // |steady-state equation| at alpha0
    Stability stability = Stability::marginal;
};

struct SolverConfig {
    double newton_tol = 1e-13;    // Newton step target on the residual
    double accept_tol = 1e-10;    // roots above this residual are discarded
    int max_iter = 200;
    int amp_points = 16;          // log-spaced seed amplitudes
    int phase_points = 24;        // seed phases per amplitude ring
    double seed_amp_min = 1e-4;
    double seed_amp_factor = 10.0;  // max seed amplitude = factor * |E|/kappa
    double dedup_tol = 1e-8;
    double stability_eps = 1e-8;
};

// Mean-field roots of E - kp a - 2 chi2 |a|^2 a - zp (a^2 + 2|a|^2) = 0
// with kp = kappa + i Delta_eff1, chi2 = i chi_kerr, zp = i zeta,
// E = -i F'. All distinct roots found from the polar seed grid, merged
// within cfg.dedup_tol and classified by the drift-matrix eigenvalues.
std::vector<SteadyState> kerr_steady_states(const KerrModel& m, double kappa,
                                            const SolverConfig& cfg = {});

// Fixed points of the squeeze-model Langevin drift:
// 0 = -(kappa/2 + i Delta_eff2) c - 2 i mu c* - i zeta (c^2 + 2|c|^2) - i F''.
std::vector<SteadyState> squeeze_steady_states(const SqueezeModel& m, double kappa,
                                               const SolverConfig& cfg = {});

// Drift matrix of the linearized squeeze-model fluctuations, basis (dc, dc^dag).
Eigen::Matrix2cd squeeze_drift_matrix(const SqueezeModel& m, double kappa,
                                      complexd c_s);

// Stable iff min Re(eig A) > eps, unstable iff < -eps, marginal otherwise.
Stability classify_stability(const Eigen::Matrix2cd& A, double eps = 1e-8);

enum class ModelFamily { linear, kerr, squeeze };

struct BranchCurve {
    std::string parameter;                        // swept quantity ("Omega")
    std::vector<double> grid;
    std::vector<std::vector<SteadyState>> roots;  // per grid point
    std::vector<std::vector<int>> branch_ids;     // parallel to roots
    int red_branch = -1;  // branch growing out of n = 0 at the low-drive end
};

// Per-point root sets over a drive-strength grid with continuation-based
// branch labeling: each point is solved from the full seed grid plus the
// previous point's roots as warm starts; labels propagate by
// nearest-amplitude matching.
BranchCurve scan_drive(ModelFamily family, const SystemParams& base,
                       std::span<const double> omega_grid,
                       const SolverConfig& cfg = {}, int workers = 1);

}  // namespace cavopt

#endif
