#include "cavopt/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cavopt/fluctuations.hpp"
#include "cavopt/parallel.hpp"

namespace cavopt {

const char* to_string(Stability s) {
    switch (s) {
        case Stability::stable: return "stable";
        case Stability::unstable: return "unstable";
        default: return "marginal";
    }
}

Stability classify_stability(const Eigen::Matrix2cd& A, double eps) {
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(A, false);
    const double re0 = es.eigenvalues()(0).real();
    const double re1 = es.eigenvalues()(1).real();
    const double m = std::min(re0, re1);
    if (m > eps) return Stability::stable;
    if (m < -eps) return Stability::unstable;
    return Stability::marginal;
}

Eigen::Matrix2cd squeeze_drift_matrix(const SqueezeModel& m, double kappa,
                                      complexd c_s) {
    const complexd I(0.0, 1.0);
    const complexd a0 = kappa / 2.0 + I * m.delta_eff_s + 4.0 * I * m.zeta * c_s.real();
    const complexd b = 2.0 * (m.mu + m.zeta * c_s);
    Eigen::Matrix2cd A;
    A << a0, I * b, -I * std::conj(b), std::conj(a0);
    return A;
}

namespace {

// Residual and Wirtinger derivatives of a mean-field fixed-point equation.
struct Residual {
    complexd r;
    complexd d_a;     // dr/da
    complexd d_abar;  // dr/da*
};

template <class F>
bool newton(F&& f, complexd& a, const SolverConfig& cfg) {
    for (int it = 0; it < cfg.max_iter; ++it) {
        Residual res = f(a);
        if (std::abs(res.r) < cfg.newton_tol) return true;
        // 2x2 Wirtinger system: [d_a d_abar; conj(d_abar) conj(d_a)]
        const complexd det =
            res.d_a * std::conj(res.d_a) - res.d_abar * std::conj(res.d_abar);
        if (std::abs(det) < 1e-300) return false;
        const complexd da =
            (-res.r * std::conj(res.d_a) + std::conj(res.r) * res.d_abar) / det;
        a += da;
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) ||
            std::abs(a) > 1e14)
            return false;
    }
    // slow (oscillatory) convergence: keep the endpoint, the acceptance
    // residual check decides
    return true;
}

template <class F>
std::vector<complexd> multi_root(F&& f, double seed_scale, const SolverConfig& cfg,
                                 std::span<const complexd> warm_starts) {
    std::vector<complexd> seeds;
    seeds.push_back(0.0);
    if (seed_scale > 0.0) {
        const double lo = std::log10(cfg.seed_amp_min);
        const double hi = std::log10(cfg.seed_amp_factor * seed_scale);
        for (int i = 0; i < cfg.amp_points; ++i) {
            const double amp =
                std::pow(10.0, lo + (hi - lo) * i / std::max(1, cfg.amp_points - 1));
            for (int k = 0; k < cfg.phase_points; ++k) {
                const double th = 2.0 * M_PI * k / cfg.phase_points;
                seeds.push_back(std::polar(amp, th));
            }
        }
    }
    seeds.insert(seeds.end(), warm_starts.begin(), warm_starts.end());

    std::vector<complexd> roots;
    auto try_seed = [&](complexd a) {
        if (!newton(f, a, cfg)) return false;
        if (std::abs(f(a).r) > cfg.accept_tol) return false;
        for (const complexd& b : roots)
            if (std::abs(a - b) < cfg.dedup_tol) return false;
        roots.push_back(a);
        return true;
    };
    for (complexd a : seeds) try_seed(a);

    // deflation rounds: basins of found roots can hide further roots (the
    // middle branch of a bistable cubic is a narrow attractor). Newton on
    // r(a)/prod(a - a_i) is repelled from known roots; converged points are
    // polished with the undeflated iteration before acceptance.
    for (int round = 0; round < 4 && !roots.empty(); ++round) {
        const std::vector<complexd> known = roots;
        auto deflated = [&](complexd a) {
            Residual res = f(a);
            complexd prod = 1.0, sum = 0.0;
            for (const complexd& b : known) {
                const complexd d = a - b;
                if (std::abs(d) < 1e-14) {
                    prod *= 1e-14;
                    continue;
                }
                prod *= d;
                sum += 1.0 / d;
            }
            res.d_a = (res.d_a - res.r * sum) / prod;
            res.d_abar = res.d_abar / prod;
            res.r /= prod;
            return res;
        };
        bool grew = false;
        for (complexd a : seeds) {
            if (!newton(deflated, a, cfg)) continue;
            grew |= try_seed(a);  // polish against the true residual
        }
        if (!grew) break;
    }

    std::sort(roots.begin(), roots.end(), [](complexd a, complexd b) {
        return std::norm(a) < std::norm(b);
    });
    return roots;
}

std::vector<SteadyState> solve_kerr(const KerrModel& m, double kappa,
                                    const SolverConfig& cfg,
                                    std::span<const complexd> warm) {
    const complexd I(0.0, 1.0);
    const complexd kp = kappa + I * m.delta_eff_k;
    const complexd chi2 = I * m.chi_kerr;
    const complexd zp = I * m.zeta;
    const complexd E = -I * m.F_prime;
    auto f = [&](complexd a) {
        const complexd ac = std::conj(a);
        Residual res;
        res.r = E - kp * a - 2.0 * chi2 * ac * a * a - zp * (a * a + 2.0 * ac * a);
        res.d_a = -kp - 4.0 * chi2 * std::norm(a) - 2.0 * zp * (a + ac);
        res.d_abar = -2.0 * chi2 * a * a - 2.0 * zp * a;
        return res;
    };
    double scale = std::abs(E) / kappa;
    if (m.zeta != 0.0)  // undriven nontrivial roots live near |kp|/zeta
        scale = std::max(scale,
                         (std::abs(kp) / std::abs(m.zeta)) / cfg.seed_amp_factor);
    std::vector<SteadyState> out;
    for (complexd a : multi_root(f, scale, cfg, warm)) {
        SteadyState s;
        s.alpha0 = a;
        s.n0 = std::norm(a);
        s.residual = std::abs(f(a).r);
        s.stability =
            classify_stability(drift_matrix(m, kappa, a), cfg.stability_eps);
        out.push_back(s);
    }
    return out;
}

std::vector<SteadyState> solve_squeeze(const SqueezeModel& m, double kappa,
                                       const SolverConfig& cfg,
                                       std::span<const complexd> warm) {
    const complexd I(0.0, 1.0);
    const complexd k2 = kappa / 2.0 + I * m.delta_eff_s;
    auto f = [&](complexd c) {
        const complexd cc = std::conj(c);
        Residual res;
        res.r = -k2 * c - 2.0 * I * m.mu * cc - I * m.zeta * (c * c + 2.0 * cc * c) -
                I * m.F_dprime;
        res.d_a = -k2 - I * m.zeta * (2.0 * c + 2.0 * cc);
        res.d_abar = -2.0 * I * m.mu - 2.0 * I * m.zeta * c;
        return res;
    };
    double scale = std::abs(m.F_dprime) / (kappa / 2.0);
    if (m.zeta != 0.0)
        scale = std::max(scale, ((std::abs(k2) + 2.0 * std::abs(m.mu)) /
                                 std::abs(m.zeta)) / cfg.seed_amp_factor);
    std::vector<SteadyState> out;
    for (complexd c : multi_root(f, scale, cfg, warm)) {
        SteadyState s;
        s.alpha0 = c;
        s.n0 = std::norm(c);
        s.residual = std::abs(f(c).r);
        s.stability =
            classify_stability(squeeze_drift_matrix(m, kappa, c), cfg.stability_eps);
        out.push_back(s);
    }
    return out;
}

KerrModel linear_as_kerr(const SystemParams& p) {
    // zeroth-order model in the master-equation convention
    const LinearEffectiveModel lin = derive_linear_model(p);
    KerrModel k;
    k.delta_eff_k = lin.delta_c - lin.delta_shift;
    k.chi_kerr = 0.0;
    k.zeta = 0.0;
    k.F_prime = lin.f;
    return k;
}

}  // namespace

std::vector<SteadyState> kerr_steady_states(const KerrModel& m, double kappa,
                                            const SolverConfig& cfg) {
    return solve_kerr(m, kappa, cfg, {});
}

std::vector<SteadyState> squeeze_steady_states(const SqueezeModel& m, double kappa,
                                               const SolverConfig& cfg) {
    return solve_squeeze(m, kappa, cfg, {});
}

BranchCurve scan_drive(ModelFamily family, const SystemParams& base,
                       std::span<const double> omega_grid, const SolverConfig& cfg,
                       int workers) {
    for (std::size_t i = 1; i < omega_grid.size(); ++i)
        if (!(omega_grid[i] > omega_grid[i - 1]))
            throw std::invalid_argument("scan_drive: grid must be strictly increasing");

    BranchCurve curve;
    curve.parameter = "Omega";
    curve.grid.assign(omega_grid.begin(), omega_grid.end());
    curve.roots.resize(omega_grid.size());

    auto solve_point = [&](double Omega, std::span<const complexd> warm) {
        SystemParams p = base;
        p.Omega = Omega;
        switch (family) {
            case ModelFamily::linear:
                return solve_kerr(linear_as_kerr(p), p.kappa, cfg, warm);
            case ModelFamily::kerr:
                return solve_kerr(reduce_kerr(derive_nonlinear_model(p)), p.kappa, cfg,
                                  warm);
            default:
                return solve_squeeze(reduce_squeeze(derive_nonlinear_model(p)), p.kappa,
                                     cfg, warm);
        }
    };

    parallel_for(omega_grid.size(), workers, [&](std::size_t i) {
        curve.roots[i] = solve_point(omega_grid[i], {});
    });

    // warm-start refinement pass: re-seed each point with its neighbours'
    // roots so branches are not lost between grid points
    for (std::size_t i = 1; i < omega_grid.size(); ++i) {
        std::vector<complexd> warm;
        for (const auto& s : curve.roots[i - 1]) warm.push_back(s.alpha0);
        auto refined = solve_point(omega_grid[i], warm);
        if (refined.size() > curve.roots[i].size()) curve.roots[i] = refined;
    }

    // branch labeling by nearest-amplitude matching between adjacent points
    curve.branch_ids.resize(omega_grid.size());
    int next_branch = 0;
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        const auto& pts = curve.roots[i];
        std::vector<int>& ids = curve.branch_ids[i];
        ids.assign(pts.size(), -1);
        if (i > 0) {
            const auto& prev = curve.roots[i - 1];
            const auto& prev_ids = curve.branch_ids[i - 1];
            std::vector<bool> prev_used(prev.size(), false);
            // greedy global-minimum assignment
            for (;;) {
                double best = std::numeric_limits<double>::infinity();
                int bi = -1, bj = -1;
                for (std::size_t a = 0; a < pts.size(); ++a) {
                    if (ids[a] >= 0) continue;
                    for (std::size_t b = 0; b < prev.size(); ++b) {
                        if (prev_used[b]) continue;
                        const double d = std::abs(pts[a].alpha0 - prev[b].alpha0);
                        if (d < best) { best = d; bi = (int)a; bj = (int)b; }
                    }
                }
                if (bi < 0) break;
                ids[bi] = prev_ids[bj];
                prev_used[bj] = true;
            }
        }
        for (std::size_t a = 0; a < pts.size(); ++a)
            if (ids[a] < 0) ids[a] = next_branch++;
    }
    if (!curve.roots.empty() && !curve.roots.front().empty()) {
        std::size_t k = 0;
        for (std::size_t a = 1; a < curve.roots.front().size(); ++a)
            if (curve.roots.front()[a].n0 < curve.roots.front()[k].n0) k = a;
        curve.red_branch = curve.branch_ids.front()[k];
    }
    return curve;
}

}  // namespace cavopt
