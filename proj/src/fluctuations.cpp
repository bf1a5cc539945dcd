#include "cavopt/fluctuations.hpp"

#include <cmath>
#include <stdexcept>

#include "cavopt/fock_oracle.hpp"
#include "cavopt/parallel.hpp"

namespace cavopt {

Eigen::Matrix2cd drift_matrix(const KerrModel& m, double kappa, complexd alpha0) {
    const complexd I(0.0, 1.0);
    const complexd kp = kappa + I * m.delta_eff_k;
    const complexd chi2 = I * m.chi_kerr;
    const complexd zp = I * m.zeta;
    const double n0 = std::norm(alpha0);
    const complexd a11 = kp + 4.0 * chi2 * n0 + 4.0 * zp * alpha0.real();
    const complexd a12 = 2.0 * chi2 * alpha0 * alpha0 + 2.0 * zp * alpha0;
    Eigen::Matrix2cd A;
    A << a11, a12, std::conj(a12), std::conj(a11);
    return A;
}

Eigen::Matrix2cd diffusion_matrix(const KerrModel& m, double kappa, double n_th,
                                  complexd alpha0) {
    if (n_th < 0.0) throw std::invalid_argument("diffusion_matrix: n_th < 0");
    const complexd I(0.0, 1.0);
    const complexd chi2 = I * m.chi_kerr;
    const complexd zp = I * m.zeta;
    const complexd d11 = -2.0 * chi2 * alpha0 * alpha0 - 2.0 * zp * alpha0;
    Eigen::Matrix2cd D;
    D << d11, 2.0 * kappa * n_th, 2.0 * kappa * n_th, std::conj(d11);
    return D;
}

namespace {
double trace_det_or_throw(const Eigen::Matrix2cd& A, complexd& trA, complexd& detA) {
    trA = A.trace();
    detA = A.determinant();
    const double scale = std::max(A.cwiseAbs().maxCoeff(), 1e-300);
    const double td = std::abs(trA * detA);
    if (!(td > 1e-12 * scale * scale * scale))
        throw std::domain_error(
            "correlation: Tr(A) Det(A) singular (marginal stability)");
    return td;
}
}  // namespace

CorrelationPair correlation_general(const Eigen::Matrix2cd& A,
                                    const Eigen::Matrix2cd& D) {
    complexd trA, detA;
    trace_det_or_throw(A, trA, detA);
    const Eigen::Matrix2cd M = A - trA * Eigen::Matrix2cd::Identity();
    const Eigen::Matrix2cd C =
        (D * detA + M * D * M.transpose()) / (2.0 * trA * detA);
    return {C(0, 0), C(0, 1)};
}

CorrelationPair correlation_closed(const Eigen::Matrix2cd& A,
                                   const Eigen::Matrix2cd& D) {
    complexd trA, detA;
    trace_det_or_throw(A, trA, detA);
    // kappa = Re A11 (the nonlinear corrections to A11 are purely imaginary),
    // chi'' a0^2 + zeta' a0 = A12/2, 2 kappa n_th = D12
    const double kappa = A(0, 0).real();
    const complexd half_a12 = 0.5 * A(0, 1);
    const double n_th = kappa > 0.0 ? D(0, 1).real() / (2.0 * kappa) : 0.0;
    const complexd td = trA * detA;
    const complexd C11 =
        -2.0 * kappa * std::conj(A(0, 0)) * half_a12 * (1.0 + 2.0 * n_th) / td;
    const complexd C12 = (2.0 * kappa * n_th * std::norm(A(0, 0)) +
                          4.0 * kappa * std::norm(half_a12)) /
                         td;
    return {C11, C12};
}

CorrelationResult correlation_matrix(const KerrModel& m, double kappa, double n_th,
                                     complexd alpha0, double cross_tol,
                                     double imag_tol) {
    const Eigen::Matrix2cd A = drift_matrix(m, kappa, alpha0);
    const Eigen::Matrix2cd D = diffusion_matrix(m, kappa, n_th, alpha0);
    const CorrelationPair gen = correlation_general(A, D);
    const CorrelationPair closed = correlation_closed(A, D);

    const double scale =
        std::max({std::abs(gen.C11), std::abs(gen.C12), 1e-300});
    if (std::abs(gen.C11 - closed.C11) > cross_tol * scale ||
        std::abs(gen.C12 - closed.C12) > cross_tol * scale)
        throw std::runtime_error(
            "correlation_matrix: closed-form and general paths disagree");
    if (std::abs(gen.C12.imag()) > imag_tol * std::max(1.0, scale))
        throw std::runtime_error(
            "correlation_matrix: spurious imaginary part in C12");

    CorrelationResult r;
    r.C11 = gen.C11;
    r.C12 = gen.C12.real();
    r.n0 = std::norm(alpha0);
    r.n_bar = r.n0 + r.C12;
    if (r.n0 > 0.0) r.g2_0 = g2_zero(r, alpha0);
    return r;
}

double g2_zero(const CorrelationResult& c, complexd alpha0) {
    const double n0 = std::norm(alpha0);
    if (n0 <= 0.0)
        throw std::domain_error("g2_zero: undefined at n0 = 0");
    return 1.0 + 2.0 * c.C12 / n0 +
           2.0 * (c.C11 / (alpha0 * alpha0)).real();
}

std::vector<G2Point> g2_scan(const SystemParams& base, std::span<const double> g_grid,
                             bool with_oracle, int workers, const SolverConfig& cfg) {
    for (std::size_t i = 1; i < g_grid.size(); ++i)
        if (!(g_grid[i] > g_grid[i - 1]))
            throw std::invalid_argument("g2_scan: grid must be strictly increasing");

    const double n_th = (base.T > 0.0 && base.omega_c > 0.0)
                            ? thermal_occupation(base.omega_c, base.T)
                            : 0.0;

    std::vector<G2Point> out(g_grid.size());
    parallel_for(g_grid.size(), workers, [&](std::size_t i) {
        G2Point& pt = out[i];
        pt.g = g_grid[i];
        SystemParams p = base;
        p.g = g_grid[i];
        const KerrModel k = reduce_kerr(derive_nonlinear_model(p));
        // physical branch: stable root of smallest n0
        const SteadyState* chosen = nullptr;
        auto roots = kerr_steady_states(k, p.kappa, cfg);
        for (const auto& s : roots)
            if (s.stability == Stability::stable &&
                (!chosen || s.n0 < chosen->n0))
                chosen = &s;
        if (!chosen) return;
        pt.has_root = true;
        pt.root = *chosen;
        pt.corr = correlation_matrix(k, p.kappa, n_th, chosen->alpha0);

        if (with_oracle) {
            OneModeSpec spec;
            spec.detuning = k.delta_eff_k;
            spec.kerr = k.chi_kerr;
            spec.zeta = k.zeta;
            spec.mu = 0.0;
            spec.drive = k.F_prime;
            spec.kappa = p.kappa;
            spec.n_th = n_th;
            spec.n_max = std::max(6, (int)std::ceil(4.0 + 8.0 * std::sqrt(pt.corr.n_bar)));
            const TruncationResult tn =
                truncation_check(spec, OracleObservable::photon_number);
            spec.n_max = tn.cutoff;
            const Expectations e =
                expectations(steady_density(build_liouvillian(spec)));
            pt.oracle_n = e.n;
            if (e.g2_valid) pt.oracle_g2 = e.g2_0;
        }
    });
    return out;
}

}  // namespace cavopt
