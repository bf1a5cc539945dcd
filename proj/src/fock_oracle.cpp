#include "cavopt/fock_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/SparseLU>
#include <unsupported/Eigen/KroneckerProduct>

namespace cavopt {

namespace {

using cd = std::complex<double>;

SparseOp annihilation(int dim) {
    SparseOp a(dim, dim);
    std::vector<Eigen::Triplet<cd>> t;
    for (int n = 1; n < dim; ++n) t.emplace_back(n - 1, n, std::sqrt((double)n));
    a.setFromTriplets(t.begin(), t.end());
    return a;
}

SparseOp identity(int dim) {
    SparseOp id(dim, dim);
    id.setIdentity();
    return id;
}

// vec is column-major: vec(A X B) = (B^T kron A) vec(X)
SparseOp left_mult(const SparseOp& X, int dim) {
    return Eigen::kroneckerProduct(identity(dim), X).eval();
}
SparseOp right_mult(const SparseOp& X, int dim) {
    return Eigen::kroneckerProduct(SparseOp(X.transpose()), identity(dim)).eval();
}
SparseOp sandwich(const SparseOp& L, const SparseOp& Rdag, int /*dim*/) {
    // L rho Rdag
    return Eigen::kroneckerProduct(SparseOp(Rdag.transpose()), L).eval();
}

// rate (2 J rho J^dag - J^dag J rho - rho J^dag J)
SparseOp dissipator(const SparseOp& J, double rate, int dim) {
    SparseOp Jd = J.adjoint();
    SparseOp JdJ = (Jd * J).pruned();
    return (rate * (2.0 * sandwich(J, Jd, dim) - left_mult(JdJ, dim) -
                    right_mult(JdJ, dim)))
        .eval();
}

SparseOp hamiltonian_part(const SparseOp& H, int dim) {
    const cd I(0.0, 1.0);
    return (-I * (left_mult(H, dim) - right_mult(H, dim))).eval();
}

SteadyDensity solve_steady(const SparseOp& L, int dim) {
    const int sz = dim * dim;
    // replace row 0 by the trace functional
    std::vector<Eigen::Triplet<cd>> t;
    t.reserve(L.nonZeros() + dim);
    for (int k = 0; k < L.outerSize(); ++k)
        for (SparseOp::InnerIterator it(L, k); it; ++it)
            if (it.row() != 0) t.emplace_back(it.row(), it.col(), it.value());
    for (int k = 0; k < dim; ++k) t.emplace_back(0, k * dim + k, cd(1.0, 0.0));
    SparseOp M(sz, sz);
    M.setFromTriplets(t.begin(), t.end());
    M.makeCompressed();

    Eigen::SparseLU<SparseOp> lu;
    lu.compute(M);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error(
            "steady_density: trace-constrained system is singular "
            "(degenerate null space?)");
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(sz);
    b(0) = 1.0;
    Eigen::VectorXcd v = lu.solve(b);

    SteadyDensity out;
    out.rho = Eigen::Map<Eigen::MatrixXcd>(v.data(), dim, dim);
    out.rho = 0.5 * (out.rho + out.rho.adjoint().eval());
    out.trace_error = std::abs(out.rho.trace() - cd(1.0, 0.0));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(out.rho);
    out.min_eigenvalue = es.eigenvalues().minCoeff();

    double col_norm = 0.0;
    for (int k = 0; k < L.outerSize(); ++k) {
        double s = 0.0;
        for (SparseOp::InnerIterator it(L, k); it; ++it) s += std::abs(it.value());
        col_norm = std::max(col_norm, s);
    }
    Eigen::Map<const Eigen::VectorXcd> vr(out.rho.data(), sz);
    out.residual = (L * vr).norm() / std::max(col_norm * vr.norm(), 1e-300);
    return out;
}

}  // namespace

void OneModeSpec::validate() const {
    if (n_max < 4) throw std::invalid_argument("OneModeSpec: n_max must be >= 4");
    if (!(kappa > 0.0)) throw std::invalid_argument("OneModeSpec: kappa must be > 0");
    if (n_th < 0.0) throw std::invalid_argument("OneModeSpec: n_th must be >= 0");
    for (double v : {detuning, kerr, zeta, mu, drive.real(), drive.imag()})
        if (!std::isfinite(v))
            throw std::invalid_argument("OneModeSpec: non-finite coefficient");
}

void TwoModeSpec::validate() const {
    if (cavity_cutoff < 2 || collective_cutoff < 2)
        throw std::invalid_argument("TwoModeSpec: cutoffs must be >= 2");
    if (!(kappa > 0.0) || !(gamma > 0.0))
        throw std::invalid_argument("TwoModeSpec: kappa and gamma must be > 0");
}

SparseOp build_liouvillian(const OneModeSpec& spec) {
    spec.validate();
    const int dim = spec.n_max + 1;
    SparseOp a = annihilation(dim);
    SparseOp ad = a.adjoint();
    SparseOp H = (spec.detuning * (ad * a) + spec.kerr * (ad * ad * a * a) +
                  spec.mu * (a * a) + spec.mu * (ad * ad) +
                  spec.zeta * (ad * a * a) + spec.zeta * (ad * ad * a) +
                  spec.drive * a + std::conj(spec.drive) * ad)
                     .pruned();

    SparseOp L = hamiltonian_part(H, dim);
    L += dissipator(a, spec.kappa * (spec.n_th + 1.0), dim);
    if (spec.n_th > 0.0) L += dissipator(ad, spec.kappa * spec.n_th, dim);
    L.makeCompressed();
    return L;
}

SteadyDensity steady_density(const SparseOp& L) {
    const int dim = static_cast<int>(std::lround(std::sqrt((double)L.rows())));
    if ((long long)dim * dim != L.rows())
        throw std::invalid_argument("steady_density: non-square vectorized space");
    return solve_steady(L, dim);
}

Expectations expectations(const SteadyDensity& sd) {
    const int dim = static_cast<int>(sd.rho.rows());
    Eigen::MatrixXcd a = Eigen::MatrixXcd(annihilation(dim));
    Eigen::MatrixXcd ad = a.adjoint();
    Expectations e;
    e.n = (ad * a * sd.rho).trace().real();
    e.mean_c = (a * sd.rho).trace();
    const double num = (ad * ad * a * a * sd.rho).trace().real();
    if (e.n > 1e-14) {
        e.g2_0 = num / (e.n * e.n);
    } else {
        e.g2_0 = 0.0;
        e.g2_valid = false;
    }
    return e;
}

TwoModeResult two_mode_oracle(const TwoModeSpec& spec) {
    spec.validate();
    const int nc = spec.cavity_cutoff, nb = spec.collective_cutoff;
    const int dim = nc * nb;
    SparseOp c = Eigen::kroneckerProduct(annihilation(nc), identity(nb)).eval();
    SparseOp B = Eigen::kroneckerProduct(identity(nc), annihilation(nb)).eval();
    SparseOp cdg = c.adjoint(), Bd = B.adjoint();
    SparseOp H = (spec.delta_c * (cdg * c) + spec.delta_b * (Bd * B) +
                  spec.G * (c * Bd) + spec.G * (cdg * B) + spec.chi * B +
                  spec.chi * Bd)
                     .pruned();
    SparseOp L = hamiltonian_part(H, dim);
    L += dissipator(c, spec.kappa / 2.0, dim);
    L += dissipator(B, spec.gamma / 2.0, dim);
    L.makeCompressed();

    SteadyDensity sd = solve_steady(L, dim);
    Eigen::MatrixXcd cden = Eigen::MatrixXcd(c);
    Eigen::MatrixXcd Bden = Eigen::MatrixXcd(B);
    TwoModeResult r;
    r.n_cavity = (cden.adjoint() * cden * sd.rho).trace().real();
    r.n_collective = (Bden.adjoint() * Bden * sd.rho).trace().real();
    const double num =
        (cden.adjoint() * cden.adjoint() * cden * cden * sd.rho).trace().real();
    r.g2_cavity = r.n_cavity > 1e-14 ? num / (r.n_cavity * r.n_cavity) : 0.0;
    r.residual = sd.residual;
    return r;
}

TruncationResult truncation_check(OneModeSpec spec, OracleObservable obs,
                                  double rel_tol, int cap) {
    auto eval = [&](int n_max) {
        OneModeSpec s = spec;
        s.n_max = n_max;
        Expectations e = expectations(steady_density(build_liouvillian(s)));
        return obs == OracleObservable::photon_number ? e.n : e.g2_0;
    };
    int n_max = std::max(spec.n_max, 4);
    double prev = eval(n_max);
    while (true) {
        int next = std::max(n_max + 2, n_max * 3 / 2);
        if (next > cap)
            throw std::runtime_error("truncation_check: cutoff cap reached");
        const double cur = eval(next);
        const double denom = std::max(std::abs(cur), 1e-30);
        if (std::abs(cur - prev) / denom < rel_tol)
            return {next, cur};
        prev = cur;
        n_max = next;
    }
}

}  // namespace cavopt
