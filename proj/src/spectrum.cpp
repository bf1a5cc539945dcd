#include "cavopt/spectrum.hpp"

#include <cmath>
#include <stdexcept>

namespace cavopt {

SpectrumCoefficients spectrum_coefficients(const SqueezeModel& m, double kappa,
                                           complexd c_s, double omega) {
    const complexd I(0.0, 1.0);
    const complexd a0 =
        kappa / 2.0 + I * m.delta_eff_s + 4.0 * I * m.zeta * c_s.real();
    SpectrumCoefficients c;
    c.omega = omega;
    c.A_w = -I * omega + a0;
    c.B = 2.0 * (m.mu + m.zeta * c_s);
    const complexd A_minus = I * omega + a0;  // A(-omega)
    c.D_w = c.A_w * std::conj(A_minus) - std::norm(c.B);
    return c;
}

SpectrumCurve output_intensity_spectrum(const SqueezeModel& m, double kappa,
                                        complexd c_s,
                                        std::span<const double> omega_grid,
                                        std::optional<double> phi_override) {
    if (classify_stability(squeeze_drift_matrix(m, kappa, c_s)) !=
        Stability::stable)
        throw std::domain_error(
            "output_intensity_spectrum: steady state is not stable");

    SpectrumCurve curve;
    curve.phi = phi_override ? *phi_override
                             : std::arg(std::sqrt(kappa) * c_s);
    const complexd I(0.0, 1.0);
    const complexd eminus = std::exp(-I * curve.phi);
    const complexd eplus = std::exp(I * curve.phi);

    curve.points.reserve(omega_grid.size());
    for (double w : omega_grid) {
        const SpectrumCoefficients c = spectrum_coefficients(m, kappa, c_s, w);
        SpectrumPoint pt;
        pt.omega = w;
        // delta c_out(w) = u c_in(w) + v c_in^dag(w)
        pt.u = kappa * std::conj(spectrum_coefficients(m, kappa, c_s, -w).A_w) /
                   c.D_w -
               1.0;
        pt.v = -I * kappa * c.B / c.D_w;
        // D*(-w) = D(w), so v*(-w) = i kappa B* / D(w)
        const complexd v_conj_minus = I * kappa * std::conj(c.B) / c.D_w;
        pt.S_I = std::norm(eminus * pt.u + eplus * v_conj_minus);
        // literal display, C(w) read as A*(-w)
        pt.S_I_paper = std::norm(
            1.0 - (kappa / c.D_w) *
                      (std::conj(spectrum_coefficients(m, kappa, c_s, -w).A_w) +
                       I * eplus * eplus * std::conj(c.B)));
        curve.points.push_back(pt);
    }
    return curve;
}

std::vector<ResponsePoint> linear_response_spectrum(
    const LinearEffectiveModel& m, double kappa,
    std::span<const double> detuning_grid) {
    if (!(kappa > 0.0))
        throw std::invalid_argument("linear_response_spectrum: kappa must be > 0");
    std::vector<ResponsePoint> out;
    out.reserve(detuning_grid.size());
    const double hw = kappa / 2.0;
    for (double d : detuning_grid) {
        const double x = d + m.delta_shift;  // distance from the shifted peak
        out.push_back({d, hw * hw / (x * x + hw * hw)});
    }
    return out;
}

}  // namespace cavopt
