#ifndef CAVOPT_SPECTRUM_HPP
#define CAVOPT_SPECTRUM_HPP

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "cavopt/model.hpp"
#include "cavopt/steady_state.hpp"

namespace cavopt {

// Langevin-convention (kappa/2 drift) linearized response of the
// squeeze-dominant model.
struct SpectrumCoefficients {
    complexd A_w;   // A(omega) = -i omega + kappa/2 + i Delta_eff2 + 4 i zeta Re(c_s)
    complexd B;     // 2 (mu + zeta c_s)
    complexd D_w;   // A(omega) A*(-omega) - |B|^2
    double omega = 0.0;
};

SpectrumCoefficients spectrum_coefficients(const SqueezeModel& m, double kappa,
                                           complexd c_s, double omega);

struct SpectrumPoint {
    double omega = 0.0;
    double S_I = 0.0;        // first-principles input-output evaluation
    double S_I_paper = 0.0;  // literal display with C(omega) = A*(-omega)
    complexd u;              // kappa A*(-omega)/D - 1, coefficient of c_in
    complexd v;              // -i kappa B/D, coefficient of c_in^dag
};

struct SpectrumCurve {
    std::vector<SpectrumPoint> points;
    double phi = 0.0;  // output quadrature phase used
};

// Output intensity spectrum of the squeeze model around a stable steady
// state, normalized to the vacuum level 1. The quadrature phase defaults
// to arg(sqrt(kappa) c_s); pass phi_override to probe other quadratures.
// Throws std::domain_error when c_s is not a stable fixed point.
SpectrumCurve output_intensity_spectrum(const SqueezeModel& m, double kappa,
                                        complexd c_s,
                                        std::span<const double> omega_grid,
                                        std::optional<double> phi_override = {});

// Lorentzian cavity response vs probe detuning from the bare cavity,
// peak-normalized and centered at -delta_shift; FWHM = kappa.
struct ResponsePoint {
    double detuning = 0.0;
    double response = 0.0;
};
std::vector<ResponsePoint> linear_response_spectrum(
    const LinearEffectiveModel& m, double kappa,
    std::span<const double> detuning_grid);

}  // namespace cavopt

#endif
