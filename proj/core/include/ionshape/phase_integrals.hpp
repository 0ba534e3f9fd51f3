#pragma once

#include <complex>
#include <functional>

#include "ionshape/pulse.hpp"

namespace ionshape {

// Oscillatory window integrals behind the Magnus coefficients. Everything is
// exact closed-form built from exponential segments, with series branches
// guarding the small-frequency denominators (|q u| below ~0.05 switches to a
// truncated Taylor expansion, keeping absolute error near 1e-13 throughout).

// (e^z - 1)/z, stable at z -> 0.
std::complex<double> expm1_over(std::complex<double> z);

// int_a^b e^{i p t} dt
std::complex<double> exp_segment(double p, double a, double b);

// int_{u0}^{u1} u^k e^{i p u} du for k <= 8.
std::complex<double> power_moment(double p, int k, double u0, double u1);

// K(P,Q) = int_A^B e^{iPt} [ int_C^{min(t,D)} e^{iQt'} dt' ] dt restricted to
// t > C. Building block of the time-ordered double integrals.
std::complex<double> ordered_exp_pair(double p, double q, double a, double b,
                                      double c, double d);

// int over the pulse window of Omega(t) e^{i omega t} dt.
std::complex<double> pulse_fourier(const TonePulse& pulse, double omega);

// D_mn(omega) = int int_{t>t'} [Om_m(t)Om_n(t') + Om_n(t)Om_m(t')] sin(omega (t-t'))
double pulse_pair_phase_kernel(const TonePulse& m, const TonePulse& n, double omega);

// Generic path: adaptive Simpson to absolute tolerance, for arbitrary shapes
// and as an independent cross-check of the closed forms.
double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double abs_tol);
std::complex<double> pulse_fourier_quadrature(const TonePulse& pulse, double omega,
                                              double abs_tol = 1e-12);
double pulse_pair_phase_kernel_quadrature(const TonePulse& m, const TonePulse& n,
                                          double omega, double abs_tol = 1e-12);

}  // namespace ionshape
