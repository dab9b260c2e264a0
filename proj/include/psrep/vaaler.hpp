#pragma once

#include <complex>
#include <ostream>
#include <vector>

#include "psrep/errors.hpp"

namespace psrep {

// Trigonometric approximation of rho(t) = 1/2 - {t} of degree H:
//
//   rho(t) = sum_{0<|h|<=H} c_h e(ht) + Delta_H(t),
//   |Delta_H(t)| <= sum_{|h|<=H} d_h e(ht),
//
// with c_{-h} = conj(c_h), |c_h| <= 1/(2 pi |h|) and d_h <= 1/(H+1).
// The c_h follow Vaaler's interpolation of the sawtooth; the majorant is
// the Fejer kernel normalized to d_0 = 1/(H+1), twice the sharp bound,
// so the pointwise inequality holds with slack.
struct VaalerSystem {
    int H = 0;
    std::vector<std::complex<double>> c; // c[h-1] holds c_h for h = 1..H
    std::vector<double> d;               // d[h] for h = 0..H, even in h
};

VaalerSystem build_vaaler(int H);

// sum_{0<|h|<=H} c_h e(ht), real by conjugate symmetry
double rho_approx(const VaalerSystem& sys, double t);

// sum_{|h|<=H} d_h e(ht), real and >= 0 up to rounding
double rho_majorant(const VaalerSystem& sys, double t);

// rows (h, Re c_h, Im c_h, d_h) for h = -H..H
void export_vaaler_csv(const VaalerSystem& sys, std::ostream& os);

} // namespace psrep
