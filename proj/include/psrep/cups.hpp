#pragma once

#include <complex>
#include <cstdint>
#include <ostream>
#include <vector>

#include "psrep/errors.hpp"

namespace psrep {

// Vinogradov cup: the even 1-periodic bump g with g(0) = 1, 0 < g < 1 on
// 0 < |t| < 1/(2Z) and g = 0 on 1/(2Z) <= |t| <= 1/2, realized as the
// indicator of [-1/(4Z), 1/(4Z)] mollified by the r-fold convolution of
// uniform kernels of total width 1/(2Z).  The 2Z shifted copies
// g_z(t) = g(t - z/(2Z)) form an exact partition of unity.
struct CupSystem {
    int Z = 2;
    int r = 1;
    double delta = 0.0;     // 1/(2Z): cup half-width and shift step
    std::int64_t cutoff = 0;
    std::vector<double> beta; // beta[n], n = 0..cutoff; even in n
    double tail_bound = 0.0;  // upper bound for sum_{|n|>cutoff} |beta_n|
};

CupSystem build_cups(int Z, int r, std::int64_t cutoff);

// exact piecewise-polynomial evaluation (independent of the Fourier data)
double g_eval(const CupSystem& sys, double t);
double g_z_eval(const CupSystem& sys, int z_index, double t);

// truncated Fourier evaluation, for reconstruction audits
double g_fourier_eval(const CupSystem& sys, double t);

// n-th Fourier coefficient of g_z: beta_n e(-z n / (2Z)), n may be negative
std::complex<double> beta_z(const CupSystem& sys, int z_index, std::int64_t n);

// max over samples of |sum_z g_z(t) - 1| using exact evaluation
double partition_check(const CupSystem& sys, const std::vector<double>& samples);

// rows (n, beta_n)
void export_cups_csv(const CupSystem& sys, std::ostream& os);

} // namespace psrep
