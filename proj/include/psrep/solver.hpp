#pragma once

#include <cstdint>
#include <vector>

#include "psrep/arith.hpp"
#include "psrep/rosser.hpp"
#include "psrep/sieve.hpp"

namespace psrep {

// Derived pipeline parameters.  P = c_P N^gamma; z = N^alpha, D = N^delta;
// per-divisor degrees H(d) = d N^{1-gamma} log^3 N, Z(d) ~ ... log^7 N,
// R(d) = ... log^12 N.
struct PipelineParams {
    std::int64_t N = 0;
    RealExponent exp;
    double c_P = 0.25;
    double eps0 = 1e-3;
    double alpha = 0.0;
    double delta = 0.0;
    double s = 0.0;
    std::int64_t P = 0;
    std::uint64_t z = 2;
    std::uint64_t D = 2;
    bool theorem_mode = true;

    double H_of(double d) const;
    double Z_of(double d) const;
    double R_of(double d) const;
    int prime_factor_bound() const;     // floor(52/(29 - 28c)) + 1
    int sieve_factor_bound() const;     // floor(gamma / alpha)
};

// alpha/delta <= 0 selects the theorem-mode defaults
// alpha = (29 gamma - 28)/52 - eps0, delta = midpoint of
// (2 alpha, (29 gamma - 28)/26).  Explicit z/D overrides bypass the
// exponent route (recorded by clearing theorem_mode).
PipelineParams derive_params(std::int64_t N, double c, double alpha = 0.0,
                             double delta = 0.0, double c_P = 0.25,
                             double eps0 = 1e-3, bool theorem_mode = true,
                             std::uint64_t z_override = 0,
                             std::uint64_t D_override = 0);

int theorem_prime_factor_bound(double c);

struct RepresentationResult {
    std::int64_t N = 0;
    double c = 0.0;
    std::int64_t p = 0; // prime
    std::int64_t m = 0;
    int omega_m = 0;
    std::int64_t floor_p = 0, floor_m = 0; // [p^c], [m^c]
};

// All (p, m) with [p^c] + [m^c] = N, ordered by p.  With coprime_z > 0
// only m with every prime factor >= z (or m = 1) are kept.  The factor
// table must cover ceil(N^gamma).
std::vector<RepresentationResult>
find_representations(std::int64_t N, const RealExponent& e,
                     const FactorTable& ft, std::uint64_t coprime_z = 0,
                     std::size_t limit = static_cast<std::size_t>(-1));

// Gamma = sum over P < p <= 2P with a representation partner m coprime to
// B_z of log p; exact enumeration.
double gamma_sum(const PipelineParams& params, const FactorTable& ft);

// G_d both ways: direct enumeration and the A(N)/d + rho-difference form.
struct GdValue {
    double direct = 0.0;
    double formula = 0.0;
};
GdValue G_d(const PipelineParams& params, std::uint64_t d);

// A(N) = sum_{P<p<=2P} log p ((N - [p^c] + 1)^gamma - (N - [p^c])^gamma)
double A_of_N(const PipelineParams& params);

// Sigma_j = sum_{d | B_z} lambda(d) sum_{P<p<=2P} log p
//             rho(-(N + j - [p^c])^gamma / d)
double sigma_j(const PipelineParams& params, const RosserWeights& w, int j);

// Degree-H trigonometric split of Sigma_j: the partial-sum side and a
// majorant bound for the remainder.  H_override = 0 uses H(d) per divisor
// (capped); a positive value fixes one degree for every divisor.
struct VaalerSplitValue {
    double sigma_prime = 0.0;
    double majorant_bound = 0.0;
};
VaalerSplitValue sigma_vaaler_split(const PipelineParams& params,
                                    const RosserWeights& w, int j,
                                    int H_override = 0);

struct ScanRow {
    std::int64_t N = 0;
    bool found = false;
    std::int64_t p = 0, m = 0; // witness minimizing (omega_m, p)
    int min_omega = -1;
    int bound = 0;
    bool ok = false; // found and min_omega <= bound
    std::int64_t floor_p = 0, floor_m = 0;
};

// For each N in [from, to]: does [p^c] + [m^c] = N have a solution, and
// the least prime-factor count among partners m.  Exceptions are reported
// in the rows, never dropped.
std::vector<ScanRow> theorem_scan(std::int64_t from, std::int64_t to,
                                  const RealExponent& e,
                                  const FactorTable& ft);

} // namespace psrep
