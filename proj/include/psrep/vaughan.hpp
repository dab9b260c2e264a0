#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "psrep/expsum.hpp"
#include "psrep/sieve.hpp"

namespace psrep {

// Coefficient tables for the decomposition of sum Lambda(n) e(phi(n)) over
// (P, 2P] with splitting parameter u = P^(1/3):
//   c(m) = sum_{de=m, d<=u, e<=u} mu(d) Lambda(e)   (m <= P^(2/3))
//   a(m) = sum_{d|m, d<=u} mu(d)
// Range comparisons against the real P^(1/3), P^(2/3) are done in exact
// integer form (m <= P^(1/3) iff m^3 <= P).
struct VaughanCoeffs {
    std::int64_t P = 0;
    std::int64_t u = 1;       // largest integer with u^3 <= P
    std::int64_t m_c_max = 1; // largest integer with m^3 <= P^2
    std::int64_t m_a_max = 1; // 2P/(u+1), the largest m reached by U4
    std::vector<double> c;    // index m, 0..m_c_max
    std::vector<double> a;    // index m, 0..m_a_max
};

VaughanCoeffs build_coeffs(std::int64_t P, const FactorTable& ft);

// The four sums; the decomposition identity reads
//   sum_{P<n<=2P} Lambda(n) e(phi(n)) = U1 - U2 - U3 - U4
// exactly (every n in the range exceeds u).
struct VaughanSplit {
    std::complex<double> U1{0, 0}, U2{0, 0}, U3{0, 0}, U4{0, 0};
    std::complex<double> total() const { return U1 - U2 - U3 - U4; }
};

VaughanSplit vaughan_split(const VaughanCoeffs& vc, const PhaseSpec& phase,
                           const FactorTable& ft);

// |sum_{P<p<=2P} log p e(phi(p)) - sum_{P<n<=2P} Lambda(n) e(phi(n))|,
// i.e. the prime-power correction, bounded by 2 sqrt(P) log(2P).
double prime_vs_lambda_gap(std::int64_t P, const PhaseSpec& phase,
                           const FactorTable& ft);

} // namespace psrep
