#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "psrep/arith.hpp"
#include "psrep/cups.hpp"
#include "psrep/num.hpp"
#include "psrep/sieve.hpp"

namespace psrep {

// theta(x) = coeff * x^exponent
struct PowerPhase {
    double coeff = 0.0;
    double exponent = 1.0;
};

// phi(t) = r t^c + v (T - t^c)^gamma; requires T - t^c > 0 on the range
struct CombinedPhase {
    std::int64_t r = 0;
    Rational v{0, 1};
    double T = 0.0;
    RealExponent exp;
};

using PhaseSpec = std::variant<PowerPhase, CombinedPhase>;

enum class Weight { Unit, LogPrimes, VonMangoldt };

struct ExpSumResult {
    std::complex<double> value{0.0, 0.0};
    std::int64_t terms = 0;
    bool compensated = true;
};

// Evaluates {phase(n)} through extended-precision reduction mod 1; the
// working precision is sized from the phase magnitude over |n| <= max_n.
// One evaluator per thread: the internal scratch is reused across calls.
class PhaseEvaluator {
  public:
    PhaseEvaluator(const PhaseSpec& spec, std::int64_t max_n);
    ~PhaseEvaluator();
    PhaseEvaluator(PhaseEvaluator&&) noexcept;
    PhaseEvaluator(const PhaseEvaluator&) = delete;
    PhaseEvaluator& operator=(const PhaseEvaluator&) = delete;

    double frac_at(std::int64_t n) const; // {phase(n)} in [0, 1)

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// sum over n in (a, b] of weight(n) e(phase(n)); LogPrimes restricts the
// sum to primes with weight log p, VonMangoldt weights by Lambda(n) and
// needs the factor table.
ExpSumResult eval_exp_sum(std::int64_t a, std::int64_t b, const PhaseSpec& spec,
                          Weight weight, const FactorTable* ft = nullptr,
                          int shards = 1);

// W(v) = sum_{P<p<=2P} log p * e(v (N + j - [p^c])^gamma)
std::complex<double> eval_W(Rational v, std::int64_t N, int j,
                            const RealExponent& e, std::int64_t P);

// W_z(v): same with the cup factor g_z(p^c)
std::complex<double> eval_Wz(Rational v, int z_index, const CupSystem& cups,
                             std::int64_t N, int j, const RealExponent& e,
                             std::int64_t P);

// V_z(v): [p^c] replaced by p^c - z/(2Z) inside the phase
std::complex<double> eval_Vz(Rational v, int z_index, const CupSystem& cups,
                             std::int64_t N, int j, const RealExponent& e,
                             std::int64_t P);

// U(T, r, v) = sum_{P<p<=2P} log p * e(r p^c + v (T - p^c)^gamma)
std::complex<double> eval_U(double T, std::int64_t r, Rational v,
                            std::int64_t P, const RealExponent& e);

// H_n = sum_{P<k<=2P} e(n k^c) against the second-derivative bound
// P^{c/2} n^{1/2}
struct VdcRow {
    std::int64_t n = 0;
    double abs_sum = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
};
struct VdcAudit {
    std::vector<VdcRow> rows;
    double fitted_constant = 0.0; // max ratio over the grid
};
VdcAudit vdc_audit_2(std::int64_t P, const RealExponent& e,
                     const std::vector<std::int64_t>& ns, int shards = 1);

// both sides of the shift inequality
//   |sum_{a<m<=b} xi(m)|^2 <=
//     (b-a+Q)/Q * sum_{|q|<Q} (1-|q|/Q) sum_m xi(m+q) conj(xi(m))
// xi holds the values on (a, b] in order.
struct WeylCheck {
    double lhs = 0.0;
    double rhs = 0.0;
};
WeylCheck weyl_shift_check(const std::vector<std::complex<double>>& xi,
                           std::int64_t Q);

struct PhaseDerivatives {
    double d1 = 0.0, d2 = 0.0, d3 = 0.0;
};
PhaseDerivatives phase_derivatives(const PhaseSpec& spec, double t);

// partials in l of f(m, l) = phi(m l): d^k/dl^k = m^k phi^(k)(m l)
PhaseDerivatives fml_derivatives(const CombinedPhase& spec, std::int64_t m,
                                 double l);

} // namespace psrep
