#pragma once

#include <cstdint>
#include <limits>

#include "psrep/errors.hpp"

namespace psrep {

// Exponent c with gamma = 1/c.  In theorem mode c must lie in (1, 29/28);
// the wider range (1, 3/2) is accepted for free experiments and the mode
// is recorded.
struct RealExponent {
    double c = 1.01;
    double gamma = 0.0; // double image of 1/c; exact-reciprocal semantics
                        // are used by the certified evaluators below
    bool theorem_mode = true;

    static RealExponent make(double c, bool theorem_mode = true);
};

// An exponent for certified evaluation: either the double `value` itself,
// or the exact reciprocal 1/value (used for gamma = 1/c, which has no
// exact double image).
struct Exponent {
    double value = 1.0;
    bool reciprocal = false;

    static Exponent direct(double e) { return {e, false}; }
    static Exponent reciprocal_of(double c) { return {c, true}; }
    double approx() const { return reciprocal ? 1.0 / value : value; }
};

struct PrecisionPolicy {
    int base_frac_bits = 64;
    int max_frac_bits = 1024;
    std::int64_t magnitude_limit = std::numeric_limits<std::int64_t>::max();
};

struct CertifiedFloor {
    std::int64_t value = 0;
    int precision_bits_used = 0;
    bool certified = true;
};

struct CertifiedFrac {
    double value = 0.0;       // in [0, 1)
    double error_bound = 0.0; // absolute, <= 2^-50
    int precision_bits_used = 0;
};

// Exact integer part of n^exp, certified by an enclosing interval that
// excludes every integer boundary.  Precision escalates from
// base_frac_bits, doubling, until certification succeeds.
CertifiedFloor floor_pow(std::uint64_t n, double exp,
                         const PrecisionPolicy& policy = {});
CertifiedFloor floor_pow(std::uint64_t n, const RealExponent& e,
                         const PrecisionPolicy& policy = {});

// {n^exp} with a certified absolute error bound <= 2^-50.
CertifiedFrac frac_pow(std::uint64_t n, double exp,
                       const PrecisionPolicy& policy = {});

// rho(t) = 1/2 - {t}, in (-1/2, 1/2].
double rho(double t);

// #{m in N : d | m, lo <= m^(1/gamma) < hi}; computed exactly through
// certified ceilings of lo^gamma/d and hi^gamma/d.
std::int64_t count_in_power_interval(std::int64_t d, double lo, double hi,
                                     double gamma,
                                     const PrecisionPolicy& policy = {});
// Same count with gamma taken as the exact reciprocal 1/c.
std::int64_t count_in_power_interval(std::int64_t d, double lo, double hi,
                                     const RealExponent& e,
                                     const PrecisionPolicy& policy = {});

// ---- certified scaled-power primitives (shared by the solver) ----

// floor(base^e / den), certified.
CertifiedFloor certified_floor_scaled(double base, Exponent e,
                                      std::uint64_t den = 1,
                                      const PrecisionPolicy& policy = {});

// smallest integer >= base^e / den, certified.
std::int64_t certified_ceil_scaled(double base, Exponent e,
                                   std::uint64_t den = 1,
                                   const PrecisionPolicy& policy = {});

// {s * base^e / den} with s = +1 or -1, certified to <= 2^-50.
CertifiedFrac certified_frac_scaled(double base, Exponent e,
                                    std::uint64_t den = 1, bool negate = false,
                                    const PrecisionPolicy& policy = {});

// rho(-base^e / den) evaluated through the certified fractional part;
// escalates near the jump points of rho.
double rho_of_neg_scaled_pow(double base, Exponent e, std::uint64_t den,
                             const PrecisionPolicy& policy = {});

} // namespace psrep
