#include "psrep/arith.hpp"

#include <cmath>
#include <string>

#include "psrep/mpfr_util.hpp"

namespace psrep {

static_assert(sizeof(long) >= 8, "64-bit long required");

namespace {

constexpr double kTheoremUpper = 29.0 / 28.0;

std::string fmt_pow(double base, Exponent e, std::uint64_t den, bool negate) {
    std::string s = negate ? "-(" : "(";
    s += std::to_string(base) + "^";
    s += e.reciprocal ? ("(1/" + std::to_string(e.value) + ")")
                      : std::to_string(e.value);
    s += ")";
    if (den != 1) s += "/" + std::to_string(den);
    return s;
}

int int_bits_estimate(double base, double exp_hi) {
    if (base <= 1.0) return 4;
    double b = exp_hi * std::log2(base);
    if (b > 300.0) b = 300.0; // overflow is detected exactly later
    if (b < 0.0) b = 0.0;
    return static_cast<int>(b) + 4;
}

// Directed-rounding enclosure [lo, hi] of s * base^e / den, s = +-1.
// base is an exact double >= 0, den >= 1, exponent > 0.
class Enclosure {
  public:
    Enclosure(double base, Exponent e, std::uint64_t den, bool negate,
              mpfr_prec_t prec)
        : lo_(prec), hi_(prec) {
        if (base < 0.0 || !std::isfinite(base))
            throw DomainError("power base must be finite and >= 0, got " +
                              std::to_string(base));
        if (e.value <= 0.0)
            throw DomainError("power exponent must be positive");
        if (den == 0) throw DomainError("zero divisor");

        if (base == 0.0) {
            mpfr_set_zero(lo_, 0);
            mpfr_set_zero(hi_, 0);
            return;
        }

        Mpf exl(prec), exh(prec);
        if (e.reciprocal) {
            Mpf c(prec);
            mpfr_set_d(c, e.value, MPFR_RNDN); // exact
            mpfr_ui_div(exl, 1, c, MPFR_RNDD);
            mpfr_ui_div(exh, 1, c, MPFR_RNDU);
        } else {
            mpfr_set_d(exl, e.value, MPFR_RNDN); // exact
            mpfr_set_d(exh, e.value, MPFR_RNDN);
        }

        Mpf b(prec);
        mpfr_set_d(b, base, MPFR_RNDN); // exact
        // x^e is increasing in x; for x < 1 it is decreasing in e.
        mpfr_pow(lo_, b, base < 1.0 ? exh.get() : exl.get(), MPFR_RNDD);
        mpfr_pow(hi_, b, base < 1.0 ? exl.get() : exh.get(), MPFR_RNDU);
        if (den != 1) {
            mpfr_div_ui(lo_, lo_, den, MPFR_RNDD);
            mpfr_div_ui(hi_, hi_, den, MPFR_RNDU);
        }
        if (negate) {
            mpfr_swap(lo_, hi_);
            mpfr_neg(lo_, lo_, MPFR_RNDD);
            mpfr_neg(hi_, hi_, MPFR_RNDU);
        }
    }

    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }

  private:
    Mpf lo_, hi_;
};

enum class Round { Floor, Ceil };

// One ladder step: try to certify floor/ceil of the enclosure.
bool try_round(const Enclosure& enc, Round mode, mpfr_prec_t prec,
               std::int64_t limit, std::int64_t* out, bool* overflow) {
    Mpf a(prec), b(prec);
    if (mode == Round::Floor) {
        mpfr_floor(a, enc.lo());
        mpfr_floor(b, enc.hi());
    } else {
        mpfr_ceil(a, enc.lo());
        mpfr_ceil(b, enc.hi());
    }
    if (!mpfr_equal_p(a, b)) return false;
    if (!mpfr_fits_slong_p(a, MPFR_RNDZ) ||
        mpfr_cmp_si(a, static_cast<long>(limit)) > 0) {
        *overflow = true;
        return true;
    }
    *out = static_cast<std::int64_t>(mpfr_get_si(a, MPFR_RNDZ));
    *overflow = false;
    return true;
}

struct LadderResult {
    std::int64_t rounded = 0;
    int frac_bits = 0;
    // populated only when frac requested
    double frac = 0.0;
    double frac_err = 0.0;
};

// Escalate precision until the rounding (and, if requested, the
// fractional part to width <= 2^-52) is certified.
LadderResult run_ladder(double base, Exponent e, std::uint64_t den,
                        bool negate, Round mode, bool want_frac,
                        const PrecisionPolicy& policy) {
    const double exp_hi = e.reciprocal ? 1.0 / e.value : e.value;
    const int int_bits = int_bits_estimate(base, exp_hi);
    for (int fb = policy.base_frac_bits; fb <= policy.max_frac_bits; fb *= 2) {
        const mpfr_prec_t prec = int_bits + fb + 8;
        Enclosure enc(base, e, den, negate, prec);
        std::int64_t r = 0;
        bool overflow = false;
        if (!try_round(enc, mode, prec, policy.magnitude_limit, &r, &overflow))
            continue;
        if (overflow)
            throw OverflowBeyondLimit(fmt_pow(base, e, den, negate) +
                                      " exceeds the magnitude limit");
        LadderResult res;
        res.rounded = r;
        res.frac_bits = fb;
        if (!want_frac) return res;

        // width of the enclosure bounds the frac uncertainty
        Mpf w(prec), mid(prec);
        mpfr_sub(w, enc.hi(), enc.lo(), MPFR_RNDU);
        const double width = mpfr_get_d(w, MPFR_RNDU);
        if (width > 0x1p-52 && fb < policy.max_frac_bits) continue;
        if (width > 0x1p-52)
            throw PrecisionExhausted("fractional part of " +
                                     fmt_pow(base, e, den, negate) +
                                     " not separable at max precision");
        mpfr_add(mid, enc.lo(), enc.hi(), MPFR_RNDN);
        mpfr_div_ui(mid, mid, 2, MPFR_RNDN);
        mpfr_sub_si(mid, mid, static_cast<long>(r), MPFR_RNDN);
        double f = mpfr_get_d(mid, MPFR_RNDN);
        if (f < 0.0) f = 0.0;
        if (f >= 1.0) f = std::nextafter(1.0, 0.0);
        res.frac = f;
        res.frac_err = width / 2 + 0x1p-60;
        return res;
    }
    throw PrecisionExhausted(fmt_pow(base, e, den, negate) +
                             " could not be separated from an integer at max "
                             "precision (value may be an exact integer)");
}

double checked_base(std::uint64_t n) {
    if (n > (1ull << 53))
        throw DomainError("base " + std::to_string(n) +
                          " exceeds exact double range");
    return static_cast<double>(n);
}

} // namespace

RealExponent RealExponent::make(double c, bool theorem_mode) {
    if (!(c > 1.0 && c < 1.5))
        throw DomainError("exponent c must lie in (1, 3/2), got " +
                          std::to_string(c));
    if (theorem_mode && !(c < kTheoremUpper))
        throw ConstraintViolation("theorem mode requires c < 29/28, got " +
                                  std::to_string(c));
    RealExponent e;
    e.c = c;
    e.gamma = 1.0 / c;
    e.theorem_mode = theorem_mode;
    return e;
}

CertifiedFloor certified_floor_scaled(double base, Exponent e,
                                      std::uint64_t den,
                                      const PrecisionPolicy& policy) {
    LadderResult r =
        run_ladder(base, e, den, false, Round::Floor, false, policy);
    return {r.rounded, r.frac_bits, true};
}

std::int64_t certified_ceil_scaled(double base, Exponent e, std::uint64_t den,
                                   const PrecisionPolicy& policy) {
    return run_ladder(base, e, den, false, Round::Ceil, false, policy).rounded;
}

CertifiedFrac certified_frac_scaled(double base, Exponent e, std::uint64_t den,
                                    bool negate,
                                    const PrecisionPolicy& policy) {
    LadderResult r = run_ladder(base, e, den, negate, Round::Floor, true, policy);
    return {r.frac, r.frac_err, r.frac_bits};
}

CertifiedFloor floor_pow(std::uint64_t n, double exp,
                         const PrecisionPolicy& policy) {
    if (n < 1) throw DomainError("floor_pow requires n >= 1");
    if (!(exp > 0.0 && exp < 3.0))
        throw DomainError("floor_pow exponent must lie in (0, 3)");
    return certified_floor_scaled(checked_base(n), Exponent::direct(exp), 1, policy);
}

CertifiedFloor floor_pow(std::uint64_t n, const RealExponent& e,
                         const PrecisionPolicy& policy) {
    if (n < 1) throw DomainError("floor_pow requires n >= 1");
    return certified_floor_scaled(checked_base(n), Exponent::direct(e.c), 1, policy);
}

CertifiedFrac frac_pow(std::uint64_t n, double exp,
                       const PrecisionPolicy& policy) {
    if (n < 1) throw DomainError("frac_pow requires n >= 1");
    if (!(exp > 0.0 && exp < 3.0))
        throw DomainError("frac_pow exponent must lie in (0, 3)");
    return certified_frac_scaled(checked_base(n), Exponent::direct(exp), 1,
                                 false, policy);
}

double rho(double t) {
    double f = t - std::floor(t);
    if (f >= 1.0) f = std::nextafter(1.0, 0.0); // {t} -> 1^- rounding
    return 0.5 - f;
}

static std::int64_t count_impl(std::int64_t d, double lo, double hi,
                               Exponent gamma, const PrecisionPolicy& policy) {
    if (d < 1) throw DomainError("count_in_power_interval requires d >= 1");
    if (!(lo >= 0.0 && lo < hi))
        throw DomainError("count_in_power_interval requires 0 <= lo < hi");
    const auto du = static_cast<std::uint64_t>(d);
    // multiples d*k with lo^g <= d*k < hi^g, k >= 1:
    //   ceil(hi^g/d) - max(ceil(lo^g/d), 1)
    std::int64_t a = lo == 0.0 ? 0 : certified_ceil_scaled(lo, gamma, du, policy);
    std::int64_t b = certified_ceil_scaled(hi, gamma, du, policy);
    if (a < 1) a = 1;
    return b > a ? b - a : 0;
}

std::int64_t count_in_power_interval(std::int64_t d, double lo, double hi,
                                     double gamma,
                                     const PrecisionPolicy& policy) {
    if (!(gamma > 0.0))
        throw DomainError("count_in_power_interval requires gamma > 0");
    return count_impl(d, lo, hi, Exponent::direct(gamma), policy);
}

std::int64_t count_in_power_interval(std::int64_t d, double lo, double hi,
                                     const RealExponent& e,
                                     const PrecisionPolicy& policy) {
    return count_impl(d, lo, hi, Exponent::reciprocal_of(e.c), policy);
}

double rho_of_neg_scaled_pow(double base, Exponent e, std::uint64_t den,
                             const PrecisionPolicy& policy) {
    return 0.5 - certified_frac_scaled(base, e, den, true, policy).value;
}

} // namespace psrep
