#include "psrep/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "psrep/mpfr_util.hpp"

namespace psrep {

namespace {

int magnitude_bits(double mag) {
    if (!(mag > 1.0)) return 2;
    return static_cast<int>(std::log2(mag)) + 2;
}

// reduce x to [0, 1)
void frac_to_unit(mpfr_ptr out, mpfr_srcptr x, mpfr_ptr scratch) {
    mpfr_floor(scratch, x);
    mpfr_sub(out, x, scratch, MPFR_RNDN);
}

double clamp_unit(double f) {
    if (f < 0.0) return 0.0;
    if (f >= 1.0) return std::nextafter(1.0, 0.0);
    return f;
}

} // namespace

struct PhaseEvaluator::Impl {
    PhaseSpec spec;
    mpfr_prec_t prec;
    mutable Mpf x, y, t1, t2, s;

    Impl(const PhaseSpec& sp, mpfr_prec_t pr)
        : spec(sp), prec(pr), x(pr), y(pr), t1(pr), t2(pr), s(pr) {}

    double frac(std::int64_t n) const {
        if (const auto* pp = std::get_if<PowerPhase>(&spec)) {
            if (n < 0) throw PhaseDomainError("power phase needs n >= 0");
            mpfr_set_si(x, n, MPFR_RNDN);
            mpfr_set_d(y, pp->exponent, MPFR_RNDN);
            mpfr_pow(x, x, y, MPFR_RNDN);
            mpfr_set_d(y, pp->coeff, MPFR_RNDN);
            mpfr_mul(x, x, y, MPFR_RNDN);
            frac_to_unit(t1, x, t2);
            return clamp_unit(mpfr_get_d(t1, MPFR_RNDN));
        }
        const auto& cp = std::get<CombinedPhase>(spec);
        if (n < 1) throw PhaseDomainError("combined phase needs n >= 1");
        mpfr_set_si(x, n, MPFR_RNDN);
        mpfr_set_d(y, cp.exp.c, MPFR_RNDN);
        mpfr_pow(x, x, y, MPFR_RNDN); // n^c
        mpfr_d_sub(y, cp.T, x, MPFR_RNDN);
        if (mpfr_sgn(y.get()) <= 0)
            throw PhaseDomainError("combined phase: T - n^c <= 0 at n = " +
                                   std::to_string(n));
        mpfr_set_d(t1, cp.exp.c, MPFR_RNDN);
        mpfr_ui_div(t1, 1, t1, MPFR_RNDN); // gamma = 1/c
        mpfr_pow(y, y, t1, MPFR_RNDN);     // (T - n^c)^gamma
        mpfr_mul_si(y, y, cp.v.num, MPFR_RNDN);
        if (cp.v.den != 1) mpfr_div_si(y, y, cp.v.den, MPFR_RNDN);
        mpfr_mul_si(x, x, cp.r, MPFR_RNDN);
        mpfr_add(s, x, y, MPFR_RNDN);
        frac_to_unit(t1, s, t2);
        return clamp_unit(mpfr_get_d(t1, MPFR_RNDN));
    }
};

PhaseEvaluator::PhaseEvaluator(const PhaseSpec& spec, std::int64_t max_n) {
    double mag = 2.0;
    const double b = static_cast<double>(std::max<std::int64_t>(max_n, 2));
    if (const auto* pp = std::get_if<PowerPhase>(&spec)) {
        mag = std::abs(pp->coeff) * std::pow(b, pp->exponent) + 2.0;
    } else {
        const auto& cp = std::get<CombinedPhase>(spec);
        const double xc = std::pow(b, cp.exp.c);
        mag = std::abs(static_cast<double>(cp.r)) * xc +
              std::abs(cp.v.value()) * std::pow(std::abs(cp.T) + 2.0, cp.exp.gamma) +
              2.0;
    }
    const mpfr_prec_t prec = 64 + magnitude_bits(mag) + 80;
    impl_ = std::make_unique<Impl>(spec, prec);
}

PhaseEvaluator::~PhaseEvaluator() = default;
PhaseEvaluator::PhaseEvaluator(PhaseEvaluator&&) noexcept = default;

double PhaseEvaluator::frac_at(std::int64_t n) const { return impl_->frac(n); }

ExpSumResult eval_exp_sum(std::int64_t a, std::int64_t b, const PhaseSpec& spec,
                          Weight weight, const FactorTable* ft, int shards) {
    if (b < a) throw DomainError("eval_exp_sum: empty-inverted range");
    if (b - a > 1'000'000'000)
        throw RangeTooLarge("eval_exp_sum range longer than 1e9");
    if (a < 0) throw DomainError("eval_exp_sum needs a >= 0");
    ExpSumResult res;
    if (a == b) return res;

    if (weight == Weight::LogPrimes) {
        // segmented prime enumeration, sequential by construction
        PhaseEvaluator ev(spec, b);
        KahanComplexSum acc;
        std::int64_t terms = 0;
        for_each_prime(static_cast<std::uint64_t>(a),
                       static_cast<std::uint64_t>(b), [&](std::uint64_t p) {
                           const double w = std::log(static_cast<double>(p));
                           acc.add(w * e_of(ev.frac_at(static_cast<std::int64_t>(p))));
                           ++terms;
                       });
        res.value = acc.value();
        res.terms = terms;
        return res;
    }

    if (weight == Weight::VonMangoldt) {
        if (ft == nullptr)
            throw DomainError("VonMangoldt weight needs a factor table");
        if (static_cast<std::uint64_t>(b) > ft->limit())
            throw OutOfTableRange("eval_exp_sum: range beyond factor table");
    }

    struct Partial {
        std::complex<double> v{0.0, 0.0};
        std::int64_t terms = 0;
    };
    auto block = [&](std::int64_t lo, std::int64_t hi) {
        PhaseEvaluator ev(spec, b);
        KahanComplexSum acc;
        std::int64_t terms = 0;
        for (std::int64_t n = lo; n < hi; ++n) {
            double w = 1.0;
            if (weight == Weight::VonMangoldt) {
                w = ft->von_mangoldt(static_cast<std::uint64_t>(n));
                if (w == 0.0) continue;
            }
            acc.add(w * e_of(ev.frac_at(n)));
            ++terms;
        }
        return Partial{acc.value(), terms};
    };
    auto merged = blocked_reduce<Partial>(
        a + 1, b + 1, shards, block,
        [](Partial x, const Partial& y) {
            x.v += y.v;
            x.terms += y.terms;
            return x;
        },
        Partial{});
    res.value = merged.v;
    res.terms = merged.terms;
    return res;
}

namespace {

// frac of v * B^gamma with integer B, exact rational v
class VPowGammaFrac {
  public:
    VPowGammaFrac(Rational v, const RealExponent& e, std::int64_t max_base)
        : v_(v) {
        const double mag =
            std::abs(v.value()) *
                std::pow(static_cast<double>(std::max<std::int64_t>(max_base, 2)),
                         e.gamma) +
            2.0;
        prec_ = 64 + magnitude_bits(mag) + 80;
        x_ = std::make_unique<Mpf>(prec_);
        g_ = std::make_unique<Mpf>(prec_);
        t_ = std::make_unique<Mpf>(prec_);
        u_ = std::make_unique<Mpf>(prec_);
        mpfr_set_d(*t_, e.c, MPFR_RNDN);
        mpfr_ui_div(*g_, 1, *t_, MPFR_RNDN); // gamma at working precision
    }

    double frac(std::int64_t base) const {
        if (base < 1) throw PhaseDomainError("phase base must be >= 1");
        mpfr_set_si(*x_, base, MPFR_RNDN);
        mpfr_pow(*x_, *x_, *g_, MPFR_RNDN);
        mpfr_mul_si(*x_, *x_, v_.num, MPFR_RNDN);
        if (v_.den != 1) mpfr_div_si(*x_, *x_, v_.den, MPFR_RNDN);
        mpfr_floor(*t_, *x_);
        mpfr_sub(*u_, *x_, *t_, MPFR_RNDN);
        return clamp_unit(mpfr_get_d(*u_, MPFR_RNDN));
    }

  private:
    Rational v_;
    mpfr_prec_t prec_;
    mutable std::unique_ptr<Mpf> x_, g_, t_, u_;
};

void check_vj(Rational v, int j) {
    if (v.den <= 0) throw DomainError("rational v needs positive denominator");
    if (j != 0 && j != 1) throw DomainError("j must be 0 or 1");
}

} // namespace

std::complex<double> eval_W(Rational v, std::int64_t N, int j,
                            const RealExponent& e, std::int64_t P) {
    check_vj(v, j);
    VPowGammaFrac vf(v, e, N + 1);
    KahanComplexSum acc;
    for_each_prime(static_cast<std::uint64_t>(P),
                   static_cast<std::uint64_t>(2 * P), [&](std::uint64_t p) {
                       const auto fp = floor_pow(p, e);
                       const std::int64_t B = N + j - fp.value;
                       if (B < 1)
                           throw PhaseDomainError("eval_W: N + j - [p^c] < 1");
                       acc.add(std::log(static_cast<double>(p)) *
                               e_of(vf.frac(B)));
                   });
    return acc.value();
}

std::complex<double> eval_Wz(Rational v, int z_index, const CupSystem& cups,
                             std::int64_t N, int j, const RealExponent& e,
                             std::int64_t P) {
    check_vj(v, j);
    VPowGammaFrac vf(v, e, N + 1);
    KahanComplexSum acc;
    for_each_prime(
        static_cast<std::uint64_t>(P), static_cast<std::uint64_t>(2 * P),
        [&](std::uint64_t p) {
            const double g = g_z_eval(cups, z_index, frac_pow(p, e.c).value);
            if (g == 0.0) return;
            const auto fp = floor_pow(p, e);
            const std::int64_t B = N + j - fp.value;
            if (B < 1) throw PhaseDomainError("eval_Wz: N + j - [p^c] < 1");
            acc.add(g * std::log(static_cast<double>(p)) * e_of(vf.frac(B)));
        });
    return acc.value();
}

std::complex<double> eval_Vz(Rational v, int z_index, const CupSystem& cups,
                             std::int64_t N, int j, const RealExponent& e,
                             std::int64_t P) {
    check_vj(v, j);
    if (z_index < 0 || z_index >= 2 * cups.Z)
        throw DomainError("eval_Vz: cup index out of range");
    const double mag =
        std::abs(v.value()) * std::pow(static_cast<double>(N) + 2.0, e.gamma) + 2.0;
    const mpfr_prec_t prec = 64 + magnitude_bits(mag) + 80;
    Mpf x(prec), g(prec), t(prec), u(prec);
    mpfr_set_d(t, e.c, MPFR_RNDN);
    mpfr_ui_div(g, 1, t, MPFR_RNDN);

    KahanComplexSum acc;
    for_each_prime(
        static_cast<std::uint64_t>(P), static_cast<std::uint64_t>(2 * P),
        [&](std::uint64_t p) {
            const double gz = g_z_eval(cups, z_index, frac_pow(p, e.c).value);
            if (gz == 0.0) return;
            // base = N + j + z/(2Z) - p^c
            mpfr_set_ui(x, p, MPFR_RNDN);
            mpfr_set_d(t, e.c, MPFR_RNDN);
            mpfr_pow(x, x, t, MPFR_RNDN);
            mpfr_set_si(t, 2 * static_cast<long>(cups.Z), MPFR_RNDN);
            mpfr_si_div(t, static_cast<long>(z_index), t, MPFR_RNDN);
            mpfr_add_si(t, t, static_cast<long>(N + j), MPFR_RNDN);
            mpfr_sub(x, t, x, MPFR_RNDN);
            if (mpfr_sgn(x.get()) <= 0)
                throw PhaseDomainError("eval_Vz: phase base <= 0");
            mpfr_pow(x, x, g, MPFR_RNDN);
            mpfr_mul_si(x, x, v.num, MPFR_RNDN);
            if (v.den != 1) mpfr_div_si(x, x, v.den, MPFR_RNDN);
            mpfr_floor(t, x);
            mpfr_sub(u, x, t, MPFR_RNDN);
            acc.add(gz * std::log(static_cast<double>(p)) *
                    e_of(clamp_unit(mpfr_get_d(u, MPFR_RNDN))));
        });
    return acc.value();
}

std::complex<double> eval_U(double T, std::int64_t r, Rational v,
                            std::int64_t P, const RealExponent& e) {
    if (v.den <= 0) throw DomainError("rational v needs positive denominator");
    CombinedPhase cp{r, v, T, e};
    PhaseEvaluator ev(PhaseSpec{cp}, 2 * P);
    KahanComplexSum acc;
    for_each_prime(static_cast<std::uint64_t>(P),
                   static_cast<std::uint64_t>(2 * P), [&](std::uint64_t p) {
                       acc.add(std::log(static_cast<double>(p)) *
                               e_of(ev.frac_at(static_cast<std::int64_t>(p))));
                   });
    return acc.value();
}

VdcAudit vdc_audit_2(std::int64_t P, const RealExponent& e,
                     const std::vector<std::int64_t>& ns, int shards) {
    if (P < 2 || P > 1'000'000)
        throw RangeTooLarge("vdc_audit_2 requires 2 <= P <= 1e6");
    if (ns.empty()) throw DomainError("vdc_audit_2 needs a grid of n");
    for (auto n : ns)
        if (n < 1) throw DomainError("vdc_audit_2 needs n >= 1");

    // {k^c} is computed once per k; {n k^c} = {n {k^c}} since n [k^c] is
    // an integer.  long double keeps 64 fractional bits, good to ~1e-15
    // per term after multiplying by n <= ~1e6.
    const double mag = std::pow(2.0 * static_cast<double>(P), e.c);
    const mpfr_prec_t prec = magnitude_bits(mag) + 88;
    using Partial = std::vector<std::complex<double>>;
    auto block = [&](std::int64_t lo, std::int64_t hi) {
        Mpf x(prec), t(prec);
        Partial part(ns.size(), {0.0, 0.0});
        for (std::int64_t k = lo; k < hi; ++k) {
            mpfr_set_si(x, k, MPFR_RNDN);
            mpfr_set_d(t, e.c, MPFR_RNDN);
            mpfr_pow(x, x, t, MPFR_RNDN);
            mpfr_floor(t, x);
            mpfr_sub(x, x, t, MPFR_RNDN);
            const long double fr = mpfr_get_ld(x, MPFR_RNDN);
            for (std::size_t i = 0; i < ns.size(); ++i) {
                long double u = static_cast<long double>(ns[i]) * fr;
                u -= std::floor(u);
                part[i] += e_of(static_cast<double>(u));
            }
        }
        return part;
    };
    auto merged = blocked_reduce<Partial>(
        P + 1, 2 * P + 1, shards, block,
        [&](Partial a, const Partial& b) {
            if (a.empty()) return b;
            for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
            return a;
        },
        Partial{});

    VdcAudit audit;
    audit.rows.reserve(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) {
        VdcRow row;
        row.n = ns[i];
        row.abs_sum = std::abs(merged[i]);
        row.bound = std::pow(static_cast<double>(P), e.c / 2.0) *
                    std::sqrt(static_cast<double>(ns[i]));
        row.ratio = row.abs_sum / row.bound;
        audit.fitted_constant = std::max(audit.fitted_constant, row.ratio);
        audit.rows.push_back(row);
    }
    return audit;
}

WeylCheck weyl_shift_check(const std::vector<std::complex<double>>& xi,
                           std::int64_t Q) {
    if (Q < 1) throw DomainError("weyl_shift_check requires Q >= 1");
    if (xi.empty()) throw DomainError("weyl_shift_check requires 1 <= b - a");
    const auto L = static_cast<std::int64_t>(xi.size());
    KahanComplexSum full;
    for (const auto& z : xi) full.add(z);
    const double lhs = std::norm(full.value());

    KahanComplexSum rhs_acc;
    for (std::int64_t q = -(Q - 1); q <= Q - 1; ++q) {
        const double w = 1.0 - std::abs(static_cast<double>(q)) / Q;
        KahanComplexSum corr;
        const std::int64_t m_lo = std::max<std::int64_t>(1, 1 - q);
        const std::int64_t m_hi = std::min<std::int64_t>(L, L - q);
        for (std::int64_t m = m_lo; m <= m_hi; ++m)
            corr.add(xi[static_cast<std::size_t>(m + q - 1)] *
                     std::conj(xi[static_cast<std::size_t>(m - 1)]));
        rhs_acc.add(w * corr.value());
    }
    const double rhs =
        (static_cast<double>(L + Q) / static_cast<double>(Q)) *
        rhs_acc.value().real();
    return {lhs, rhs};
}

PhaseDerivatives phase_derivatives(const PhaseSpec& spec, double t) {
    PhaseDerivatives d;
    if (const auto* pp = std::get_if<PowerPhase>(&spec)) {
        if (!(t > 0.0)) throw PhaseDomainError("power phase derivative needs t > 0");
        const double A = pp->coeff, e = pp->exponent;
        d.d1 = A * e * std::pow(t, e - 1.0);
        d.d2 = A * e * (e - 1.0) * std::pow(t, e - 2.0);
        d.d3 = A * e * (e - 1.0) * (e - 2.0) * std::pow(t, e - 3.0);
        return d;
    }
    const auto& cp = std::get<CombinedPhase>(spec);
    if (!(t > 0.0)) throw PhaseDomainError("combined phase derivative needs t > 0");
    const double c = cp.exp.c, g = cp.exp.gamma, T = cp.T;
    const double v = cp.v.value();
    const double r = static_cast<double>(cp.r);
    const double xc = std::pow(t, c);
    const double y = T - xc;
    if (!(y > 0.0))
        throw PhaseDomainError("combined phase derivative: T - t^c <= 0");
    // phi'   = r c t^{c-1} - c gamma v t^{c-1} y^{gamma-1}
    // phi''  = r c (c-1) t^{c-2} - v (c-1) T t^{c-2} y^{gamma-2}
    // phi''' = r c (c-1)(c-2) t^{c-3}
    //          + v (c-1) T y^{gamma-3} t^{c-3} ((2-c) T - (c+1) t^c)
    // (the last two use c * gamma = 1)
    d.d1 = r * c * std::pow(t, c - 1.0) -
           c * g * v * std::pow(t, c - 1.0) * std::pow(y, g - 1.0);
    d.d2 = r * c * (c - 1.0) * std::pow(t, c - 2.0) -
           v * (c - 1.0) * T * std::pow(t, c - 2.0) * std::pow(y, g - 2.0);
    d.d3 = r * c * (c - 1.0) * (c - 2.0) * std::pow(t, c - 3.0) +
           v * (c - 1.0) * T * std::pow(y, g - 3.0) * std::pow(t, c - 3.0) *
               ((2.0 - c) * T - (c + 1.0) * xc);
    return d;
}

PhaseDerivatives fml_derivatives(const CombinedPhase& spec, std::int64_t m,
                                 double l) {
    if (m < 1) throw DomainError("fml_derivatives requires m >= 1");
    const double md = static_cast<double>(m);
    PhaseDerivatives d = phase_derivatives(PhaseSpec{spec}, md * l);
    d.d1 *= md;
    d.d2 *= md * md;
    d.d3 *= md * md * md;
    return d;
}

} // namespace psrep
