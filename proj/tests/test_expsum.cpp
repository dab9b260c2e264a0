#include "doctest.h"

#include <cmath>
#include <random>

#include "psrep/expsum.hpp"
#include "oracles.hpp"

using namespace psrep;

TEST_SUITE_BEGIN("expsum");

namespace {

const RealExponent kExp = RealExponent::make(1.01);

// straightforward fixed 512-bit evaluation of U(T, r, v), kept separate
// from the production path
std::complex<double> oracle_U(double T, long r, Rational v, std::int64_t P,
                              double c) {
    const auto seg =
        primes_between(static_cast<std::uint64_t>(P), static_cast<std::uint64_t>(2 * P));
    mpfr_t x, y, g, s;
    mpfr_inits2(512, x, y, g, s, (mpfr_ptr)nullptr);
    mpfr_set_d(g, c, MPFR_RNDN);
    mpfr_ui_div(g, 1, g, MPFR_RNDN);
    KahanComplexSum acc;
    for (auto p : seg.primes) {
        mpfr_set_ui(x, p, MPFR_RNDN);
        mpfr_set_d(s, c, MPFR_RNDN);
        mpfr_pow(x, x, s, MPFR_RNDN);
        mpfr_d_sub(y, T, x, MPFR_RNDN);
        mpfr_pow(y, y, g, MPFR_RNDN);
        mpfr_mul_si(y, y, v.num, MPFR_RNDN);
        mpfr_div_si(y, y, v.den, MPFR_RNDN);
        mpfr_mul_si(x, x, r, MPFR_RNDN);
        mpfr_add(s, x, y, MPFR_RNDN);
        mpfr_floor(x, s);
        mpfr_sub(s, s, x, MPFR_RNDN);
        acc.add(std::log(static_cast<double>(p)) *
                e_of(mpfr_get_d(s, MPFR_RNDN)));
    }
    mpfr_clears(x, y, g, s, (mpfr_ptr)nullptr);
    return acc.value();
}

} // namespace

TEST_CASE("trivial sums") {
    const PhaseSpec zero = PowerPhase{0.0, 1.0};
    CHECK(eval_exp_sum(5, 5, zero, Weight::Unit).value == std::complex<double>{0.0, 0.0});
    const auto r = eval_exp_sum(0, 100, zero, Weight::Unit);
    CHECK(r.value.real() == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(r.value.imag() == 0.0);
    CHECK(r.terms == 100);
}

TEST_CASE("H_n against an independent 50-digit oracle") {
    // sum_{1000<k<=2000} e(k^1.01), frozen from an mpmath evaluation
    const PhaseSpec phase = PowerPhase{1.0, 1.01};
    const auto r = eval_exp_sum(1000, 2000, phase, Weight::Unit);
    CHECK(r.value.real() ==
          doctest::Approx(0.60619555130487595).epsilon(1e-9));
    CHECK(r.value.imag() ==
          doctest::Approx(-3.6106082609565807).epsilon(1e-9));
    CHECK(std::abs(r.value) <= static_cast<double>(r.terms));
}

TEST_CASE("bitwise stability across shard counts") {
    const PhaseSpec phase = PowerPhase{3.0, 1.17};
    const auto a = eval_exp_sum(0, 50000, phase, Weight::Unit, nullptr, 1);
    const auto b = eval_exp_sum(0, 50000, phase, Weight::Unit, nullptr, 2);
    const auto c = eval_exp_sum(0, 50000, phase, Weight::Unit, nullptr, 7);
    CHECK(a.value.real() == b.value.real());
    CHECK(a.value.imag() == b.value.imag());
    CHECK(a.value.real() == c.value.real());
    CHECK(a.value.imag() == c.value.imag());
}

TEST_CASE("W at v = 0 collapses to the prime log sum") {
    const std::int64_t N = 100000, P = 20000;
    const auto w0 = eval_W({0, 1}, N, 0, kExp, P);
    CHECK(w0.imag() == 0.0);
    CHECK(w0.real() == doctest::Approx(chebyshev_theta(P, 2 * P)).epsilon(1e-12));
    for (Rational v : {Rational{1, 3}, Rational{2, 7}, Rational{-5, 11}}) {
        const auto w = eval_W(v, N, 0, kExp, P);
        CHECK(std::abs(w) <= w0.real() * (1 + 1e-12));
    }
    // deterministic reduction: identical reruns bitwise
    const auto w1 = eval_W({2, 3}, N, 1, kExp, P);
    const auto w2 = eval_W({2, 3}, N, 1, kExp, P);
    CHECK(w1.real() == w2.real());
    CHECK(w1.imag() == w2.imag());
}

TEST_CASE("cup decomposition reassembles W exactly") {
    const std::int64_t N = 100000, P = 20000;
    const auto cups = build_cups(16, 8, 200);
    for (Rational v : {Rational{1, 3}, Rational{2, 7}}) {
        const auto w = eval_W(v, N, 0, kExp, P);
        std::complex<double> sum{0.0, 0.0};
        for (int z = 0; z < 32; ++z)
            sum += eval_Wz(v, z, cups, N, 0, kExp, P);
        CHECK(std::abs(w - sum) <= 1e-9 * std::abs(w));
    }
}

TEST_CASE("cup with empty support gives a zero W_z") {
    // only prime in (2, 4] is 3; {3^1.01} ~ 0.033 lives near cup 0/1
    const auto cups = build_cups(8, 6, 100);
    const auto w = eval_Wz({1, 2}, 8, cups, 100, 0, kExp, 2);
    CHECK(w == std::complex<double>{0.0, 0.0});
}

TEST_CASE("V_z stays within the linearization error of W_z") {
    const std::int64_t N = 100000, P = 20000;
    const auto cups = build_cups(16, 8, 200);
    const double gamma = kExp.gamma;
    int checked = 0;
    for (Rational v : {Rational{1, 3}, Rational{5, 11}}) {
        for (int z : {1, 5, 9, 17, 30}) {
            // weighted mass of the cup
            KahanSum mass;
            for_each_prime(P, 2 * P, [&](std::uint64_t p) {
                mass.add(std::log(static_cast<double>(p)) *
                         g_z_eval(cups, z, frac_pow(p, kExp.c).value));
            });
            if (mass.value() == 0.0) continue;
            const auto wz = eval_Wz(v, z, cups, N, 0, kExp, P);
            const auto vz = eval_Vz(v, z, cups, N, 0, kExp, P);
            const double scale = v.value() * std::pow(static_cast<double>(N), gamma - 1.0) /
                                 cups.Z * mass.value();
            REQUIRE(std::abs(wz - vz) <= 10.0 * scale);
            ++checked;
        }
    }
    CHECK(checked >= 8);
}

TEST_CASE("U reductions and oracle match") {
    const std::int64_t N = 100000, P = 22000;
    // r = 0, v = 0: plain prime log sum
    const auto u0 = eval_U(N, 0, {0, 1}, P, kExp);
    CHECK(u0.real() == doctest::Approx(chebyshev_theta(P, 2 * P)).epsilon(1e-12));
    CHECK(u0.imag() == 0.0);

    // consistency with the generic evaluator at T = N, r = 0
    const CombinedPhase cp{0, {1, 2}, static_cast<double>(N), kExp};
    const auto via_u = eval_U(N, 0, {1, 2}, P, kExp);
    const auto via_sum =
        eval_exp_sum(P, 2 * P, PhaseSpec{cp}, Weight::LogPrimes);
    CHECK(via_u.real() == via_sum.value.real());
    CHECK(via_u.imag() == via_sum.value.imag());

    // independent fixed-precision oracle
    const auto got = eval_U(N, 1, {1, 2}, P, kExp);
    const auto want = oracle_U(N, 1, {1, 2}, P, kExp.c);
    CHECK(std::abs(got - want) <= 1e-9 * std::abs(want));
}

TEST_CASE("van der Corput audit stays bounded") {
    std::vector<std::int64_t> ns;
    for (std::int64_t n = 1; n <= 100; ++n) ns.push_back(n);
    ns.push_back(929); // n P^{c-2} ~ 1 boundary at P = 1000
    ns.push_back(1000);
    const auto audit = vdc_audit_2(1000, kExp, ns);
    CHECK(audit.fitted_constant <= 10.0);
    CHECK(audit.rows[0].abs_sum ==
          doctest::Approx(3.66114258948).epsilon(1e-9)); // |H_1| frozen
    // doubling P keeps the fitted constant within a factor 4
    const auto audit2 = vdc_audit_2(2000, kExp, ns);
    CHECK(audit2.fitted_constant <= 4.0 * audit.fitted_constant);
    CHECK(audit.fitted_constant <= 4.0 * audit2.fitted_constant);
    // shard stability
    const auto sharded = vdc_audit_2(1000, kExp, ns, 3);
    CHECK(sharded.rows[0].abs_sum == audit.rows[0].abs_sum);
}

TEST_CASE("shift inequality: constant sequence") {
    const std::vector<std::complex<double>> xi(100, {1.0, 0.0});
    const auto [lhs, rhs] = weyl_shift_check(xi, 1);
    CHECK(lhs == doctest::Approx(100.0 * 100.0));
    CHECK(rhs == doctest::Approx(101.0 * 100.0));
    CHECK(lhs <= rhs + 1e-9 * rhs);
}

TEST_CASE("shift inequality: random and phase sequences") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    for (std::int64_t Q : {1, 4, 16}) {
        std::vector<std::complex<double>> xi(1000);
        for (auto& z : xi) z = {ud(rng), ud(rng)};
        const auto [lhs, rhs] = weyl_shift_check(xi, Q);
        CHECK(lhs <= rhs + 1e-9 * std::abs(rhs));
    }
    // xi(m) = e(f(m, l)) with a combined phase
    const CombinedPhase cp{2, {1, 3}, 100000.0, kExp};
    PhaseEvaluator ev(PhaseSpec{cp}, 40000);
    const std::int64_t l = 7;
    std::vector<std::complex<double>> xi;
    for (std::int64_t m = 1001; m <= 2000; ++m) xi.push_back(e_of(ev.frac_at(m * l)));
    for (std::int64_t Q : {1, 5, 32}) {
        const auto [lhs, rhs] = weyl_shift_check(xi, Q);
        CHECK(lhs <= rhs + 1e-9 * std::abs(rhs));
    }
}

TEST_CASE("phase derivatives against finite differences") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> td(20000.0, 40000.0);
    const double T = 100001.0;
    const CombinedPhase cp{3, {1, 2}, T, kExp};
    auto phi = [&](long double t) {
        const long double xc = std::pow(t, static_cast<long double>(kExp.c));
        return 3.0L * xc +
               0.5L * std::pow(static_cast<long double>(T) - xc,
                               static_cast<long double>(kExp.gamma));
    };
    for (int i = 0; i < 1000; ++i) {
        const double t = td(rng);
        const auto d = phase_derivatives(PhaseSpec{cp}, t);
        const long double h1 = 0.25L;
        const long double fd1 = (phi(t + h1) - phi(t - h1)) / (2 * h1);
        REQUIRE(d.d1 == doctest::Approx(static_cast<double>(fd1)).epsilon(1e-6));
        const long double h2 = 8.0L;
        const long double fd2 =
            (phi(t + h2) - 2 * phi(t) + phi(t - h2)) / (h2 * h2);
        REQUIRE(d.d2 == doctest::Approx(static_cast<double>(fd2)).epsilon(1e-4));
        const long double h3 = 64.0L;
        const long double fd3 = (phi(t + 2 * h3) - 2 * phi(t + h3) +
                                 2 * phi(t - h3) - phi(t - 2 * h3)) /
                                (2 * h3 * h3 * h3);
        REQUIRE(d.d3 == doctest::Approx(static_cast<double>(fd3)).epsilon(1e-2));
    }
}

TEST_CASE("second derivative regime flips sign with r") {
    const double T = 100001.0;
    const std::int64_t m = 37;
    const double l = 700.0;
    auto f2 = [&](std::int64_t r) {
        const CombinedPhase cp{r, {1, 2}, T, kExp};
        return fml_derivatives(cp, m, l).d2;
    };
    CHECK(f2(0) < 0.0); // pure second term, negative
    CHECK(f2(1000000) > 0.0);
    bool flipped = false;
    std::int64_t r = 1;
    while (r <= 1000000 && !flipped) {
        if (f2(r) > 0.0) flipped = true;
        r *= 2;
    }
    CHECK(flipped);
}

TEST_CASE("phase domain errors") {
    const CombinedPhase cp{1, {1, 2}, 1000.0, kExp};
    PhaseEvaluator ev(PhaseSpec{cp}, 100000);
    CHECK_THROWS_AS(ev.frac_at(100000), PhaseDomainError); // T - n^c < 0
    CHECK_THROWS_AS(phase_derivatives(PhaseSpec{cp}, 1e6), PhaseDomainError);
    CHECK_THROWS_AS(weyl_shift_check({}, 1), DomainError);
}

TEST_SUITE_END();
