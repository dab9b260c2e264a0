// Acceptance suite: one line per criterion, [PASS]/[FAIL], nonzero exit on
// any failure.  Tolerances and time budgets are pinned in code.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#include "psrep/cups.hpp"
#include "psrep/expsum.hpp"
#include "psrep/num.hpp"
#include "psrep/rosser.hpp"
#include "psrep/sieve.hpp"
#include "psrep/solver.hpp"
#include "psrep/vaaler.hpp"
#include "psrep/vaughan.hpp"

#include "oracles.hpp"

using namespace psrep;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0)
            .count();
    }
};

void report(int idx, const char* name, bool pass, double secs, double budget,
            const std::string& detail) {
    const bool ok = pass && secs <= budget;
    if (!ok) ++g_failures;
    std::printf("[%s] criterion %2d: %-34s %s(%.2fs / budget %.0fs)\n",
                ok ? "PASS" : "FAIL", idx, name,
                detail.empty() ? "" : (detail + " ").c_str(), secs, budget);
    std::fflush(stdout);
}

std::string fmt1(const char* k, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s=%.3g", k, v);
    return buf;
}

// ---- 1: certified floors vs extended-precision oracle --------------------
void criterion_1() {
    Timer t;
    std::mt19937_64 rng(0xACCE5501);
    std::uniform_int_distribution<std::uint64_t> nd(1, 1'000'000);
    std::uniform_real_distribution<double> cd(1.0 + 1e-12, 1.2);
    std::int64_t mismatches = 0;
    for (int i = 0; i < 100'000; ++i) {
        const std::uint64_t n = nd(rng);
        const double c = cd(rng);
        if (floor_pow(n, c).value != oracle::floor_pow(n, c)) ++mismatches;
    }
    report(1, "certified floors (1e5 random)", mismatches == 0, t.seconds(),
           60, fmt1("mismatches", static_cast<double>(mismatches)));
}

// ---- 2: G_d identity ------------------------------------------------------
void criterion_2() {
    Timer t;
    std::mt19937_64 rng(0xACCE5502);
    std::uniform_int_distribution<std::int64_t> Nd(1000, 1'000'000);
    std::uniform_int_distribution<std::uint64_t> dd(1, 50);
    const double cs[3] = {1.005, 1.01, 1.02};
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto pp = derive_params(Nd(rng), cs[i % 3]);
        const auto gd = G_d(pp, dd(rng));
        worst = std::max(worst, std::abs(gd.direct - gd.formula));
    }
    report(2, "G_d enumeration = rho form", worst <= 1e-9, t.seconds(), 120,
           fmt1("worst_abs", worst));
}

// ---- 3: Vaughan identity ---------------------------------------------------
void criterion_3(const FactorTable& ft) {
    Timer t;
    const auto e = RealExponent::make(1.01);
    const std::vector<PhaseSpec> phases = {
        PowerPhase{0.0, 1.0},
        PowerPhase{1.0, 1.01},
        PhaseSpec{CombinedPhase{1, {1, 2}, 100000.0, e}},
        PhaseSpec{CombinedPhase{-3, {2, 7}, 100001.0, e}},
        PhaseSpec{CombinedPhase{0, {5, 11}, 100000.5, e}},
    };
    double worst = 0.0;
    for (std::int64_t P : {1000, 10000}) {
        const auto vc = build_coeffs(P, ft);
        for (const auto& phase : phases) {
            const auto split = vaughan_split(vc, phase, ft);
            const auto ref =
                eval_exp_sum(P, 2 * P, phase, Weight::VonMangoldt, &ft);
            worst = std::max(worst, std::abs(split.total() - ref.value) /
                                        std::abs(ref.value));
        }
    }
    report(3, "Vaughan identity (2 x 5 cases)", worst <= 1e-9, t.seconds(),
           120, fmt1("worst_rel", worst));
}

// ---- 4: partition of unity and complement identity ------------------------
void criterion_4() {
    Timer t;
    std::mt19937_64 rng(0xACCE5504);
    std::uniform_real_distribution<double> td(0.0, 1.0);
    std::vector<double> samples;
    samples.reserve(10000);
    for (int i = 0; i < 10000; ++i) samples.push_back(td(rng));
    double worst = 0.0;
    for (int Z : {4, 8, 32}) {
        for (int r : {6, 14}) {
            const auto sys = build_cups(Z, r, 50);
            worst = std::max(worst, partition_check(sys, samples));
            for (int i = 0; i <= 2000; ++i) {
                const double u = sys.delta * i / 2000.0;
                worst = std::max(
                    worst, std::abs(g_eval(sys, u) +
                                    g_eval(sys, u - sys.delta) - 1.0));
            }
        }
    }
    report(4, "cup partition + complement", worst <= 1e-12, t.seconds(), 30,
           fmt1("max_dev", worst));
}

// ---- 5: sawtooth approximation contract ------------------------------------
void criterion_5() {
    Timer t;
    double worst = -1e300, cc = 0.0, cd = 0.0;
    for (int H : {10, 100}) {
        const auto sys = build_vaaler(H);
        for (int i = 0; i < 10000; ++i) {
            const double x = static_cast<double>(i) / 10000.0;
            const double err = std::abs(rho(x) - rho_approx(sys, x));
            worst = std::max(worst, err - rho_majorant(sys, x));
        }
        cd = std::max(cd, sys.d[0] * H);
        for (int h = 1; h <= H; ++h) {
            cc = std::max(cc, std::abs(sys.c[h - 1]) * h);
            cd = std::max(cd, sys.d[h] * H);
        }
    }
    report(5, "majorated sawtooth approximation",
           worst <= 1e-12 && cc <= 2.0 && cd <= 2.0, t.seconds(), 30,
           fmt1("max_err_minus_maj", worst) + " " + fmt1("C_c", cc) + " " +
               fmt1("C_d", cd));
}

// ---- 6: cup decomposition of W ---------------------------------------------
void criterion_6() {
    Timer t;
    const auto pp = derive_params(100000, 1.01);
    const auto cups = build_cups(16, 8, 200);
    double worst = 0.0;
    for (Rational v : {Rational{1, 3}, Rational{2, 7}, Rational{5, 11}}) {
        const auto w = eval_W(v, pp.N, 0, pp.exp, pp.P);
        std::complex<double> sum{0, 0};
        for (int z = 0; z < 2 * cups.Z; ++z)
            sum += eval_Wz(v, z, cups, pp.N, 0, pp.exp, pp.P);
        worst = std::max(worst, std::abs(w - sum) / std::abs(w));
    }
    report(6, "W = sum of cup pieces", worst <= 1e-9, t.seconds(), 60,
           fmt1("worst_rel", worst));
}

// ---- 7: lower-bound sieve weights ------------------------------------------
void criterion_7(const FactorTable& ft) {
    Timer t;
    bool ok = true;
    std::string detail;

    const auto w = build_lower_rosser(SieveConfig::from_z_level(50, 10000));
    for (std::uint64_t k = 1; k <= 100000; ++k)
        if (!verify_fundamental(w, ft, k)) {
            ok = false;
            detail = "fundamental fails at k=" + std::to_string(k);
            break;
        }
    // stored-support conditions: squarefree z-smooth d <= D, |lambda| = 1
    for (std::size_t i = 0; i < w.support().size() && ok; ++i) {
        const auto d = w.support()[i];
        const int lam = w.lambda()[i];
        if (d > w.level_D() || std::abs(lam) != 1 || ft.moebius(d) == 0 ||
            (d > 1 && ft.factorize(d).back().first >= w.smoothness_z())) {
            ok = false;
            detail = "support condition fails at d=" + std::to_string(d);
        }
    }
    double worst_ratio = 1e300;
    for (double zd : {1000.0, 10000.0}) {
        const auto z = static_cast<std::uint64_t>(zd);
        const auto D = static_cast<std::uint64_t>(std::pow(zd, 2.5));
        const auto wz = build_lower_rosser(SieveConfig::from_z_level(z, D));
        const double dens = weighted_density(wz);
        const double main_term = ft.mertens_product(z) * f_linear(2.5);
        if (!(dens > 0.0)) ok = false;
        worst_ratio = std::min(worst_ratio, dens / main_term);
    }
    if (worst_ratio < 0.5) ok = false;
    report(7, "Rosser weight suite", ok, t.seconds(), 120,
           detail.empty() ? fmt1("min_density_ratio", worst_ratio) : detail);
}

// ---- 8: second-derivative bound audit --------------------------------------
void criterion_8() {
    Timer t;
    const auto e = RealExponent::make(1.01);
    std::vector<std::int64_t> ns;
    for (std::int64_t n = 1; n <= 1000; ++n) ns.push_back(n);
    double fitted = 0.0;
    for (std::int64_t P : {1000, 10000, 100000})
        fitted = std::max(fitted, vdc_audit_2(P, e, ns).fitted_constant);
    report(8, "phase-sum bound audit", fitted <= 10.0, t.seconds(), 300,
           fmt1("fitted_constant", fitted));
}

// ---- 9: desk-scale scan -----------------------------------------------------
void criterion_9(const FactorTable& ft) {
    Timer t;
    const auto e = RealExponent::make(1.01);
    const auto rows = theorem_scan(100000, 101000, e, ft);
    std::int64_t missing = 0, over_bound = 0;
    for (const auto& row : rows) {
        if (!row.found) {
            ++missing;
            std::printf("    exception: N=%lld has no representation\n",
                        static_cast<long long>(row.N));
        } else if (row.min_omega > row.bound) {
            ++over_bound; // reported, not a failure at desk scale
            std::printf("    note: N=%lld min_omega=%d > bound=%d\n",
                        static_cast<long long>(row.N), row.min_omega,
                        row.bound);
        }
    }
    report(9, "scan N in [1e5, 1e5+1e3]", missing == 0, t.seconds(), 600,
           fmt1("missing", static_cast<double>(missing)) + " " +
               fmt1("omega_over_bound", static_cast<double>(over_bound)));
}

// ---- 10: lower-bound chain --------------------------------------------------
void criterion_10(const FactorTable& ft) {
    Timer t;
    struct Set {
        std::int64_t N;
        double c;
        std::uint64_t z, D;
    };
    const Set sets[10] = {
        {100000, 1.01, 50, 10000},  {100000, 1.01, 20, 2000},
        {100000, 1.005, 50, 10000}, {100000, 1.02, 30, 5000},
        {50000, 1.01, 50, 10000},   {50000, 1.005, 20, 1000},
        {200000, 1.01, 50, 10000},  {200000, 1.02, 20, 2000},
        {75000, 1.01, 100, 20000},  {150000, 1.005, 60, 10000},
    };
    bool ok = true;
    double worst_slack = 1e300;
    for (const auto& s : sets) {
        const auto pp =
            derive_params(s.N, s.c, 0, 0, 0.25, 1e-3, true, s.z, s.D);
        const auto w = build_lower_rosser(SieveConfig::from_z_level(s.z, s.D));
        const double gam = gamma_sum(pp, ft);
        const double g0 = gamma0_lower(w, A_of_N(pp));
        const double s0 = sigma_j(pp, w, 0);
        const double s1 = sigma_j(pp, w, 1);
        const double slack = gam - (g0 + s0 - s1);
        worst_slack = std::min(worst_slack, slack);
        if (!(slack >= -1e-6)) ok = false;
    }
    report(10, "Gamma >= Gamma0 + S0 - S1 (10 sets)", ok, t.seconds(), 300,
           fmt1("min_slack", worst_slack));
}

} // namespace

int main() {
    std::printf("acceptance suite\n");
    FactorTable ft(200'000);

    criterion_1();
    criterion_2();
    criterion_3(ft);
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7(ft);
    criterion_8();
    criterion_9(ft);
    criterion_10(ft);

    std::printf("%d criteria failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
