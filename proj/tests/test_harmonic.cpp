#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "psrep/arith.hpp"
#include "psrep/cups.hpp"
#include "psrep/num.hpp"
#include "psrep/vaaler.hpp"

using namespace psrep;

TEST_SUITE_BEGIN("harmonic");

TEST_CASE("vaaler coefficients at tiny degree") {
    const auto sys = build_vaaler(2);
    // hand-evaluated interpolation multipliers at 1/3 and 2/3
    CHECK(sys.c[0].real() == 0.0);
    CHECK(sys.c[0].imag() ==
          doctest::Approx(-0.11720167760725686).epsilon(1e-14));
    CHECK(sys.c[1].imag() ==
          doctest::Approx(-0.020976632742319236).epsilon(1e-14));
    CHECK(sys.d[0] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("vaaler majorant normalization and coefficient decay") {
    for (int H : {10, 100}) {
        const auto sys = build_vaaler(H);
        CHECK(sys.d[0] == doctest::Approx(1.0 / (H + 1)).epsilon(1e-15));
        double cc = 0.0, cd = 0.0, dsum = sys.d[0];
        for (int h = 1; h <= H; ++h) {
            cc = std::max(cc, std::abs(sys.c[h - 1]) * h);
            cd = std::max(cd, sys.d[h] * H);
            dsum += 2 * sys.d[h];
        }
        CHECK(cc <= 2.0);
        CHECK(cd <= 2.0);
        CHECK(cc <= 0.2); // 1/(2 pi) plus slack
        CHECK(dsum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("vaaler majorant dominates the error pointwise") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> td(0.0, 1.0);
    for (int H : {10, 100}) {
        const auto sys = build_vaaler(H);
        double max_err = 0.0;
        auto probe = [&](double t) {
            const double err = std::abs(rho(t) - rho_approx(sys, t));
            const double maj = rho_majorant(sys, t);
            REQUIRE(maj >= -1e-12);
            REQUIRE(err <= maj + 1e-12);
            max_err = std::max(max_err, err);
        };
        probe(0.0); // jump point: error 1/2, majorant 1
        probe(0.5);
        probe(1e-9);
        for (int i = 0; i < 3000; ++i) probe(td(rng));
        CHECK(max_err <= 0.5 + 1e-12); // sup |Delta| <= sum d_h = 1
    }
}

TEST_CASE("vaaler approximation has zero mean") {
    const auto sys = build_vaaler(10);
    KahanSum acc;
    const int M = 1024;
    for (int k = 0; k < M; ++k)
        acc.add(rho_approx(sys, static_cast<double>(k) / M));
    CHECK(std::abs(acc.value() / M) <= 1e-12);
}

TEST_CASE("vaaler csv export shape") {
    const auto sys = build_vaaler(3);
    std::ostringstream buf;
    export_vaaler_csv(sys, buf);
    std::istringstream os(buf.str());
    std::string line;
    std::getline(os, line);
    CHECK(line == "h,re_c,im_c,d");
    int rows = 0;
    while (std::getline(os, line)) ++rows;
    CHECK(rows == 7); // h = -3..3
}

TEST_CASE("cup pointwise shape") {
    const auto sys = build_cups(2, 6, 200);
    CHECK(g_eval(sys, 0.0) == 1.0);
    CHECK(g_eval(sys, 0.4) == 0.0); // 1/(2Z) = 0.25 <= 0.4 <= 0.5
    CHECK(sys.beta[0] == doctest::Approx(0.25)); // 1/(2Z)
    for (double t : {0.01, 0.1, 0.2, 0.24}) {
        CHECK(g_eval(sys, t) > 0.0);
        CHECK(g_eval(sys, t) < 1.0);
        CHECK(g_eval(sys, t) == doctest::Approx(g_eval(sys, -t)).epsilon(1e-15));
    }
    for (double t : {0.25, 0.3, 0.5, 0.75}) CHECK(g_eval(sys, t) == 0.0);
    // periodicity
    CHECK(g_eval(sys, 0.1 + 3.0) == doctest::Approx(g_eval(sys, 0.1)).epsilon(1e-15));
}

TEST_CASE("cup complement identity on the fringe") {
    for (int Z : {2, 8}) {
        const auto sys = build_cups(Z, 14, 100);
        const double step = sys.delta / 257;
        for (double t = 0.0; t <= sys.delta + 1e-15; t += step) {
            const double v = g_eval(sys, t) + g_eval(sys, t - sys.delta);
            REQUIRE(std::abs(v - 1.0) <= 1e-13);
        }
    }
}

TEST_CASE("shifted cups: value, support, coefficients") {
    const auto sys = build_cups(8, 6, 400);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> td(0.0, 1.0);
    for (int z = 0; z < 16; ++z) {
        CHECK(g_z_eval(sys, z, z * sys.delta) == 1.0);
        for (int i = 0; i < 200; ++i) {
            const double t = td(rng);
            double dist = std::abs(t - z * sys.delta);
            dist = std::min(dist, 1.0 - dist); // circle distance
            const double v = g_z_eval(sys, z, t);
            if (dist >= sys.delta)
                REQUIRE(v == 0.0);
            else
                REQUIRE(v >= 0.0);
        }
        for (std::int64_t n : {1ll, 7ll, 40ll})
            CHECK(std::abs(beta_z(sys, z, n)) ==
                  doctest::Approx(std::abs(sys.beta[static_cast<std::size_t>(n)]))
                      .epsilon(1e-15));
    }
    // zero shift reproduces g
    for (int i = 0; i < 100; ++i) {
        const double t = td(rng);
        CHECK(g_z_eval(sys, 0, t) == g_eval(sys, t));
    }
}

TEST_CASE("partition of unity at machine accuracy") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> td(-2.0, 2.0);
    for (int Z : {4, 8}) {
        for (int r : {6, 14}) {
            const auto sys = build_cups(Z, r, 50);
            std::vector<double> samples{0.0, 0.5, 1.0 - 1e-12};
            for (int i = 0; i < 2000; ++i) samples.push_back(td(rng));
            CHECK(partition_check(sys, samples) <= 1e-12);
        }
    }
    const auto sys = build_cups(8, 14, 50);
    CHECK(partition_check(sys, {0.0}) <= 1e-15);
}

TEST_CASE("fourier coefficients: bound and reconstruction") {
    const int Z = 4, r = 6;
    const auto sys = build_cups(Z, r, 600);
    for (std::int64_t n = 1; n <= sys.cutoff; ++n) {
        const double bound = std::min(
            1.0 / (2 * Z),
            (1.0 / n) * std::pow(2.0 * Z * r / (kTwoPi / 2.0 * n), r));
        REQUIRE(std::abs(sys.beta[static_cast<std::size_t>(n)]) <=
                bound + 1e-300);
    }
    CHECK(sys.tail_bound <= 1e-10);
    for (int i = 0; i <= 1000; ++i) {
        const double t = static_cast<double>(i) / 1000.0 - 0.5;
        REQUIRE(std::abs(g_fourier_eval(sys, t) - g_eval(sys, t)) <=
                sys.tail_bound + 1e-10);
    }
}

TEST_CASE("cup argument validation") {
    CHECK_THROWS_AS(build_cups(1, 6, 100), DomainError);
    CHECK_THROWS_AS(build_cups(4, 0, 100), DomainError);
    const auto sys = build_cups(4, 6, 100);
    CHECK_THROWS_AS(g_z_eval(sys, 8, 0.0), DomainError);
    CHECK_THROWS_AS(g_z_eval(sys, -1, 0.0), DomainError);
}

TEST_SUITE_END();
