#include "psrep/vaughan.hpp"

#include <cmath>
#include <string>

namespace psrep {

namespace {

constexpr std::int64_t kMaxP = 10'000'000;

std::int64_t icbrt64(std::int64_t x) {
    auto r = static_cast<std::int64_t>(std::cbrt(static_cast<double>(x)));
    while (r > 0 && r * r * r > x) --r;
    while ((r + 1) * (r + 1) * (r + 1) <= x) ++r;
    return r;
}

} // namespace

VaughanCoeffs build_coeffs(std::int64_t P, const FactorTable& ft) {
    if (P < 8) throw DomainError("build_coeffs requires P >= 8");
    if (P > kMaxP)
        throw TableTooLarge("build_coeffs: P beyond table budget " +
                            std::to_string(kMaxP));
    VaughanCoeffs vc;
    vc.P = P;
    vc.u = icbrt64(P);
    vc.m_c_max = icbrt64(P * P);
    vc.m_a_max = 2 * P / (vc.u + 1);
    if (static_cast<std::uint64_t>(std::max(vc.m_a_max, vc.u)) > ft.limit())
        throw OutOfTableRange("build_coeffs: factor table too small");

    vc.c.assign(static_cast<std::size_t>(vc.m_c_max) + 1, 0.0);
    for (std::int64_t d = 1; d <= vc.u; ++d) {
        const int mu = ft.moebius(static_cast<std::uint64_t>(d));
        if (mu == 0) continue;
        for (std::int64_t e = 2; e <= vc.u; ++e) {
            const double lam = ft.von_mangoldt(static_cast<std::uint64_t>(e));
            if (lam == 0.0) continue;
            vc.c[static_cast<std::size_t>(d * e)] += mu * lam;
        }
    }

    vc.a.assign(static_cast<std::size_t>(vc.m_a_max) + 1, 0.0);
    for (std::int64_t d = 1; d <= std::min(vc.u, vc.m_a_max); ++d) {
        const int mu = ft.moebius(static_cast<std::uint64_t>(d));
        if (mu == 0) continue;
        for (std::int64_t m = d; m <= vc.m_a_max; m += d)
            vc.a[static_cast<std::size_t>(m)] += mu;
    }
    return vc;
}

VaughanSplit vaughan_split(const VaughanCoeffs& vc, const PhaseSpec& phase,
                           const FactorTable& ft) {
    const std::int64_t P = vc.P, u = vc.u;
    PhaseEvaluator ev(phase, 2 * P);
    VaughanSplit out;

    // type I with the log factor: m <= P^(1/3), squarefree
    {
        KahanComplexSum acc;
        for (std::int64_t m = 1; m <= u; ++m) {
            const int mu = ft.moebius(static_cast<std::uint64_t>(m));
            if (mu == 0) continue;
            KahanComplexSum inner;
            for (std::int64_t l = P / m + 1; l * m <= 2 * P; ++l)
                inner.add(std::log(static_cast<double>(l)) *
                          e_of(ev.frac_at(m * l)));
            acc.add(static_cast<double>(mu) * inner.value());
        }
        out.U1 = acc.value();
    }

    // type I: m <= P^(1/3) and P^(1/3) < m <= P^(2/3), weight c(m)
    auto type1 = [&](std::int64_t m_lo, std::int64_t m_hi) {
        KahanComplexSum acc;
        for (std::int64_t m = m_lo; m <= m_hi; ++m) {
            const double cm = vc.c[static_cast<std::size_t>(m)];
            if (cm == 0.0) continue;
            KahanComplexSum inner;
            for (std::int64_t l = P / m + 1; l * m <= 2 * P; ++l)
                inner.add(e_of(ev.frac_at(m * l)));
            acc.add(cm * inner.value());
        }
        return acc.value();
    };
    out.U2 = type1(1, u);
    out.U3 = type1(u + 1, vc.m_c_max);

    // type II: P < ml <= 2P with m, l both above P^(1/3)
    {
        KahanComplexSum acc;
        for (std::int64_t m = u + 1; m <= vc.m_a_max; ++m) {
            const double am = vc.a[static_cast<std::size_t>(m)];
            if (am == 0.0) continue;
            KahanComplexSum inner;
            const std::int64_t l_lo = std::max(u, P / m) + 1;
            for (std::int64_t l = l_lo; l * m <= 2 * P; ++l) {
                const double lam = ft.von_mangoldt(static_cast<std::uint64_t>(l));
                if (lam == 0.0) continue;
                inner.add(lam * e_of(ev.frac_at(m * l)));
            }
            acc.add(am * inner.value());
        }
        out.U4 = acc.value();
    }
    return out;
}

double prime_vs_lambda_gap(std::int64_t P, const PhaseSpec& phase,
                           const FactorTable& ft) {
    const auto primes = eval_exp_sum(P, 2 * P, phase, Weight::LogPrimes);
    const auto lambda = eval_exp_sum(P, 2 * P, phase, Weight::VonMangoldt, &ft);
    return std::abs(primes.value - lambda.value);
}

} // namespace psrep
