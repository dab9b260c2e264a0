#include "psrep/solver.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "psrep/num.hpp"
#include "psrep/vaaler.hpp"

namespace psrep {

namespace {

constexpr int kVaalerDegreeCap = 200'000;

// (B+1)^gamma - B^gamma without cancellation
double gamma_power_gap(std::int64_t B, double gamma) {
    const double b = static_cast<double>(B);
    return std::pow(b, gamma) * std::expm1(gamma * std::log1p(1.0 / b));
}

// smallest integer m with m^c >= B, then verify [m^c] == B
bool representation_partner(std::int64_t B, const RealExponent& e,
                            std::int64_t* m_out, std::int64_t* floor_out) {
    const auto m = certified_ceil_scaled(static_cast<double>(B),
                                         Exponent::reciprocal_of(e.c));
    if (m < 1) return false;
    const auto fm = floor_pow(static_cast<std::uint64_t>(m), e);
    if (fm.value != B) return false;
    *m_out = m;
    *floor_out = fm.value;
    return true;
}

void require_table(const FactorTable& ft, std::int64_t need,
                   const char* what) {
    if (need < 1 || static_cast<std::uint64_t>(need) > ft.limit())
        throw OutOfTableRange(std::string(what) + ": factor table covers " +
                              std::to_string(ft.limit()) + ", need " +
                              std::to_string(need));
}

double snap_to_integer(double q) {
    const double r = std::round(q);
    return std::abs(q - r) < 1e-9 ? r : q;
}

} // namespace

double PipelineParams::H_of(double d) const {
    const double n = static_cast<double>(N);
    return d * std::pow(n, 1.0 - exp.gamma) * std::pow(std::log(n), 3.0);
}

double PipelineParams::Z_of(double d) const {
    const double n = static_cast<double>(N);
    return d * std::pow(n, 1.0 - exp.gamma) * std::pow(std::log(n), 7.0);
}

double PipelineParams::R_of(double d) const {
    const double n = static_cast<double>(N);
    return d * std::pow(n, 1.0 - exp.gamma) * std::pow(std::log(n), 12.0);
}

int PipelineParams::prime_factor_bound() const {
    return theorem_prime_factor_bound(exp.c);
}

int PipelineParams::sieve_factor_bound() const {
    return static_cast<int>(std::floor(snap_to_integer(exp.gamma / alpha)));
}

int theorem_prime_factor_bound(double c) {
    if (!(c > 1.0 && c < 29.0 / 28.0))
        throw DomainError("prime factor bound defined for 1 < c < 29/28");
    const double q = 52.0 / (29.0 - 28.0 * c);
    return static_cast<int>(std::floor(snap_to_integer(q))) + 1;
}

PipelineParams derive_params(std::int64_t N, double c, double alpha,
                             double delta, double c_P, double eps0,
                             bool theorem_mode, std::uint64_t z_override,
                             std::uint64_t D_override) {
    if (N < 8) throw DomainError("derive_params requires N >= 8");
    if (!(c_P > 0.0 && c_P <= 0.5))
        throw DomainError("c_P must lie in (0, 1/2]");
    PipelineParams pp;
    pp.N = N;
    pp.exp = RealExponent::make(c, theorem_mode);
    pp.c_P = c_P;
    pp.eps0 = eps0;
    pp.theorem_mode = theorem_mode;
    const double g = pp.exp.gamma;
    const double nd = static_cast<double>(N);

    pp.P = static_cast<std::int64_t>(std::floor(c_P * std::pow(nd, g)));
    if (pp.P < 2)
        throw ConstraintViolation("violated: P = c_P N^gamma >= 2 (N too small)");
    if (!(std::pow(2.0 * static_cast<double>(pp.P), c) < nd / 2.0))
        throw ConstraintViolation("violated: (2P)^c < N/2");

    const double margin = 29.0 * g - 28.0; // > 0 iff gamma > 28/29
    if (theorem_mode) {
        if (!(margin > 0.0))
            throw ConstraintViolation("violated: 28/29 < gamma < 1");
        if (alpha <= 0.0) alpha = margin / 52.0 - eps0;
        if (delta <= 0.0) delta = (2.0 * alpha + margin / 26.0) / 2.0;
        if (!(alpha > 0.0))
            throw ConstraintViolation(
                "violated: alpha = (29 gamma - 28)/52 - eps0 > 0");
        if (!(delta < margin / 26.0))
            throw ConstraintViolation("violated: delta < (29 gamma - 28)/26");
        if (!(delta > 2.0 * alpha))
            throw ConstraintViolation("violated: delta > 2 alpha");
    } else if (alpha <= 0.0 || delta <= 0.0) {
        throw DomainError("free mode requires explicit alpha and delta");
    }
    pp.alpha = alpha;
    pp.delta = delta;
    pp.s = delta / alpha;
    if (theorem_mode && !(pp.s > 2.0 && pp.s < 3.0))
        throw ConstraintViolation("violated: 2 < delta/alpha < 3");

    pp.z = std::max<std::uint64_t>(
        2, static_cast<std::uint64_t>(std::floor(std::pow(nd, alpha))));
    pp.D = std::max<std::uint64_t>(
        pp.z, static_cast<std::uint64_t>(std::floor(std::pow(nd, delta))));

    if (z_override != 0 || D_override != 0) {
        if (z_override < 2 || D_override < z_override)
            throw DomainError("overrides need 2 <= z <= D");
        pp.z = z_override;
        pp.D = D_override;
        pp.alpha = std::log(static_cast<double>(pp.z)) / std::log(nd);
        pp.delta = std::log(static_cast<double>(pp.D)) / std::log(nd);
        pp.s = pp.delta / pp.alpha;
        pp.theorem_mode = false; // recorded: outside the theorem window
    }
    return pp;
}

std::vector<RepresentationResult>
find_representations(std::int64_t N, const RealExponent& e,
                     const FactorTable& ft, std::uint64_t coprime_z,
                     std::size_t limit) {
    if (N < 3) throw DomainError("find_representations requires N >= 3");
    const auto m_cap =
        certified_ceil_scaled(static_cast<double>(N), Exponent::reciprocal_of(e.c));
    require_table(ft, m_cap, "find_representations");

    std::vector<RepresentationResult> out;
    for (std::uint32_t p : ft.primes()) {
        if (out.size() >= limit) break;
        const auto fp = floor_pow(p, e);
        if (fp.value >= N) break; // floors increase with p
        const std::int64_t B = N - fp.value;
        std::int64_t m = 0, fm = 0;
        if (!representation_partner(B, e, &m, &fm)) continue;
        if (coprime_z > 0 && m > 1 &&
            ft.spf(static_cast<std::uint64_t>(m)) < coprime_z)
            continue;
        RepresentationResult r;
        r.N = N;
        r.c = e.c;
        r.p = p;
        r.m = m;
        r.omega_m = ft.big_omega(static_cast<std::uint64_t>(m));
        r.floor_p = fp.value;
        r.floor_m = fm;
        out.push_back(r);
    }
    return out;
}

double gamma_sum(const PipelineParams& params, const FactorTable& ft) {
    const auto& e = params.exp;
    const auto m_cap = certified_ceil_scaled(static_cast<double>(params.N + 1),
                                             Exponent::reciprocal_of(e.c));
    require_table(ft, m_cap, "gamma_sum");
    KahanSum acc;
    for_each_prime(
        static_cast<std::uint64_t>(params.P),
        static_cast<std::uint64_t>(2 * params.P), [&](std::uint64_t p) {
            const auto fp = floor_pow(p, e);
            const std::int64_t B = params.N - fp.value;
            if (B < 1) return;
            std::int64_t m = 0, fm = 0;
            if (!representation_partner(B, e, &m, &fm)) return;
            if (m > 1 && ft.spf(static_cast<std::uint64_t>(m)) < params.z)
                return;
            acc.add(std::log(static_cast<double>(p)));
        });
    return acc.value();
}

double A_of_N(const PipelineParams& params) {
    const auto& e = params.exp;
    KahanSum acc;
    for_each_prime(static_cast<std::uint64_t>(params.P),
                   static_cast<std::uint64_t>(2 * params.P),
                   [&](std::uint64_t p) {
                       const auto fp = floor_pow(p, e);
                       const std::int64_t B = params.N - fp.value;
                       if (B < 1)
                           throw PhaseDomainError("A_of_N: N - [p^c] < 1");
                       acc.add(std::log(static_cast<double>(p)) *
                               gamma_power_gap(B, e.gamma));
                   });
    return acc.value();
}

GdValue G_d(const PipelineParams& params, std::uint64_t d) {
    if (d < 1) throw DomainError("G_d requires d >= 1");
    const auto& e = params.exp;
    const auto recip = Exponent::reciprocal_of(e.c);
    KahanSum direct, rho_part;
    for_each_prime(
        static_cast<std::uint64_t>(params.P),
        static_cast<std::uint64_t>(2 * params.P), [&](std::uint64_t p) {
            const auto fp = floor_pow(p, e);
            const std::int64_t B = params.N - fp.value;
            if (B < 1) throw PhaseDomainError("G_d: N - [p^c] < 1");
            const double lg = std::log(static_cast<double>(p));
            direct.add(lg * static_cast<double>(count_in_power_interval(
                                static_cast<std::int64_t>(d),
                                static_cast<double>(B),
                                static_cast<double>(B + 1), e)));
            rho_part.add(
                lg * (rho_of_neg_scaled_pow(static_cast<double>(B), recip, d) -
                      rho_of_neg_scaled_pow(static_cast<double>(B + 1), recip,
                                            d)));
        });
    GdValue out;
    out.direct = direct.value();
    out.formula = A_of_N(params) / static_cast<double>(d) + rho_part.value();
    return out;
}

double sigma_j(const PipelineParams& params, const RosserWeights& w, int j) {
    if (j != 0 && j != 1) throw DomainError("sigma_j requires j in {0, 1}");
    const auto& e = params.exp;
    const auto recip = Exponent::reciprocal_of(e.c);
    const auto& ds = w.support();
    const auto& ls = w.lambda();
    std::vector<KahanSum> per_d(ds.size());
    for_each_prime(
        static_cast<std::uint64_t>(params.P),
        static_cast<std::uint64_t>(2 * params.P), [&](std::uint64_t p) {
            const auto fp = floor_pow(p, e);
            const std::int64_t B = params.N + j - fp.value;
            if (B < 1) throw PhaseDomainError("sigma_j: N + j - [p^c] < 1");
            const double lg = std::log(static_cast<double>(p));
            for (std::size_t i = 0; i < ds.size(); ++i)
                per_d[i].add(lg * rho_of_neg_scaled_pow(static_cast<double>(B),
                                                        recip, ds[i]));
        });
    KahanSum total;
    for (std::size_t i = 0; i < ds.size(); ++i)
        total.add(static_cast<double>(ls[i]) * per_d[i].value());
    return total.value();
}

VaalerSplitValue sigma_vaaler_split(const PipelineParams& params,
                                    const RosserWeights& w, int j,
                                    int H_override) {
    if (j != 0 && j != 1) throw DomainError("j must be 0 or 1");
    const auto& e = params.exp;
    const auto recip = Exponent::reciprocal_of(e.c);

    // primes and their phase bases, shared across divisors
    std::vector<std::uint64_t> primes;
    std::vector<std::int64_t> bases;
    std::vector<double> logs;
    for_each_prime(static_cast<std::uint64_t>(params.P),
                   static_cast<std::uint64_t>(2 * params.P),
                   [&](std::uint64_t p) {
                       const auto fp = floor_pow(p, e);
                       const std::int64_t B = params.N + j - fp.value;
                       if (B < 1)
                           throw PhaseDomainError("N + j - [p^c] < 1");
                       primes.push_back(p);
                       bases.push_back(B);
                       logs.push_back(std::log(static_cast<double>(p)));
                   });

    const auto& ds = w.support();
    const auto& ls = w.lambda();
    KahanSum sigma_prime, majorant;
    std::vector<std::complex<double>> acc;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (ls[i] == 0) continue;
        int H = H_override;
        if (H <= 0)
            H = static_cast<int>(std::min<double>(
                std::max(2.0, params.H_of(static_cast<double>(ds[i]))),
                kVaalerDegreeCap));
        const auto sys = build_vaaler(H);
        // acc[h] = sum_p log p e(h t_p) with t_p = {-(N+j-[p^c])^gamma / d}
        acc.assign(static_cast<std::size_t>(H) + 1, {0.0, 0.0});
        for (std::size_t k = 0; k < primes.size(); ++k) {
            const double t =
                certified_frac_scaled(static_cast<double>(bases[k]), recip,
                                      ds[i], /*negate=*/true)
                    .value;
            const std::complex<double> rot = e_of(t);
            std::complex<double> cur{logs[k], 0.0};
            for (int h = 0; h <= H; ++h) {
                acc[static_cast<std::size_t>(h)] += cur;
                cur *= rot;
            }
        }
        // sum_h 2 Re(c_h acc_h) collects the conjugate pairs of the
        // truncated series; the majorant pairs |acc_h| with d_h
        double sp = 0.0, mj = sys.d[0] * std::abs(acc[0]);
        for (int h = 1; h <= H; ++h) {
            const auto& ah = acc[static_cast<std::size_t>(h)];
            sp += 2.0 * (sys.c[static_cast<std::size_t>(h - 1)] * ah).real();
            mj += 2.0 * sys.d[static_cast<std::size_t>(h)] * std::abs(ah);
        }
        sigma_prime.add(static_cast<double>(ls[i]) * sp);
        majorant.add(std::abs(static_cast<double>(ls[i])) * mj);
    }
    return {sigma_prime.value(), majorant.value()};
}

std::vector<ScanRow> theorem_scan(std::int64_t from, std::int64_t to,
                                  const RealExponent& e,
                                  const FactorTable& ft) {
    if (from < 3 || to < from) throw DomainError("theorem_scan: bad range");
    const int bound = theorem_prime_factor_bound(e.c);
    const auto K = certified_ceil_scaled(static_cast<double>(to),
                                         Exponent::reciprocal_of(e.c)) +
                   1;
    require_table(ft, K, "theorem_scan");

    // floors [k^c] for 1 <= k <= K, strictly increasing in k
    std::vector<std::int64_t> floors(static_cast<std::size_t>(K) + 1, 0);
    for (std::int64_t k = 1; k <= K; ++k)
        floors[static_cast<std::size_t>(k)] =
            floor_pow(static_cast<std::uint64_t>(k), e).value;

    std::vector<ScanRow> rows;
    rows.reserve(static_cast<std::size_t>(to - from + 1));
    const auto begin = floors.begin() + 1, end = floors.end();
    for (std::int64_t N = from; N <= to; ++N) {
        ScanRow row;
        row.N = N;
        row.bound = bound;
        for (std::uint32_t p : ft.primes()) {
            if (p > static_cast<std::uint64_t>(K)) break;
            const std::int64_t fp = floors[p];
            if (fp >= N) break;
            const std::int64_t B = N - fp;
            const auto it = std::lower_bound(begin, end, B);
            if (it == end || *it != B) continue;
            const auto m = static_cast<std::int64_t>(it - begin) + 1;
            const int omega = ft.big_omega(static_cast<std::uint64_t>(m));
            if (!row.found || omega < row.min_omega) {
                row.found = true;
                row.min_omega = omega;
                row.p = p;
                row.m = m;
                row.floor_p = fp;
                row.floor_m = B;
            }
        }
        row.ok = row.found && row.min_omega <= bound;
        rows.push_back(row);
    }
    return rows;
}

} // namespace psrep
