#include "psrep/cups.hpp"

#include <cmath>
#include <string>

#include "psrep/num.hpp"

namespace psrep {

namespace {

constexpr int kMaxOrder = 40;          // binomials stay exact in double
constexpr std::int64_t kMaxCutoff = 10'000'000;

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

// Irwin-Hall CDF: distribution of the sum of `r` iid U[0,1].
// Evaluated on the half x <= r/2 (symmetry) to keep the alternating sum
// well conditioned.
long double irwin_hall_cdf(int r, long double x) {
    if (x <= 0.0L) return 0.0L;
    if (x >= static_cast<long double>(r)) return 1.0L;
    if (x > r / 2.0L) return 1.0L - irwin_hall_cdf(r, r - x);
    long double sum = 0.0L;
    long double binom = 1.0L; // C(r, k)
    const int kmax = static_cast<int>(std::floor(static_cast<double>(x)));
    for (int k = 0; k <= kmax; ++k) {
        long double term = binom;
        for (int j = 0; j < r; ++j) term *= (x - k) / (j + 1); // (x-k)^r / r!
        sum += (k % 2 == 0) ? term : -term;
        binom = binom * (r - k) / (k + 1);
    }
    if (sum < 0.0L) sum = 0.0L;
    return sum;
}

} // namespace

CupSystem build_cups(int Z, int r, std::int64_t cutoff) {
    if (Z < 2) throw DomainError("build_cups requires Z >= 2");
    if (r < 1 || r > kMaxOrder)
        throw DomainError("build_cups requires 1 <= r <= " +
                          std::to_string(kMaxOrder));
    if (cutoff < 1 || cutoff > kMaxCutoff)
        throw DomainError("cup Fourier cutoff out of range");
    CupSystem sys;
    sys.Z = Z;
    sys.r = r;
    sys.delta = 1.0 / (2.0 * Z);
    sys.cutoff = cutoff;
    sys.beta.resize(static_cast<std::size_t>(cutoff) + 1);
    sys.beta[0] = sys.delta;
    const double pi = kTwoPi / 2.0;
    for (std::int64_t n = 1; n <= cutoff; ++n) {
        // interval transform times the r-th power of one uniform kernel
        const double x = pi * n * sys.delta;
        sys.beta[static_cast<std::size_t>(n)] =
            (std::sin(x) / (pi * n)) * std::pow(sinc(x / r), r);
    }
    // |beta_n| <= (1/(pi n)) (r/(pi n delta))^r summed over |n| > cutoff
    const double lt = std::log(static_cast<double>(r)) -
                      std::log(pi * sys.delta * static_cast<double>(cutoff));
    sys.tail_bound =
        2.0 * std::exp(-std::log(pi) - std::log(static_cast<double>(r)) +
                       r * lt);
    return sys;
}

double g_eval(const CupSystem& sys, double t) {
    double u = t - std::floor(t + 0.5); // wrap to [-1/2, 1/2)
    if (std::abs(u) >= sys.delta) return 0.0;
    // CDF of the mollifier sum at u +- delta/2, in Irwin-Hall coordinates
    const double w = sys.delta / sys.r; // single kernel width
    const auto shift = [&](double s) {
        return irwin_hall_cdf(sys.r,
                              static_cast<long double>(s / w + sys.r / 2.0));
    };
    const long double v = shift(u + sys.delta / 2) - shift(u - sys.delta / 2);
    return static_cast<double>(v);
}

double g_z_eval(const CupSystem& sys, int z_index, double t) {
    if (z_index < 0 || z_index >= 2 * sys.Z)
        throw DomainError("cup shift index must lie in [0, 2Z)");
    return g_eval(sys, t - z_index * sys.delta);
}

double g_fourier_eval(const CupSystem& sys, double t) {
    KahanSum acc;
    for (std::int64_t n = sys.cutoff; n >= 1; --n)
        acc.add(2.0 * sys.beta[static_cast<std::size_t>(n)] *
                std::cos(kTwoPi * n * t));
    acc.add(sys.beta[0]);
    return acc.value();
}

std::complex<double> beta_z(const CupSystem& sys, int z_index, std::int64_t n) {
    if (z_index < 0 || z_index >= 2 * sys.Z)
        throw DomainError("cup shift index must lie in [0, 2Z)");
    const std::int64_t a = std::abs(n);
    if (a > sys.cutoff) throw DomainError("beta_z: |n| beyond cutoff");
    const double b = sys.beta[static_cast<std::size_t>(a)];
    return b * e_of(-static_cast<double>(z_index) * static_cast<double>(n) *
                    sys.delta);
}

double partition_check(const CupSystem& sys,
                       const std::vector<double>& samples) {
    double worst = 0.0;
    for (double t : samples) {
        KahanSum acc;
        for (int z = 0; z < 2 * sys.Z; ++z) acc.add(g_z_eval(sys, z, t));
        worst = std::max(worst, std::abs(acc.value() - 1.0));
    }
    return worst;
}

void export_cups_csv(const CupSystem& sys, std::ostream& os) {
    os << "n,beta\n";
    for (std::int64_t n = 0; n <= sys.cutoff; ++n)
        os << n << ',' << sys.beta[static_cast<std::size_t>(n)] << '\n';
}

} // namespace psrep
