#include "psrep/rosser.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "psrep/num.hpp"

namespace psrep {

namespace {

std::uint64_t floor_pow_cfg(std::int64_t N, double expo) {
    // configuration quantity, plain double arithmetic is enough here
    return static_cast<std::uint64_t>(
        std::floor(std::pow(static_cast<double>(N), expo)));
}

// largest integer r with r^3 <= x
std::uint64_t icbrt(std::uint64_t x) {
    auto r = static_cast<std::uint64_t>(std::cbrt(static_cast<double>(x)));
    while (r > 0 && r * r * r > x) --r;
    while ((r + 1) * (r + 1) * (r + 1) <= x) ++r;
    return r;
}

std::vector<std::uint32_t> primes_below(std::uint64_t z) {
    std::vector<std::uint32_t> out;
    if (z <= 2) return out;
    std::vector<bool> is(z, true);
    for (std::uint64_t i = 2; i < z; ++i) {
        if (!is[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j < z; j += i) is[j] = false;
    }
    return out;
}

struct Dfs {
    std::uint64_t D;
    const std::vector<std::uint32_t>& primes; // ascending, all < z
    const std::function<void(std::uint64_t, int)>& visit;

    // extend d = prod (of length len, smallest chosen prime primes[idx])
    // by primes with index < idx
    void descend(std::uint64_t prod, int len, std::size_t idx) const {
        const bool even_next = ((len + 1) & 1) == 0;
        // the lower-bound truncation constrains the even positions:
        // p1...p_{m-1} * p_m^3 <= D for every even m.  Odd positions are
        // free; in particular every single prime p < z carries weight -1,
        // which the fundamental inequality requires.  Products stay <= D
        // through the preceding even condition.
        const std::uint64_t pmax = even_next ? icbrt(D / prod) : ~0ull;
        const int lam = even_next ? 1 : -1;
        for (std::size_t i = idx; i-- > 0;) {
            const std::uint64_t p = primes[i];
            if (p > pmax) continue;
            const std::uint64_t d = prod * p;
            visit(d, lam);
            descend(d, len + 1, i);
        }
    }
};

} // namespace

SieveConfig SieveConfig::from_exponents(std::int64_t N, double alpha,
                                        double delta, bool theorem_mode) {
    if (N < 2) throw DomainError("SieveConfig requires N >= 2");
    if (!(alpha > 0.0) || !(delta > 0.0))
        throw DomainError("SieveConfig requires positive alpha, delta");
    SieveConfig cfg;
    cfg.N = N;
    cfg.alpha = alpha;
    cfg.delta = delta;
    cfg.s = delta / alpha;
    cfg.theorem_mode = theorem_mode;
    if (theorem_mode && !(cfg.s > 2.0 && cfg.s < 3.0))
        throw ConstraintViolation(
            "theorem mode requires 2 < delta/alpha < 3, got s = " +
            std::to_string(cfg.s));
    cfg.z = std::max<std::uint64_t>(2, floor_pow_cfg(N, alpha));
    cfg.D = std::max<std::uint64_t>(cfg.z, floor_pow_cfg(N, delta));
    return cfg;
}

SieveConfig SieveConfig::from_z_level(std::uint64_t z, std::uint64_t D) {
    if (z < 2) throw DomainError("SieveConfig requires z >= 2");
    if (D < z) throw DomainError("SieveConfig requires D >= z");
    SieveConfig cfg;
    cfg.z = z;
    cfg.D = D;
    cfg.s = std::log(static_cast<double>(D)) / std::log(static_cast<double>(z));
    cfg.theorem_mode = false;
    return cfg;
}

RosserWeights::RosserWeights(std::uint64_t z, std::uint64_t D,
                             std::vector<std::uint64_t> support,
                             std::vector<std::int8_t> lambda)
    : z_(z), D_(D), support_(std::move(support)), lambda_(std::move(lambda)) {}

int RosserWeights::lambda_of(std::uint64_t d) const {
    const auto it = std::lower_bound(support_.begin(), support_.end(), d);
    if (it == support_.end() || *it != d) return 0;
    return lambda_[static_cast<std::size_t>(it - support_.begin())];
}

void enumerate_rosser_support(
    std::uint64_t z, std::uint64_t D,
    const std::function<void(std::uint64_t, int)>& visit) {
    visit(1, 1); // empty product
    if (z <= 2) return;
    const auto primes = primes_below(z);
    Dfs dfs{D, primes, visit};
    dfs.descend(1, 0, primes.size());
}

RosserWeights build_lower_rosser(const SieveConfig& cfg,
                                 std::uint64_t support_cap) {
    std::vector<std::uint64_t> ds;
    std::vector<std::int8_t> lams;
    enumerate_rosser_support(cfg.z, cfg.D, [&](std::uint64_t d, int lam) {
        if (ds.size() >= support_cap)
            throw SupportTooLarge("Rosser weight support exceeds cap " +
                                  std::to_string(support_cap));
        ds.push_back(d);
        lams.push_back(static_cast<std::int8_t>(lam));
    });
    // fixed ascending-d order for deterministic downstream sums
    std::vector<std::size_t> idx(ds.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return ds[a] < ds[b]; });
    std::vector<std::uint64_t> ds2(ds.size());
    std::vector<std::int8_t> lams2(ds.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        ds2[i] = ds[idx[i]];
        lams2[i] = lams[idx[i]];
    }
    return RosserWeights(cfg.z, cfg.D, std::move(ds2), std::move(lams2));
}

bool verify_fundamental(const RosserWeights& w, const FactorTable& ft,
                        std::uint64_t k) {
    // Both sums run over divisors of (k, B_z): the weights live on
    // divisors of B_z, and that is the gcd the sieve argument feeds them.
    std::vector<std::uint64_t> ps; // distinct prime divisors of k below z
    for (const auto& [p, e] : ft.factorize(k))
        if (p < w.smoothness_z()) ps.push_back(p);
    std::int64_t lam_sum = 0;
    const std::size_t subsets = std::size_t{1} << ps.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        std::uint64_t d = 1;
        for (std::size_t i = 0; i < ps.size(); ++i)
            if (mask & (std::size_t{1} << i)) d *= ps[i];
        lam_sum += w.lambda_of(d);
    }
    // sum of mu over divisors of (k, B_z) is its unit indicator
    const std::int64_t mu_sum = ps.empty() ? 1 : 0;
    return mu_sum >= lam_sum;
}

double f_linear(double s) {
    if (!(s > 0.0) || s >= 3.0)
        throw DomainError("f_linear defined on (0, 3), got s = " +
                          std::to_string(s));
    if (s <= 2.0) return 0.0;
    return 2.0 * std::exp(kEulerGamma) * std::log(s - 1.0) / s;
}

double weighted_density(const RosserWeights& w) {
    KahanSum acc;
    const auto& ds = w.support();
    const auto& ls = w.lambda();
    for (std::size_t i = 0; i < ds.size(); ++i)
        acc.add(static_cast<double>(ls[i]) / static_cast<double>(ds[i]));
    return acc.value();
}

double gamma0_lower(const RosserWeights& w, double a_of_n) {
    return a_of_n * weighted_density(w);
}

void export_weights_csv(const RosserWeights& w, std::ostream& os) {
    os << "d,lambda\n";
    const auto& ds = w.support();
    const auto& ls = w.lambda();
    for (std::size_t i = 0; i < ds.size(); ++i)
        os << ds[i] << ',' << static_cast<int>(ls[i]) << '\n';
}

} // namespace psrep
