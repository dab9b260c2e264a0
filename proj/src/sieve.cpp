#include "psrep/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "psrep/num.hpp"

namespace psrep {

namespace {
constexpr std::uint64_t kSpfCap = 100'000'000;   // table entries
constexpr std::uint64_t kSieveCap = 1'000'000'000'000ull;
constexpr std::uint64_t kSegment = 1u << 20;     // cache-resident
} // namespace

FactorTable::FactorTable(std::uint64_t limit) : limit_(limit) {
    if (limit < 1) throw DomainError("FactorTable limit must be >= 1");
    if (limit > kSpfCap)
        throw TableTooLarge("FactorTable limit " + std::to_string(limit) +
                            " exceeds cap " + std::to_string(kSpfCap));
    spf_.assign(limit + 1, 0);
    // linear sieve: every n is crossed once by its smallest prime factor
    for (std::uint64_t n = 2; n <= limit; ++n) {
        if (spf_[n] == 0) {
            spf_[n] = static_cast<std::uint32_t>(n);
            primes_.push_back(static_cast<std::uint32_t>(n));
        }
        for (std::uint32_t p : primes_) {
            if (p > spf_[n] || n * p > limit) break;
            spf_[n * p] = p;
        }
    }
}

void FactorTable::check(std::uint64_t n) const {
    if (n < 1 || n > limit_)
        throw OutOfTableRange("n = " + std::to_string(n) +
                              " outside factor table range [1, " +
                              std::to_string(limit_) + "]");
}

std::uint32_t FactorTable::spf(std::uint64_t n) const {
    check(n);
    if (n == 1) throw DomainError("spf(1) undefined");
    return spf_[n];
}

int FactorTable::moebius(std::uint64_t n) const {
    check(n);
    int k = 0;
    while (n > 1) {
        const std::uint32_t p = spf_[n];
        n /= p;
        if (n % p == 0) return 0;
        ++k;
    }
    return (k % 2 == 0) ? 1 : -1;
}

double FactorTable::von_mangoldt(std::uint64_t n) const {
    check(n);
    if (n == 1) return 0.0;
    const std::uint32_t p = spf_[n];
    while (n % p == 0) n /= p;
    return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

std::uint64_t FactorTable::divisor_count(std::uint64_t n) const {
    check(n);
    std::uint64_t tau = 1;
    while (n > 1) {
        const std::uint32_t p = spf_[n];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        tau *= static_cast<std::uint64_t>(e + 1);
    }
    return tau;
}

int FactorTable::big_omega(std::uint64_t n) const {
    check(n);
    int k = 0;
    while (n > 1) {
        n /= spf_[n];
        ++k;
    }
    return k;
}

bool FactorTable::is_prime(std::uint64_t n) const {
    check(n);
    return n >= 2 && spf_[n] == n;
}

std::vector<std::pair<std::uint64_t, int>>
FactorTable::factorize(std::uint64_t n) const {
    check(n);
    std::vector<std::pair<std::uint64_t, int>> out;
    while (n > 1) {
        const std::uint32_t p = spf_[n];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    return out;
}

double FactorTable::mertens_product(std::uint64_t z) const {
    if (z < 2 || z > limit_ + 1)
        throw OutOfTableRange("mertens_product: z = " + std::to_string(z) +
                              " outside table range");
    CompensatedProduct prod;
    for (std::uint32_t p : primes_) {
        if (p >= z) break;
        prod.mul(1.0 - 1.0 / static_cast<double>(p));
    }
    return prod.value();
}

void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& fn) {
    if (hi <= lo) return;
    if (hi > kSieveCap)
        throw RangeTooLarge("prime range upper bound " + std::to_string(hi) +
                            " exceeds cap " + std::to_string(kSieveCap));
    // base primes up to sqrt(hi)
    const auto root =
        static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 2;
    std::vector<bool> base(root + 1, true);
    std::vector<std::uint64_t> base_primes;
    for (std::uint64_t i = 2; i <= root; ++i) {
        if (!base[i]) continue;
        base_primes.push_back(i);
        for (std::uint64_t j = i * i; j <= root; j += i) base[j] = false;
    }

    std::vector<bool> seg;
    for (std::uint64_t start = lo + 1; start <= hi; start += kSegment) {
        const std::uint64_t end = std::min(hi, start + kSegment - 1);
        seg.assign(end - start + 1, true);
        for (std::uint64_t p : base_primes) {
            if (p * p > end) break;
            std::uint64_t first = std::max(p * p, ((start + p - 1) / p) * p);
            for (std::uint64_t j = first; j <= end; j += p)
                seg[j - start] = false;
        }
        for (std::uint64_t n = start; n <= end; ++n)
            if (n >= 2 && seg[n - start]) fn(n);
    }
}

PrimeSegment primes_between(std::uint64_t lo, std::uint64_t hi) {
    if (lo < 1 || lo >= hi)
        throw DomainError("primes_between requires 1 <= lo < hi");
    PrimeSegment out;
    out.lo = lo;
    out.hi = hi;
    for_each_prime(lo, hi, [&](std::uint64_t p) { out.primes.push_back(p); });
    return out;
}

double chebyshev_theta(std::uint64_t lo, std::uint64_t hi) {
    KahanSum s;
    for_each_prime(lo, hi,
                   [&](std::uint64_t p) { s.add(std::log(static_cast<double>(p))); });
    return s.value();
}

} // namespace psrep
