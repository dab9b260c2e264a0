#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "psrep/errors.hpp"

namespace psrep {

// Smallest-prime-factor table with the standard multiplicative functions.
// Immutable after construction; all queries are thread-safe.
class FactorTable {
  public:
    explicit FactorTable(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }

    std::uint32_t spf(std::uint64_t n) const;
    int moebius(std::uint64_t n) const;        // in {-1, 0, 1}
    double von_mangoldt(std::uint64_t n) const; // log p on prime powers, else 0
    std::uint64_t divisor_count(std::uint64_t n) const;
    int big_omega(std::uint64_t n) const; // prime factors with multiplicity
    bool is_prime(std::uint64_t n) const;

    // (prime, multiplicity) pairs, ascending prime
    std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) const;

    // prod_{p < z} (1 - 1/p), compensated accumulation
    double mertens_product(std::uint64_t z) const;

    const std::vector<std::uint32_t>& primes() const { return primes_; }

  private:
    void check(std::uint64_t n) const;

    std::uint64_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

struct PrimeSegment {
    std::uint64_t lo = 0, hi = 0; // primes in (lo, hi]
    std::vector<std::uint64_t> primes;
};

// Streams every prime in (lo, hi] in increasing order; segmented, memory
// O(sqrt(hi) + segment).
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& fn);

PrimeSegment primes_between(std::uint64_t lo, std::uint64_t hi);

// sum_{lo < p <= hi} log p
double chebyshev_theta(std::uint64_t lo, std::uint64_t hi);

} // namespace psrep
