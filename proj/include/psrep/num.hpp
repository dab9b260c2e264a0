#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <future>
#include <numeric>
#include <vector>

namespace psrep {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// e(t) = exp(2 pi i t)
inline std::complex<double> e_of(double t) {
    return {std::cos(kTwoPi * t), std::sin(kTwoPi * t)};
}

// Neumaier-compensated sum.
struct KahanSum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

struct KahanComplexSum {
    KahanSum re, im;
    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }
    std::complex<double> value() const { return {re.value(), im.value()}; }
};

// Compensated product: keeps the running product as an unevaluated
// hi + lo pair using fma-based error extraction.
struct CompensatedProduct {
    double hi = 1.0;
    double lo = 0.0;
    void mul(double f) {
        const double p = hi * f;
        const double e = std::fma(hi, f, -p); // exact residual of hi*f
        lo = lo * f + e;
        hi = p;
    }
    double value() const { return hi + lo; }
};

// Exact rational scalar h/d used as a phase multiplier.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Deterministic blocked reduction: the index range is cut into fixed-size
// blocks, each block is reduced independently (possibly on several
// threads), and partials are merged in block order.  The result does not
// depend on the worker count.
inline constexpr std::int64_t kSumBlock = 1 << 14;

template <class Partial, class BlockFn, class MergeFn>
Partial blocked_reduce(std::int64_t lo, std::int64_t hi, int shards,
                       BlockFn block_fn, MergeFn merge, Partial init) {
    if (hi <= lo) return init;
    const std::int64_t nblocks = (hi - lo + kSumBlock - 1) / kSumBlock;
    std::vector<Partial> parts(static_cast<std::size_t>(nblocks));
    auto run = [&](std::int64_t b0, std::int64_t b1) {
        for (std::int64_t b = b0; b < b1; ++b) {
            const std::int64_t a = lo + b * kSumBlock;
            const std::int64_t z = std::min(hi, a + kSumBlock);
            parts[static_cast<std::size_t>(b)] = block_fn(a, z);
        }
    };
    if (shards <= 1 || nblocks == 1) {
        run(0, nblocks);
    } else {
        const int workers = static_cast<int>(std::min<std::int64_t>(shards, nblocks));
        std::vector<std::future<void>> fs;
        fs.reserve(static_cast<std::size_t>(workers));
        const std::int64_t per = (nblocks + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::int64_t b0 = w * per;
            const std::int64_t b1 = std::min<std::int64_t>(nblocks, b0 + per);
            if (b0 >= b1) break;
            fs.push_back(std::async(std::launch::async, run, b0, b1));
        }
        for (auto& f : fs) f.get();
    }
    Partial acc = init;
    for (const auto& p : parts) acc = merge(acc, p);
    return acc;
}

} // namespace psrep
