#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <vector>

#include "psrep/errors.hpp"
#include "psrep/sieve.hpp"

namespace psrep {

// Sieve level parameters: z = N^alpha, D = N^delta, s = delta/alpha.
struct SieveConfig {
    std::int64_t N = 0; // 0 when built from explicit (z, D)
    double alpha = 0.0;
    double delta = 0.0;
    std::uint64_t z = 2;
    std::uint64_t D = 2;
    double s = 0.0;
    bool theorem_mode = false;

    // z and D derived from exponents; z below 2 is clamped to 2 (desk-scale
    // N makes N^alpha tiny in theorem mode).
    static SieveConfig from_exponents(std::int64_t N, double alpha,
                                      double delta, bool theorem_mode = true);
    static SieveConfig from_z_level(std::uint64_t z, std::uint64_t D);
};

// Lower-bound Rosser weights of level D on squarefree z-smooth d:
// lambda(d) = mu(d) on the support, 0 elsewhere.  d = p1 > p2 > ... > pk
// is in the support iff p1...p_{2l} * p_{2l+1}^3 <= D for every prefix
// with 2l+1 <= k.
class RosserWeights {
  public:
    RosserWeights(std::uint64_t z, std::uint64_t D,
                  std::vector<std::uint64_t> support,
                  std::vector<std::int8_t> lambda);

    std::uint64_t smoothness_z() const { return z_; }
    std::uint64_t level_D() const { return D_; }
    std::size_t size() const { return support_.size(); }

    // ascending d with parallel lambda values
    const std::vector<std::uint64_t>& support() const { return support_; }
    const std::vector<std::int8_t>& lambda() const { return lambda_; }

    int lambda_of(std::uint64_t d) const; // 0 off the support

  private:
    std::uint64_t z_, D_;
    std::vector<std::uint64_t> support_;
    std::vector<std::int8_t> lambda_;
};

// Depth-first enumeration of the support; visitor receives (d, lambda).
// Used by the builder and by streaming audits.
void enumerate_rosser_support(
    std::uint64_t z, std::uint64_t D,
    const std::function<void(std::uint64_t, int)>& visit);

RosserWeights build_lower_rosser(const SieveConfig& cfg,
                                 std::uint64_t support_cap = 100'000'000);

// sum_{d|k} mu(d) >= sum_{d|k} lambda(d); true for every k by the defining
// property of lower-bound weights.  Checked explicitly.
bool verify_fundamental(const RosserWeights& w, const FactorTable& ft,
                        std::uint64_t k);

// Lower function of the linear sieve: 0 on (0,2],
// 2 e^gamma_E log(s-1)/s on (2,3).
double f_linear(double s);

// sum over the support of lambda(d)/d, compensated, ascending d.
double weighted_density(const RosserWeights& w);

// Gamma_0 = A(N) * sum lambda(d)/d
double gamma0_lower(const RosserWeights& w, double a_of_n);

void export_weights_csv(const RosserWeights& w, std::ostream& os);

} // namespace psrep
