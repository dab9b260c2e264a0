#include "psrep/vaaler.hpp"

#include <cmath>

#include "psrep/num.hpp"

namespace psrep {

namespace {

// Vaaler's interpolation multiplier V(t) = pi t (1-t) cot(pi t) + t on
// (0, 1); decreases from 1 to 0, so |c_h| <= 1/(2 pi h).
double vaaler_multiplier(double t) {
    return kTwoPi / 2.0 * t * (1.0 - t) / std::tan(kTwoPi / 2.0 * t) + t;
}

} // namespace

VaalerSystem build_vaaler(int H) {
    if (H < 2) throw DomainError("build_vaaler requires H >= 2");
    VaalerSystem sys;
    sys.H = H;
    sys.c.reserve(static_cast<std::size_t>(H));
    sys.d.reserve(static_cast<std::size_t>(H) + 1);
    const double n1 = H + 1.0;
    for (int h = 1; h <= H; ++h) {
        const double w = vaaler_multiplier(h / n1);
        // c_h = V(h/(H+1)) / (2 pi i h)
        sys.c.emplace_back(0.0, -w / (kTwoPi * h));
    }
    for (int h = 0; h <= H; ++h) sys.d.push_back((1.0 - h / n1) / n1);
    return sys;
}

double rho_approx(const VaalerSystem& sys, double t) {
    // c_h e(ht) + c_{-h} e(-ht) = 2 Re(c_h) cos - 2 Im(c_h) sin
    KahanSum acc;
    for (int h = sys.H; h >= 1; --h) {
        const double ang = kTwoPi * h * t;
        const auto& ch = sys.c[static_cast<std::size_t>(h - 1)];
        acc.add(2.0 * (ch.real() * std::cos(ang) - ch.imag() * std::sin(ang)));
    }
    return acc.value();
}

double rho_majorant(const VaalerSystem& sys, double t) {
    KahanSum acc;
    for (int h = sys.H; h >= 1; --h)
        acc.add(2.0 * sys.d[static_cast<std::size_t>(h)] *
                std::cos(kTwoPi * h * t));
    acc.add(sys.d[0]);
    return acc.value();
}

void export_vaaler_csv(const VaalerSystem& sys, std::ostream& os) {
    os << "h,re_c,im_c,d\n";
    for (int h = -sys.H; h <= sys.H; ++h) {
        const double dh = sys.d[static_cast<std::size_t>(std::abs(h))];
        if (h == 0) {
            os << "0,0,0," << dh << '\n';
            continue;
        }
        auto ch = sys.c[static_cast<std::size_t>(std::abs(h) - 1)];
        if (h < 0) ch = std::conj(ch);
        os << h << ',' << ch.real() << ',' << ch.imag() << ',' << dh << '\n';
    }
}

} // namespace psrep
