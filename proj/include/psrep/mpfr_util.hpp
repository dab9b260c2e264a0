#pragma once

#include <mpfr.h>

#include <utility>

namespace psrep {

// Minimal RAII handle for one mpfr value.
class Mpf {
  public:
    explicit Mpf(mpfr_prec_t prec) { mpfr_init2(x_, prec); }
    Mpf(const Mpf&) = delete;
    Mpf& operator=(const Mpf&) = delete;
    Mpf(Mpf&& o) noexcept {
        mpfr_init2(x_, mpfr_get_prec(o.x_));
        mpfr_swap(x_, o.x_);
    }
    ~Mpf() { mpfr_clear(x_); }

    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }
    operator mpfr_ptr() { return x_; }
    operator mpfr_srcptr() const { return x_; }

    void set_prec(mpfr_prec_t prec) { mpfr_set_prec(x_, prec); } // clears value

  private:
    mpfr_t x_;
};

} // namespace psrep
