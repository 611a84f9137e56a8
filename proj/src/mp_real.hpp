#pragma once

// Minimal RAII handle over an MPFR number. Only what the series summation
// needs; arithmetic goes through the mpfr_* calls directly.

#include <mpfr.h>

#include <utility>

namespace tfse::detail {

class MpReal {
 public:
  explicit MpReal(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  MpReal(mpfr_prec_t prec, double x) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  ~MpReal() {
    if (v_->_mpfr_d != nullptr) mpfr_clear(v_);
  }
  MpReal(const MpReal& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  MpReal& operator=(const MpReal& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  MpReal(MpReal&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  MpReal& operator=(MpReal&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

 private:
  mpfr_t v_;
};

}  // namespace tfse::detail
