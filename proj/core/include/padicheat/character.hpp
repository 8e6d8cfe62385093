#pragma once

#include <complex>

#include "padicheat/scalar.hpp"

namespace padicheat {

/// e^{2 pi i q} with q an exact rational kept in [0, 1).
class UnitPhase {
 public:
  UnitPhase() = default;
  explicit UnitPhase(const Rational& angle);

  const Rational& angle() const noexcept { return angle_; }
  std::complex<double> value() const;
  UnitPhase conj() const;

  friend UnitPhase operator*(const UnitPhase& a, const UnitPhase& b) { return UnitPhase(a.angle_ + b.angle_); }
  friend bool operator==(const UnitPhase& a, const UnitPhase& b) noexcept { return a.angle_ == b.angle_; }

 private:
  Rational angle_ = 0;
};

/// The additive character chi_p(y) = exp(2 pi i {y}_p).
UnitPhase character(const Scalar& y);

}  // namespace padicheat
