#include "padicheat/character.hpp"

#include <cmath>
#include <numbers>

namespace padicheat {

UnitPhase::UnitPhase(const Rational& angle) {
  const BigInt num = boost::multiprecision::numerator(angle);
  const BigInt den = boost::multiprecision::denominator(angle);
  angle_ = Rational(floor_mod(num, den), den);
}

std::complex<double> UnitPhase::value() const {
  if (angle_ == 0) return {1.0, 0.0};
  // reduce to (-1/2, 1/2] before converting so the argument stays small
  Rational a = angle_;
  if (a > Rational(1, 2)) a -= 1;
  const double theta = 2.0 * std::numbers::pi * a.convert_to<double>();
  return {std::cos(theta), std::sin(theta)};
}

UnitPhase UnitPhase::conj() const { return UnitPhase(-angle_); }

UnitPhase character(const Scalar& y) { return UnitPhase(y.fractional_part()); }

}  // namespace padicheat
