#pragma once

#include <string>
#include <vector>

#include "padicheat/vector.hpp"

namespace padicheat {

/// vol(B_r^n) = p^{rn} under the normalization vol(Z_p^n) = 1.
Rational ball_volume(unsigned p, long r, std::size_t n);

/// The ball center + B_r^n = { y : ||y - center||_p <= p^r }.
///
/// The center is stored reduced modulo p^{-r} Z_p^n, so two cosets describe
/// the same set exactly when they compare equal.
class Coset {
 public:
  Coset(const Vector& center, long radius_exp);

  static Coset ball(unsigned p, std::size_t n, long radius_exp);

  const Vector& center() const noexcept { return center_; }
  long radius_exp() const noexcept { return radius_exp_; }
  unsigned prime() const noexcept { return center_.prime(); }
  std::size_t dimension() const noexcept { return center_.dimension(); }

  bool contains(const Vector& y) const;
  bool contains(const Coset& other) const;
  bool disjoint(const Coset& other) const;
  bool contains_origin() const { return center_.is_zero(); }
  /// log_p of the common norm of all points; requires !contains_origin().
  long norm_exponent() const { return center_.norm_exponent(); }

  Rational volume() const;
  double volume_value() const;

  /// The p^n sub-cosets of radius p^{r-1}; the first coordinate digit varies fastest.
  std::vector<Coset> children() const;
  Coset parent() const { return Coset(center_, radius_exp_ + 1); }
  Coset translated(const Vector& a) const { return Coset(center_ + a, radius_exp_); }

  std::string str() const;

  friend bool operator==(const Coset& a, const Coset& b) noexcept {
    return a.radius_exp_ == b.radius_exp_ && a.center_ == b.center_;
  }
  /// Larger cosets first, then by center.
  friend bool operator<(const Coset& a, const Coset& b) {
    if (a.radius_exp_ != b.radius_exp_) return a.radius_exp_ > b.radius_exp_;
    return a.center_ < b.center_;
  }

 private:
  Vector center_;
  long radius_exp_;
};

enum class BallRelation { Disjoint, Equal, FirstInsideSecond, SecondInsideFirst };

BallRelation relation(const Coset& a, const Coset& b);

/// True when no two of the cosets intersect.
bool pairwise_disjoint(const std::vector<Coset>& cosets);

}  // namespace padicheat
