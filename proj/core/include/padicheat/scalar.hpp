#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace padicheat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// p^k for k >= 0.
BigInt ipow(unsigned p, unsigned k);

/// p^k as an exact rational; k may be negative.
Rational rational_power(unsigned p, long k);

/// Trial-division primality test (p is always small here).
bool is_prime(std::uint64_t p);

/// Non-negative remainder of a modulo m (m > 0).
BigInt floor_mod(const BigInt& a, const BigInt& m);

/// Parses "a", "-a" or "a/b" into an exact rational.
Rational parse_rational(std::string_view text);

std::string rational_to_string(const Rational& q);

/**
 * An element of Q_p that is a rational number with a p-power denominator.
 *
 * Stored canonically as p^valuation * unit with the unit an integer coprime
 * to p (the sign lives in the unit). Zero has no valuation (+infinity).
 */
class Scalar {
 public:
  explicit Scalar(unsigned p);
  Scalar(unsigned p, long valuation, BigInt unit);

  static Scalar integer(unsigned p, const BigInt& value);
  static Scalar rational(unsigned p, const Rational& value);
  static Scalar parse(unsigned p, std::string_view text);
  static Scalar power(unsigned p, long k);

  unsigned prime() const noexcept { return p_; }
  bool is_zero() const noexcept { return unit_ == 0; }

  /// ord(x); std::nullopt encodes +infinity for x = 0.
  std::optional<long> valuation() const noexcept;
  const BigInt& unit() const noexcept { return unit_; }

  Rational to_rational() const;
  /// |x|_p = p^{-ord(x)}, 0 for x = 0.
  Rational norm() const;
  /// {x}_p in [0, 1).
  Rational fractional_part() const;

  /// x * p^k.
  Scalar shifted(long k) const;

  /// x mod p^digits in [0, p^digits); requires ord(x) >= 0.
  BigInt residue(unsigned digits) const;

  /// Canonical representative of x + p^{-radius_exp} Z_p, lying in [0, p^{-radius_exp}).
  Scalar reduced(long radius_exp) const;

  std::string str() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) noexcept {
    return a.p_ == b.p_ && a.valuation_ == b.valuation_ && a.unit_ == b.unit_;
  }
  /// Ordering of the underlying rationals; used only for canonical sorting.
  friend bool operator<(const Scalar& a, const Scalar& b);

 private:
  void canonicalize();

  unsigned p_;
  long valuation_ = 0;
  BigInt unit_ = 0;
};

}  // namespace padicheat
