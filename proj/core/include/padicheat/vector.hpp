#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padicheat/scalar.hpp"

namespace padicheat {

/// An element of Q_p^n with exact coordinates.
class Vector {
 public:
  Vector(unsigned p, std::size_t n);
  Vector(unsigned p, std::vector<Scalar> coords);

  static Vector parse(unsigned p, const std::vector<std::string>& coords);
  /// p^{-k} * (digits), the digits being integers; handy for building probe points.
  static Vector from_integers(unsigned p, std::span<const std::int64_t> values, long shift = 0);

  unsigned prime() const noexcept { return p_; }
  std::size_t dimension() const noexcept { return coords_.size(); }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Scalar> coords() const noexcept { return coords_; }

  bool is_zero() const noexcept;
  /// min_i ord(x_i); std::nullopt for the zero vector.
  std::optional<long> valuation() const noexcept;
  /// ||x||_p = max_i |x_i|_p.
  Rational norm() const;
  /// k with ||x||_p = p^k; requires x != 0.
  long norm_exponent() const;

  Vector operator-() const;
  friend Vector operator+(const Vector& a, const Vector& b);
  friend Vector operator-(const Vector& a, const Vector& b);
  Vector scaled(const Scalar& c) const;
  Vector shifted(long k) const;
  Scalar dot(const Vector& other) const;
  Vector reduced(long radius_exp) const;

  /// x = p^ord * u with ||u|| = 1; returns ord and u mod p^digits.
  struct UnitDecomposition {
    long ord = 0;
    std::vector<std::uint64_t> residues;
  };
  UnitDecomposition unit_residues(unsigned digits) const;

  std::string str() const;

  friend bool operator==(const Vector& a, const Vector& b) noexcept {
    return a.p_ == b.p_ && a.coords_ == b.coords_;
  }
  friend bool operator<(const Vector& a, const Vector& b);

 private:
  void check_compatible(const Vector& other) const;

  unsigned p_;
  std::vector<Scalar> coords_;
};

}  // namespace padicheat
