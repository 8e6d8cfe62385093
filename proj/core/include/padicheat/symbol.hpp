#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padicheat/vector.hpp"

namespace padicheat {

struct Monomial {
  std::vector<unsigned> exponents;
  BigInt coefficient;
};

/// Homogeneous polynomial with rational-integer coefficients in n variables.
class EllipticPolynomial {
 public:
  /// Throws std::invalid_argument when a monomial has the wrong arity or degree.
  EllipticPolynomial(unsigned p, std::size_t n, unsigned d, std::vector<Monomial> monomials);

  unsigned prime() const noexcept { return p_; }
  std::size_t dimension() const noexcept { return n_; }
  unsigned degree() const noexcept { return d_; }
  const std::vector<Monomial>& monomials() const noexcept { return monomials_; }

  Scalar evaluate(const Vector& xi) const;

  std::uint64_t evaluate_mod(std::span<const std::uint64_t> x, std::uint64_t modulus) const;
  std::uint64_t partial_mod(std::size_t i, std::span<const std::uint64_t> x, std::uint64_t modulus) const;
  BigInt evaluate_mod(std::span<const BigInt> x, const BigInt& modulus) const;
  BigInt partial_mod(std::size_t i, std::span<const BigInt> x, const BigInt& modulus) const;

  std::string str() const;

 private:
  unsigned p_;
  std::size_t n_;
  unsigned d_;
  std::vector<Monomial> monomials_;
};

/// The symbol |f(xi)|_p^beta.
class SymbolParams {
 public:
  SymbolParams(EllipticPolynomial polynomial, const Rational& beta);

  const EllipticPolynomial& polynomial() const noexcept { return polynomial_; }
  const Rational& beta() const noexcept { return beta_; }
  double beta_value() const noexcept { return beta_value_; }
  unsigned prime() const noexcept { return polynomial_.prime(); }
  std::size_t dimension() const noexcept { return polynomial_.dimension(); }
  unsigned degree() const noexcept { return polynomial_.degree(); }

 private:
  EllipticPolynomial polynomial_;
  Rational beta_;
  double beta_value_;
};

/// |f(xi)|_p, exact.
Rational symbol_norm(const EllipticPolynomial& f, const Vector& xi);
/// |f(xi)|_p^beta evaluated as p^{-beta * ord f(xi)}.
double symbol_value(const SymbolParams& params, const Vector& xi);

enum class CertificateStatus { Certified, NotElliptic, Inconclusive };

/// A nontrivial zero of f on the unit sphere, known modulo p^digits.
struct HenselWitness {
  std::vector<std::uint64_t> residue_root;  // the simple root mod p^{found_depth} that was lifted
  unsigned found_depth = 1;
  std::size_t lifted_coordinate = 0;
  std::vector<BigInt> root;  // modulo p^digits
  unsigned digits = 0;
};

struct EllipticityCertificate {
  CertificateStatus status = CertificateStatus::Inconclusive;
  Rational c0 = 0;     // min of |f| on the unit sphere
  Rational c1 = 0;     // max of |f| on the unit sphere
  unsigned depth = 0;  // residues mod p^depth determine |f| on the unit sphere
  unsigned depth_reached = 0;
  std::optional<HenselWitness> witness;

  bool certified() const noexcept { return status == CertificateStatus::Certified; }
};

inline constexpr unsigned kDefaultCertificationDepth = 24;

/// Decides ellipticity by refining unit-sphere residue classes until |f| is
/// determined on each of them, or a Hensel-liftable zero turns up.
EllipticityCertificate certify_elliptic(const EllipticPolynomial& f, unsigned max_depth = kDefaultCertificationDepth);

std::string to_string(CertificateStatus status);

namespace detail {
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, unsigned e, std::uint64_t m);
/// p^k if it fits below 2^62, otherwise std::nullopt.
std::optional<std::uint64_t> small_power(unsigned p, unsigned k);
}  // namespace detail

}  // namespace padicheat
