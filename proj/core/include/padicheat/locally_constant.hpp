#pragma once

#include <complex>
#include <vector>

#include "padicheat/coset.hpp"

namespace padicheat {

using Complex = std::complex<double>;

struct Piece {
  Coset coset;
  Complex value;
};

/// A Bruhat-Schwartz function: a finite list of disjoint cosets with values,
/// zero outside their union.
///
/// Canonical form: pieces sorted (larger radius first, then center), zero
/// pieces dropped and complete sibling families with equal values merged into
/// their parent. Values closer than 1e-12 relative to the largest |value| are
/// treated as equal (and as zero).
class LocallyConstantFn {
 public:
  LocallyConstantFn(unsigned p, std::size_t n);

  /// Pieces must be pairwise disjoint; throws std::invalid_argument otherwise.
  static LocallyConstantFn from_pieces(unsigned p, std::size_t n, std::vector<Piece> pieces);
  /// Pieces may overlap; values add up where they do.
  static LocallyConstantFn from_overlapping(unsigned p, std::size_t n, std::vector<Piece> pieces);
  static LocallyConstantFn indicator(const Coset& c, Complex value = 1.0);

  unsigned prime() const noexcept { return p_; }
  std::size_t dimension() const noexcept { return n_; }
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  bool is_zero() const noexcept { return pieces_.empty(); }

  Complex evaluate(const Vector& x) const;
  /// sup |value|.
  double sup_norm() const;
  /// Smallest R with supp ⊆ B_R (requires a nonzero function).
  long support_radius() const;
  /// Largest r such that the function is constant on every coset of radius p^r.
  long resolution() const;

  LocallyConstantFn translated(const Vector& a) const;  // x -> phi(x - a)
  LocallyConstantFn reflected() const;                  // x -> phi(-x)
  LocallyConstantFn scaled(Complex c) const;
  LocallyConstantFn conj() const;

  friend LocallyConstantFn operator+(const LocallyConstantFn& a, const LocallyConstantFn& b);
  friend LocallyConstantFn operator-(const LocallyConstantFn& a, const LocallyConstantFn& b);

 private:
  LocallyConstantFn(unsigned p, std::size_t n, std::vector<Piece> pieces, bool canonicalize);
  void canonicalize();

  unsigned p_;
  std::size_t n_;
  std::vector<Piece> pieces_;
};

Complex integrate(const LocallyConstantFn& g);

/// ∫_c chi(-x·xi) d^n xi in closed form.
Complex fourier_coset_indicator(const Coset& c, const Vector& x);

/// (F phi)(xi) = ∫ chi(xi·x) phi(x) d^n x, again a test function.
LocallyConstantFn fourier(const LocallyConstantFn& phi);
LocallyConstantFn inverse_fourier(const LocallyConstantFn& phi);

LocallyConstantFn convolve(const LocallyConstantFn& a, const LocallyConstantFn& b);
LocallyConstantFn multiply(const LocallyConstantFn& a, const LocallyConstantFn& b);

/// ∫ a conj(b).
Complex inner_product(const LocallyConstantFn& a, const LocallyConstantFn& b);

}  // namespace padicheat
