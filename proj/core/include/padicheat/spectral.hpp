#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "padicheat/coset.hpp"
#include "padicheat/symbol.hpp"

namespace padicheat {

/// Radial profiles W(sigma) integrated against chi(-x·xi) with sigma = |f(xi)|^beta.
enum class WeightKind {
  Heat,           // e^{-t sigma}
  HeatDeficit,    // 1 - e^{-t sigma}
  Symbol,         // sigma
  HeatGenerator,  // sigma e^{-t sigma}
  LevyQuotient,   // (1 - e^{-t sigma}) / t
};

struct Weight {
  WeightKind kind = WeightKind::Heat;
  double t = 0.0;

  double operator()(double sigma) const;
  double at_zero() const;
  /// W(sigma) - W(0), evaluated without cancellation.
  double centered(double sigma) const;
  /// sup_{0 <= s <= sigma_max} |W(s) - W(0)|.
  double deviation(double sigma_max) const;
  /// Whether W decays fast enough for an unbounded domain of integration.
  bool integrable() const { return kind == WeightKind::Heat || kind == WeightKind::HeatGenerator; }
};

/// Unit-sphere residues mod p^m grouped by the level ord f(c).
class UnitSphereTable {
 public:
  UnitSphereTable(const EllipticPolynomial& f, unsigned depth);

  unsigned depth() const noexcept { return depth_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  std::size_t size() const noexcept { return levels_.size(); }
  unsigned max_level() const noexcept { return static_cast<unsigned>(counts_.size()) - 1; }
  unsigned min_level() const noexcept { return min_level_; }
  /// Number of classes per level (index = level).
  const std::vector<double>& counts() const noexcept { return counts_; }

  /// Per-level sums of cos(2 pi p^s u·c / p^m) over the classes c, for u a
  /// residue vector mod p^m and 0 <= s < m.
  std::vector<double> phase_sums(std::span<const std::uint64_t> u, unsigned s) const;

 private:
  unsigned p_;
  std::size_t n_;
  unsigned depth_;
  std::uint64_t modulus_;
  std::vector<std::uint64_t> residues_;  // flattened, n per class
  std::vector<unsigned> levels_;
  std::vector<double> counts_;
  unsigned min_level_ = 0;
};

struct SpectralResult {
  double value = 0.0;
  double inner_err = 0.0;
  double outer_err = 0.0;
  double float_err = 0.0;
  long inner_cutoff = 0;  // the inner ball is B_{-L}
  long top_sphere = 0;    // last sphere summed
  bool centered = false;

  double err() const { return inner_err + outer_err + float_err; }
};

/**
 * Evaluates I(x; J; W) = ∫_{||xi|| <= p^J} chi(-x·xi) W(|f(xi)|^beta) d^n xi.
 *
 * Sphere j is rescaled to the unit sphere, where |f| is constant on residue
 * classes mod p^m (m >= certified depth). For ||x|| = p^k the character
 * integral over a class vanishes once j + k > m, so for x != 0 the sum is
 * finite. The ball B_{-L} is replaced by W(0) and its deviation bounded.
 */
class SpectralEngine {
 public:
  SpectralEngine(SymbolParams params, EllipticityCertificate cert, unsigned depth = 0);

  const SymbolParams& params() const noexcept { return params_; }
  const EllipticityCertificate& certificate() const noexcept { return cert_; }
  const UnitSphereTable& table() const noexcept { return table_; }
  unsigned prime() const noexcept { return params_.prime(); }
  std::size_t dimension() const noexcept { return params_.dimension(); }
  double c0_beta() const noexcept { return c0_beta_; }
  double c1_beta() const noexcept { return c1_beta_; }
  /// d * beta.
  double homogeneity() const noexcept { return dbeta_; }

  /// sigma on sphere j for classes at the given level: p^{(jd - level) beta}.
  double sigma(long j, unsigned level) const;

  /// J = std::nullopt integrates over all of Q_p^n (needs an integrable weight
  /// when x = 0).
  SpectralResult integrate(const Vector& x, std::optional<long> J, const Weight& w, long L, long U) const;

  /// Contribution of the whole sphere j (exactly 0 when p^j ||x|| > p^m).
  double sphere_term(const Vector& x, long j, const Weight& w) const;

  double inner_bound(const Weight& w, long L) const;
  double outer_tail_bound(const Weight& w, long U) const;
  long choose_inner_cutoff(const Weight& w, double eps) const;
  long choose_outer_cutoff(const Weight& w, double eps) const;

 private:
  struct Decomposed {
    bool zero = true;
    long k = 0;  // ||x|| = p^k
    std::vector<std::uint64_t> residues;
  };
  Decomposed decompose(const Vector& x) const;
  std::vector<double> level_factors(const Decomposed& x, long j) const;

  SymbolParams params_;
  EllipticityCertificate cert_;
  UnitSphereTable table_;
  double c0_beta_;
  double c1_beta_;
  double dbeta_;
};

/// Sum with Neumaier compensation.
class CompensatedSum {
 public:
  void add(double v);
  double value() const { return sum_ + comp_; }
  double abs_total() const { return abs_; }
  std::size_t count() const { return count_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double abs_ = 0.0;
  std::size_t count_ = 0;
};

/// sum_i coeff_i * I(y - shift_i; J_i; W), a function of y.
struct SeriesTerm {
  std::complex<double> coeff;
  Vector shift;
  long J;
};

struct SpectralSeries {
  std::vector<SeriesTerm> terms;
  Weight weight;
  double eps = 1e-10;  // inner-ball accuracy per term
};

struct SeriesValue {
  std::complex<double> value;
  double err = 0.0;
};

struct TabulatedCell {
  Coset cell;
  std::complex<double> value;
  double err = 0.0;
};

SeriesValue evaluate_series(const SpectralEngine& engine, const SpectralSeries& series, const Vector& y);

/// Splits B_R into cosets on each of which the series is exactly constant
/// (up to the inner-ball approximation) and evaluates it there. A term is
/// constant on c + B_rho when rho <= -J, or, if 0 is not in c - shift, when
/// rho <= max(-J, k - m) with ||c - shift|| = p^k, since spheres beyond m - k
/// contribute nothing.
std::vector<TabulatedCell> tabulate_series(const SpectralEngine& engine, const SpectralSeries& series, long R);

}  // namespace padicheat
