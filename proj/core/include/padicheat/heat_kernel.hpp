#pragma once

#include <memory>
#include <vector>

#include "padicheat/coset.hpp"
#include "padicheat/spectral.hpp"

namespace padicheat {

/// A real number together with a rigorous bound on |computed - true|.
struct KernelValue {
  double value = 0.0;
  double err = 0.0;
};

/// Everything needed to evaluate Z(., t): the engine (symbol, certificate,
/// residue table), the time, and cutoffs derived from target_eps.
struct KernelJob {
  std::shared_ptr<const SpectralEngine> engine;
  double t = 1.0;
  double target_eps = 1e-8;
  long L = 0;  // inner ball B_{-L}
  long U = 0;  // last sphere for x = 0
  unsigned m = 0;

  /// Picks L and U so each a-priori tail bound is at most target_eps / 2.
  static KernelJob make(std::shared_ptr<const SpectralEngine> engine, double t, double target_eps = 1e-8);
  KernelJob at_time(double t) const { return make(engine, t, target_eps); }
  unsigned prime() const { return engine->prime(); }
  std::size_t dimension() const { return engine->dimension(); }
};

std::shared_ptr<const SpectralEngine> make_engine(const SymbolParams& params, unsigned depth = 0);

/// Z(x, t) = ∫ chi(-x·xi) e^{-t |f(xi)|^beta} d^n xi.
KernelValue kernel_value(const KernelJob& job, const Vector& x);
/// ∫ Z_t over a ball large enough that the missing mass is below target_eps / 2.
KernelValue kernel_total_mass(const KernelJob& job);
/// ∫_c Z_t(y) d^n y, computed on the Fourier side.
KernelValue coset_mass(const KernelJob& job, const Coset& c);
/// 1 - ∫_{B_r} Z_t, computed without cancellation.
KernelValue complement_mass(const KernelJob& job, long r);
/// Z(x,t) ||x||^{d beta + n} / t for x != 0.
double decay_check(const KernelJob& job, const Vector& x);
/// (1/t) ∫_{||y|| > p^r} Z_t(y) d^n y.
KernelValue levy_mass_outside(const KernelJob& job, long r);
/// lim_{t->0} of levy_mass_outside: p^{rn} ∫_{B_{-r}} |f|^beta.
KernelValue levy_mass_limit(const SpectralEngine& engine, long r, double eps = 1e-12);

struct ChapmanResult {
  double residual = 0.0;
  double err_budget = 0.0;
  double direct = 0.0;     // Z_{t+s}(x)
  double convolved = 0.0;  // (Z_t * Z_s)(x) in physical space
  long cap_radius = 0;
  std::size_t cells = 0;
};

/// |Z_{t+s}(x) - (Z_t * Z_s)(x)| where the convolution is a physical-space
/// sum of a tabulated Z_s against exact coset masses of Z_t.
ChapmanResult chapman_residual(const KernelJob& job, double t, double s, const Vector& x);

struct LevyDensityEstimate {
  std::vector<double> times;
  std::vector<double> values;  // Z_t(y) / t
  std::vector<double> errs;
  std::vector<double> cauchy;  // |values[i+1] - values[i]|
  double extrapolated = 0.0;   // Richardson on the last two times
  KernelValue direct_limit;    // -∫ chi(-y·xi) |f(xi)|^beta d^n xi
};

/// t_sequence must be strictly decreasing; y != 0.
LevyDensityEstimate levy_density_estimate(const SpectralEngine& engine, const Vector& y,
                                          const std::vector<double>& t_sequence, double eps = 1e-12);

}  // namespace padicheat
