#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "padicheat/heat_kernel.hpp"
#include "padicheat/locally_constant.hpp"

namespace padicheat {

struct ComplexValue {
  Complex value = 0.0;
  double err = 0.0;
};

struct TransitionQuery {
  Vector x;
  std::vector<Coset> E;  // pairwise disjoint
  double t = 0.0;
};

struct CauchyResidual {
  double residual = 0.0;
  double err = 0.0;
  Complex time_derivative = 0.0;  // central difference
  Complex generator = 0.0;        // f(∂,β) u(., t) at x
};

struct ProfileOptions {
  double t_min = 1e-3;
  std::size_t t_points = 13;  // log-spaced in [t_min, s]
  std::size_t probes = 4;     // points per radius
};

/// T_t u = Z_t * u and the objects built from it. Every value carries the
/// accumulated kernel error bounds; eps is the accuracy asked of each
/// Fourier-side integral.
class SemigroupOperator {
 public:
  explicit SemigroupOperator(std::shared_ptr<const SpectralEngine> engine, double eps = 1e-10);

  const SpectralEngine& engine() const noexcept { return *engine_; }
  std::shared_ptr<const SpectralEngine> engine_ptr() const noexcept { return engine_; }
  double eps() const noexcept { return eps_; }
  KernelJob job(double t) const { return KernelJob::make(engine_, t, eps_); }

  ComplexValue apply_Tt(const LocallyConstantFn& u, double t, const Vector& x) const;
  ComplexValue solve_cauchy(const LocallyConstantFn& u0, double t, const Vector& x) const { return apply_Tt(u0, t, x); }
  /// (f(∂,β) phi)(x).
  ComplexValue apply_operator(const LocallyConstantFn& phi, const Vector& x) const;
  /// f(∂,β) applied to u(., t) = T_t u0, evaluated at x (computed on the Fourier side).
  ComplexValue operator_on_solution(const LocallyConstantFn& u0, double t, const Vector& x) const;
  CauchyResidual cauchy_residual(const LocallyConstantFn& u0, double t, const Vector& x, double h) const;
  /// T_t (T_s u) (x) with T_s u tabulated on cells where it is constant.
  ComplexValue apply_twice(const LocallyConstantFn& u, double s, double t, const Vector& x) const;

  KernelValue transition_probability(const TransitionQuery& q) const;
  /// For each radius R: max over a t-grid in [t_min, s] and probe points
  /// with ||x|| = p^R of p_t(x, E).
  std::vector<double> condition_L_profile(const std::vector<Coset>& E, double s, const std::vector<long>& radii,
                                          const ProfileOptions& opts = {}) const;
  /// 1 - p_t(x, B_r(x)), independent of x.
  KernelValue stochastic_continuity_gap(long r, double t) const;
  /// ∫ |f(xi)|^beta (Fg)(xi) conj((Fh)(xi)) d^n xi.
  ComplexValue beta_form(const LocallyConstantFn& g, const LocallyConstantFn& h) const;

 private:
  std::shared_ptr<const SpectralEngine> engine_;
  double eps_;
};

/// 0 followed by points on the spheres ||x|| = p^k, k cycling through -3..3,
/// with random unit digits (6 of them).
std::vector<Vector> probe_grid(unsigned p, std::size_t n, std::size_t count, std::uint64_t seed);

/// Points with ||x|| = p^R.
std::vector<Vector> sphere_probes(unsigned p, std::size_t n, long R, std::size_t count);

/// 1 - p^{rn} ∫_{B_{-r}} e^{-t sigma} <= t C1^beta (1 - p^{-n}) p^{-r d beta} / (1 - p^{-n - d beta}).
double conservativity_tail_bound(const SpectralEngine& engine, double t, long r);

}  // namespace padicheat
