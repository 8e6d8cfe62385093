#include "padicheat/heat_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace padicheat {

namespace {

Weight heat(double t) { return {WeightKind::Heat, t}; }

double volume(const SpectralEngine& e, long r) {
  return std::pow(static_cast<double>(e.prime()), static_cast<double>(r * static_cast<long>(e.dimension())));
}

// p^{rn} I(x; J; w) with the inner cutoff tuned so the scaled error stays below eps.
KernelValue scaled_integral(const SpectralEngine& e, const Vector& x, long J, const Weight& w, long r, double eps) {
  const double scale = volume(e, r);
  const long L = e.choose_inner_cutoff(w, eps / scale);
  const auto res = e.integrate(x, J, w, L, 0);
  return {scale * res.value, scale * res.err()};
}

void check_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("t must be positive and finite");
}

}  // namespace

std::shared_ptr<const SpectralEngine> make_engine(const SymbolParams& params, unsigned depth) {
  auto cert = certify_elliptic(params.polynomial());
  if (!cert.certified())
    throw std::invalid_argument("polynomial " + params.polynomial().str() + " is " + to_string(cert.status));
  return std::make_shared<const SpectralEngine>(params, std::move(cert), depth);
}

KernelJob KernelJob::make(std::shared_ptr<const SpectralEngine> engine, double t, double target_eps) {
  check_time(t);
  if (!(target_eps > 0.0)) throw std::invalid_argument("target_eps must be positive");
  KernelJob job;
  job.t = t;
  job.target_eps = target_eps;
  job.L = engine->choose_inner_cutoff(heat(t), target_eps / 2);
  job.U = engine->choose_outer_cutoff(heat(t), target_eps / 2);
  job.m = engine->table().depth();
  job.engine = std::move(engine);
  return job;
}

KernelValue kernel_value(const KernelJob& job, const Vector& x) {
  const auto res = job.engine->integrate(x, std::nullopt, heat(job.t), job.L, job.U);
  return {res.value, res.err()};
}

KernelValue kernel_total_mass(const KernelJob& job) {
  const auto& e = *job.engine;
  const double half = job.target_eps / 2;
  // the mass outside B_R is at most 1 - e^{-t C1^beta p^{-R d beta}}
  long R = -60;
  double gap = 1.0;
  for (; R < 4000; ++R) {
    gap = -std::expm1(-job.t * e.c1_beta() * std::pow(static_cast<double>(e.prime()), -static_cast<double>(R) * e.homogeneity()));
    if (gap <= half) break;
  }
  auto v = scaled_integral(e, Vector(e.prime(), e.dimension()), -R, heat(job.t), R, half);
  v.err += gap;
  return v;
}

KernelValue coset_mass(const KernelJob& job, const Coset& c) {
  return scaled_integral(*job.engine, c.center(), -c.radius_exp(), heat(job.t), c.radius_exp(), job.target_eps / 2);
}

KernelValue complement_mass(const KernelJob& job, long r) {
  const auto& e = *job.engine;
  return scaled_integral(e, Vector(e.prime(), e.dimension()), -r, {WeightKind::HeatDeficit, job.t}, r,
                         job.target_eps / 2);
}

double decay_check(const KernelJob& job, const Vector& x) {
  if (x.is_zero()) throw std::invalid_argument("decay_check needs x != 0");
  const auto& e = *job.engine;
  const double k = static_cast<double>(x.norm_exponent());
  const double factor = std::pow(static_cast<double>(e.prime()), k * (e.homogeneity() + static_cast<double>(e.dimension())));
  // Z itself is O(t ||x||^{-d beta - n}), so the cutoff must be relative to that scale
  const long L = std::max(job.L, e.choose_inner_cutoff(heat(job.t), 1e-12 * job.t / factor));
  const auto res = e.integrate(x, std::nullopt, heat(job.t), L, job.U);
  return res.value * factor / job.t;
}

KernelValue levy_mass_outside(const KernelJob& job, long r) {
  const auto& e = *job.engine;
  return scaled_integral(e, Vector(e.prime(), e.dimension()), -r, {WeightKind::LevyQuotient, job.t}, r,
                         job.target_eps / 2);
}

KernelValue levy_mass_limit(const SpectralEngine& engine, long r, double eps) {
  return scaled_integral(engine, Vector(engine.prime(), engine.dimension()), -r, {WeightKind::Symbol, 0.0}, r, eps);
}

ChapmanResult chapman_residual(const KernelJob& job, double t, double s, const Vector& x) {
  check_time(t);
  check_time(s);
  const auto& e = *job.engine;
  const KernelJob jt = job.at_time(t), js = job.at_time(s), jts = job.at_time(t + s);
  ChapmanResult out;

  const auto direct = kernel_value(jts, x);
  out.direct = direct.value;

  // Z_s restricted to spheres <= U is constant on the cells of its tabulation
  SpectralSeries zs{{{1.0, Vector(e.prime(), e.dimension()), js.U}}, heat(s), job.target_eps / 4};
  const double zs_tail = e.outer_tail_bound(heat(s), js.U);

  // outside B_R: ∫ Z_s(y) Z_t(x-y) dy <= Z_t(0) * (1 - mass_s(B_R))
  const auto zt0 = kernel_value(jt, Vector(e.prime(), e.dimension()));
  long R = x.is_zero() ? 0 : std::max(0L, x.norm_exponent());
  double far = 0.0;
  for (;; ++R) {
    const auto comp = complement_mass(js, R);
    far = (zt0.value + zt0.err) * (std::max(comp.value, 0.0) + comp.err);
    if (far <= job.target_eps || R > 400) break;
  }
  out.cap_radius = R;

  const auto cells = tabulate_series(e, zs, R);
  out.cells = cells.size();
  CompensatedSum conv;
  double budget = direct.err + zs_tail + far;
  for (const auto& cell : cells) {
    const auto mass = coset_mass(jt, Coset(x - cell.cell.center(), cell.cell.radius_exp()));
    const double v = cell.value.real();
    conv.add(v * mass.value);
    budget += std::abs(v) * mass.err + cell.err * (std::abs(mass.value) + mass.err);
  }
  out.convolved = conv.value();
  out.residual = std::abs(out.direct - out.convolved);
  out.err_budget = budget;
  return out;
}

LevyDensityEstimate levy_density_estimate(const SpectralEngine& engine, const Vector& y,
                                          const std::vector<double>& t_sequence, double eps) {
  if (y.is_zero()) throw std::invalid_argument("levy_density_estimate needs y != 0");
  if (t_sequence.size() < 2) throw std::invalid_argument("need at least two times");
  for (std::size_t i = 0; i < t_sequence.size(); ++i) {
    check_time(t_sequence[i]);
    if (i > 0 && !(t_sequence[i] < t_sequence[i - 1]))
      throw std::invalid_argument("t_sequence must be strictly decreasing");
  }
  LevyDensityEstimate est;
  for (double t : t_sequence) {
    const Weight w{WeightKind::LevyQuotient, t};
    // for y != 0, Z_t(y)/t = -∫ chi(-y·xi) (1 - e^{-t sigma})/t d xi
    const auto r = engine.integrate(y, std::nullopt, w, engine.choose_inner_cutoff(w, eps), 0);
    est.times.push_back(t);
    est.values.push_back(-r.value);
    est.errs.push_back(r.err());
  }
  for (std::size_t i = 1; i < est.values.size(); ++i) est.cauchy.push_back(std::abs(est.values[i] - est.values[i - 1]));
  const std::size_t b = est.values.size() - 1, a = b - 1;
  est.extrapolated = (est.times[a] * est.values[b] - est.times[b] * est.values[a]) / (est.times[a] - est.times[b]);
  const Weight sym{WeightKind::Symbol, 0.0};
  const auto lim = engine.integrate(y, std::nullopt, sym, engine.choose_inner_cutoff(sym, eps), 0);
  est.direct_limit = {-lim.value, lim.err()};
  return est;
}

}  // namespace padicheat
