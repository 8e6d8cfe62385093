#include "padicheat/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace padicheat {

namespace {

double volume(const SpectralEngine& e, long r) {
  return std::pow(static_cast<double>(e.prime()), static_cast<double>(r * static_cast<long>(e.dimension())));
}

// sum_i v_i p^{r_i n} I(x - a_i; -r_i; w)
ComplexValue piece_sum(const SpectralEngine& e, const LocallyConstantFn& u, const Vector& x, const Weight& w,
                       double eps) {
  ComplexValue out;
  for (const auto& pc : u.pieces()) {
    const long r = pc.coset.radius_exp();
    const double coeff = std::abs(pc.value) * volume(e, r);
    if (coeff == 0.0) continue;
    const long L = e.choose_inner_cutoff(w, eps / coeff);
    const auto res = e.integrate(x - pc.coset.center(), -r, w, L, 0);
    out.value += pc.value * volume(e, r) * res.value;
    out.err += coeff * res.err();
  }
  return out;
}

}  // namespace

SemigroupOperator::SemigroupOperator(std::shared_ptr<const SpectralEngine> engine, double eps)
    : engine_(std::move(engine)), eps_(eps) {
  if (!engine_) throw std::invalid_argument("null engine");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
}

ComplexValue SemigroupOperator::apply_Tt(const LocallyConstantFn& u, double t, const Vector& x) const {
  if (t < 0.0) throw std::invalid_argument("t must be non-negative");
  if (t == 0.0) return {u.evaluate(x), 0.0};
  return piece_sum(*engine_, u, x, {WeightKind::Heat, t}, eps_);
}

ComplexValue SemigroupOperator::apply_operator(const LocallyConstantFn& phi, const Vector& x) const {
  return piece_sum(*engine_, phi, x, {WeightKind::Symbol, 0.0}, eps_);
}

ComplexValue SemigroupOperator::operator_on_solution(const LocallyConstantFn& u0, double t, const Vector& x) const {
  if (t < 0.0) throw std::invalid_argument("t must be non-negative");
  if (t == 0.0) return apply_operator(u0, x);
  return piece_sum(*engine_, u0, x, {WeightKind::HeatGenerator, t}, eps_);
}

CauchyResidual SemigroupOperator::cauchy_residual(const LocallyConstantFn& u0, double t, const Vector& x,
                                                  double h) const {
  if (!(h > 0.0) || !(t > h)) throw std::invalid_argument("cauchy_residual needs t > h > 0");
  const auto up = apply_Tt(u0, t + h, x);
  const auto um = apply_Tt(u0, t - h, x);
  const auto gen = operator_on_solution(u0, t, x);
  CauchyResidual out;
  out.time_derivative = (up.value - um.value) / (2.0 * h);
  out.generator = gen.value;
  out.residual = std::abs(out.time_derivative + out.generator);
  out.err = (up.err + um.err) / (2.0 * h) + gen.err;
  return out;
}

ComplexValue SemigroupOperator::apply_twice(const LocallyConstantFn& u, double s, double t, const Vector& x) const {
  if (!(s > 0.0) || !(t > 0.0)) throw std::invalid_argument("apply_twice needs s, t > 0");
  const auto& e = *engine_;
  if (u.is_zero()) return {};
  SpectralSeries series;
  series.weight = {WeightKind::Heat, s};
  series.eps = eps_;
  for (const auto& pc : u.pieces()) {
    const long r = pc.coset.radius_exp();
    series.terms.push_back({pc.value * volume(e, r), pc.coset.center(), -r});
  }
  const auto jt = job(t);
  const double sup = u.sup_norm();
  long R = std::max(0L, u.support_radius());
  if (!x.is_zero()) R = std::max(R, x.norm_exponent());
  // beyond B_R: |∫ Z_t(x - y) T_s u(y) dy| <= sup|u| (1 - mass_t(B_R)) since ||x|| <= p^R
  double far = 0.0;
  for (;; ++R) {
    const auto comp = complement_mass(jt, R);
    far = sup * (std::max(comp.value, 0.0) + comp.err);
    if (far <= eps_ || R > 400) break;
  }
  ComplexValue out;
  out.err = far;
  for (const auto& cell : tabulate_series(e, series, R)) {
    const auto mass = coset_mass(jt, Coset(x - cell.cell.center(), cell.cell.radius_exp()));
    out.value += cell.value * mass.value;
    out.err += std::abs(cell.value) * mass.err + cell.err * (std::abs(mass.value) + mass.err);
  }
  return out;
}

KernelValue SemigroupOperator::transition_probability(const TransitionQuery& q) const {
  if (!pairwise_disjoint(q.E)) throw std::invalid_argument("transition_probability: E pieces overlap");
  if (q.t < 0.0) throw std::invalid_argument("t must be non-negative");
  if (q.t == 0.0) {
    for (const auto& c : q.E)
      if (c.contains(q.x)) return {1.0, 0.0};
    return {0.0, 0.0};
  }
  const auto jt = job(q.t);
  KernelValue out;
  for (const auto& c : q.E) {
    const auto m = coset_mass(jt, Coset(c.center() - q.x, c.radius_exp()));
    out.value += m.value;
    out.err += m.err;
  }
  return out;
}

std::vector<double> SemigroupOperator::condition_L_profile(const std::vector<Coset>& E, double s,
                                                           const std::vector<long>& radii,
                                                           const ProfileOptions& opts) const {
  if (!(s > 0.0) || !(opts.t_min > 0.0) || opts.t_min > s) throw std::invalid_argument("bad t range");
  std::vector<double> times;
  const std::size_t np = std::max<std::size_t>(opts.t_points, 2);
  for (std::size_t i = 0; i < np; ++i)
    times.push_back(opts.t_min * std::pow(s / opts.t_min, static_cast<double>(i) / static_cast<double>(np - 1)));
  std::vector<double> out;
  for (long R : radii) {
    double worst = 0.0;
    for (const auto& x : sphere_probes(engine_->prime(), engine_->dimension(), R, opts.probes))
      for (double t : times) worst = std::max(worst, transition_probability({x, E, t}).value);
    out.push_back(worst);
  }
  return out;
}

KernelValue SemigroupOperator::stochastic_continuity_gap(long r, double t) const {
  if (t < 0.0) throw std::invalid_argument("t must be non-negative");
  if (t == 0.0) return {0.0, 0.0};
  return complement_mass(job(t), r);
}

ComplexValue SemigroupOperator::beta_form(const LocallyConstantFn& g, const LocallyConstantFn& h) const {
  const auto& e = *engine_;
  const Weight w{WeightKind::Symbol, 0.0};
  ComplexValue out;
  for (const auto& pg : g.pieces())
    for (const auto& ph : h.pieces()) {
      const long r = pg.coset.radius_exp(), s = ph.coset.radius_exp();
      const Complex coeff = pg.value * std::conj(ph.value) * volume(e, r) * volume(e, s);
      if (std::abs(coeff) == 0.0) continue;
      const long L = e.choose_inner_cutoff(w, eps_ / std::abs(coeff));
      const auto res = e.integrate(ph.coset.center() - pg.coset.center(), std::min(-r, -s), w, L, 0);
      out.value += coeff * res.value;
      out.err += std::abs(coeff) * res.err();
    }
  return out;
}

std::vector<Vector> probe_grid(unsigned p, std::size_t n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vector> out;
  if (count == 0) return out;
  out.emplace_back(p, n);
  std::uniform_int_distribution<std::int64_t> digit(0, static_cast<std::int64_t>(p) - 1);
  for (std::size_t i = 1; i < count; ++i) {
    const long k = -3 + static_cast<long>((i - 1) % 7);
    std::vector<std::int64_t> u(n);
    do {
      for (auto& c : u) {
        std::int64_t v = 0, place = 1;
        for (int dgt = 0; dgt < 6; ++dgt, place *= p) v += digit(rng) * place;
        c = v;
      }
    } while (std::all_of(u.begin(), u.end(), [&](std::int64_t c) { return c % static_cast<std::int64_t>(p) == 0; }));
    out.push_back(Vector::from_integers(p, u, -k));
  }
  return out;
}

std::vector<Vector> sphere_probes(unsigned p, std::size_t n, long R, std::size_t count) {
  std::vector<Vector> out;
  const auto P = static_cast<std::int64_t>(p);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<std::int64_t> u(n, 0);
    u[0] = 1 + static_cast<std::int64_t>(i) % (P - 1 > 0 ? P - 1 : 1) + P * static_cast<std::int64_t>(i);
    for (std::size_t j = 1; j < n; ++j) u[j] = static_cast<std::int64_t>((i * (j + 2)) % p) + P * static_cast<std::int64_t>(i);
    out.push_back(Vector::from_integers(p, u, -R));
  }
  return out;
}

double conservativity_tail_bound(const SpectralEngine& e, double t, long r) {
  const double p = e.prime();
  const double n = static_cast<double>(e.dimension());
  return t * e.c1_beta() * (1.0 - std::pow(p, -n)) * std::pow(p, -static_cast<double>(r) * e.homogeneity()) /
         (1.0 - std::pow(p, -n - e.homogeneity()));
}

}  // namespace padicheat
