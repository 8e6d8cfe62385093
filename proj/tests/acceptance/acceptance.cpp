// One line per acceptance criterion: [PASS]/[FAIL] id name | measured values.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <padicheat/negdef.hpp>
#include <padicheat/parallel.hpp>
#include <padicheat/process.hpp>
#include <padicheat/semigroup.hpp>

#include "cases.hpp"
#include "oracles.hpp"

using namespace padicheat;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (notes.size() < 6 && std::find(notes.begin(), notes.end(), what) == notes.end()) notes.push_back(what);
    }
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::shared_ptr<const SpectralEngine> engine_of(const SymbolParams& p) { return make_engine(p); }

LocallyConstantFn bump(unsigned p, std::size_t n) {
  std::vector<std::int64_t> c(n, 1);
  return LocallyConstantFn::indicator(Coset::ball(p, n, 0), 0.5) +
         LocallyConstantFn::indicator(Coset(Vector::from_integers(p, c), -1), 0.25) +
         LocallyConstantFn::indicator(Coset(Vector::from_integers(p, c, -1), 0), 1.0);
}

// unit-sphere class where |f| = 1, so F^{-1} of its indicator is an eigenfunction with eigenvalue 1
Coset unit_level_class(const SymbolParams& params) {
  std::vector<std::int64_t> c(params.dimension(), 0);
  c[0] = 1;
  return Coset(Vector::from_integers(params.prime(), c), -static_cast<long>(params.degree()));
}

Vector sphere_point(unsigned p, std::size_t n, long k, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> digit(0, static_cast<std::int64_t>(p) * p * p - 1);
  std::vector<std::int64_t> v(n);
  for (auto& x : v) x = digit(rng);
  v[rng() % n] = 1 + static_cast<std::int64_t>(p) * digit(rng);  // a unit coordinate
  return Vector::from_integers(p, v, k);
}

// ----------------------------------------------------------------------------

Outcome certification() {
  Outcome o;
  // exhaustive residue search for f = a^2 + 3 b^2 on unit classes mod 3^m
  long worst = 0;
  unsigned depth = 0;
  for (unsigned m = 1; m <= 4 && depth == 0; ++m) {
    long mod = 1;
    for (unsigned i = 0; i < m; ++i) mod *= 3;
    bool determined = true;
    for (long a = 0; a < mod; ++a)
      for (long b = 0; b < mod; ++b) {
        if (a % 3 == 0 && b % 3 == 0) continue;
        const long ord = oracle::ord(BigInt(a * a + 3 * b * b), 3);
        if (ord >= static_cast<long>(m)) determined = false;
        else worst = std::max(worst, ord);
      }
    if (determined) depth = m;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto A = certify_elliptic(cases::poly_A());
  const double tA = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(A.certified(), "A not certified");
  o.require(A.c0 == rational_power(3, -worst) && A.c1 == 1, "A constants");
  o.require(A.depth == depth, "A depth");
  o.require(tA < 1.0, "A runtime");

  const auto t1 = std::chrono::steady_clock::now();
  const auto C = certify_elliptic(cases::poly_C());
  const double tC = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
  o.require(C.status == CertificateStatus::NotElliptic && C.witness.has_value(), "C not refuted");
  unsigned digits = 0;
  if (C.witness) {
    const auto& w = *C.witness;
    digits = w.digits;
    const BigInt mod = ipow(5, w.digits);
    const BigInt& x = w.root[0];
    const BigInt& y = w.root[1];
    o.require(floor_mod(x * x + y * y, mod) == 0, "witness is not a root");
    o.require(x % 5 != 0 || y % 5 != 0, "witness not on the unit sphere");
  }
  o.require(digits >= 10, "witness too short");
  o.require(tC < 1.0, "C runtime");
  o.detail << "A: C0=" << rational_to_string(A.c0) << " C1=" << rational_to_string(A.c1) << " depth=" << A.depth
           << " (oracle C0=3^-" << worst << " depth=" << depth << ") " << fmt(tA) << "s; C: "
           << to_string(C.status) << " witness digits=" << digits << " " << fmt(tC) << "s";
  return o;
}

Outcome mass() {
  Outcome o;
  double worst = 0.0, slowest = 0.0, physical = 0.0, deficit = 0.0;
  for (const auto& c : cases::elliptic()) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto e = engine_of(c.params);
    for (double t : {0.1, 1.0, 10.0}) {
      const auto m = kernel_total_mass(KernelJob::make(e, t, 1e-10));
      const double dev = std::abs(m.value - 1.0);
      o.require(dev <= m.err + 1e-8, c.name + " t=" + fmt(t) + " |mass-1|=" + fmt(dev));
      worst = std::max(worst, dev);
    }
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());

    // physical side: tabulated kernel values times cell volumes over B_R against the Fourier-side ball mass.
    // Truncating Z to spheres <= U leaves its integral over B_R unchanged when U >= -R.
    const long R = c.params.prime() == 2 ? 6 : 3;
    for (double t : {0.1, 1.0}) {
      const auto job = KernelJob::make(e, t, 1e-10);
      const SpectralSeries z{{{1.0, Vector(e->prime(), e->dimension()), job.U}}, {WeightKind::Heat, t}, 1e-12};
      double sum = 0.0, err = 0.0;
      for (const auto& cell : tabulate_series(*e, z, R)) {
        const double vol = cell.cell.volume_value();
        sum += cell.value.real() * vol;
        err += cell.err * vol;
      }
      const auto ball = coset_mass(job, Coset::ball(e->prime(), e->dimension(), R));
      const double diff = std::abs(sum - ball.value);
      o.require(diff <= err + ball.err + 1e-12, c.name + " physical mass of B_R differs by " + fmt(diff));
      physical = std::max(physical, diff);
      deficit = std::max(deficit, 1.0 - sum);
    }
  }
  o.require(slowest < 60.0, "runtime");
  o.detail << "max |mass-1|=" << fmt(worst) << " slowest case " << fmt(slowest)
           << "s; physical-space sum over B_R vs Fourier ball mass: max diff " << fmt(physical)
           << " (largest mass outside B_R seen: " << fmt(deficit) << ")";
  return o;
}

Outcome positivity() {
  Outcome o;
  double worst = 1e300;
  std::size_t probes = 0;
  for (const auto& c : cases::elliptic()) {
    const auto e = engine_of(c.params);
    const auto grid = probe_grid(c.params.prime(), c.params.dimension(), 100, 7);
    const std::vector<double> ts{0.1, 1.0, 10.0};
    std::vector<KernelJob> jobs;
    for (double t : ts) jobs.push_back(KernelJob::make(e, t, 1e-10));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto z = kernel_value(jobs[i % jobs.size()], grid[i]);
      o.require(z.value >= -z.err, c.name + " negative at " + grid[i].str());
      worst = std::min(worst, z.value + z.err);
      ++probes;
    }
  }
  o.detail << probes << " probes, min(value + err)=" << fmt(worst);
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> kd(-3, 8);
  std::uniform_real_distribution<double> lt(-2.0, 1.5);
  double worst_rel = 0.0, worst_budget = 0.0;
  std::size_t pairs = 0;
  for (const auto& [beta, alpha] : std::vector<std::pair<Rational, double>>{{Rational(1, 2), 0.5}, {1, 1.0}, {2, 2.0}}) {
    const auto e = engine_of(SymbolParams(cases::poly_B(), beta));
    for (int i = 0; i < 50; ++i) {
      const double t = std::pow(10.0, lt(rng));
      const auto job = KernelJob::make(e, t, 1e-12);
      const bool origin = i == 0;
      const long k = kd(rng);
      const Vector x = origin ? Vector(2, 1) : sphere_point(2, 1, -k, rng);
      const auto z = kernel_value(job, x);
      const double ref =
          origin ? oracle::radial_kernel_1d(2, alpha, t, std::nullopt) : oracle::radial_kernel_1d(2, alpha, t, k);
      const double diff = std::abs(z.value - ref);
      o.require(diff <= 1e-10 * std::abs(ref) + z.err, "beta=" + rational_to_string(beta) + " t=" + fmt(t));
      worst_rel = std::max(worst_rel, diff / std::max(std::abs(ref), 1e-300));
      worst_budget = std::max(worst_budget, diff / (1e-10 * std::abs(ref) + z.err));
      ++pairs;
    }
  }
  o.detail << pairs << " (x,t) pairs, max relative deviation " << fmt(worst_rel)
           << "; max deviation / (1e-10 |ref| + err)=" << fmt(worst_budget);
  return o;
}

Outcome chapman_kolmogorov() {
  Outcome o;
  double worst = -1e300;
  std::size_t triples = 0;
  for (const auto& c : cases::elliptic()) {
    const auto e = engine_of(c.params);
    std::mt19937_64 rng(11);
    const auto grid = probe_grid(c.params.prime(), c.params.dimension(), 20, 5);
    const std::vector<std::pair<double, double>> ts{{0.2, 0.3}, {0.5, 0.5}, {1.0, 0.25}, {0.1, 2.0}};
    for (std::size_t i = 0; i < 20; ++i) {
      const auto [t, s] = ts[i % ts.size()];
      const auto job = KernelJob::make(e, t + s, 1e-10);
      const auto r = chapman_residual(job, t, s, grid[i]);
      o.require(r.residual <= r.err_budget + 1e-6, c.name + " residual " + fmt(r.residual));
      worst = std::max(worst, r.residual - r.err_budget);
      ++triples;
    }
  }
  o.detail << triples << " triples, max(residual - err budget)=" << fmt(worst);
  return o;
}

Outcome decay() {
  Outcome o;
  double worst = 0.0;
  std::ostringstream info;
  std::mt19937_64 rng(13);
  for (const auto& c : cases::elliptic()) {
    const auto e = engine_of(c.params);
    const unsigned p = c.params.prime();
    const std::size_t n = c.params.dimension();
    for (double t : {0.1, 1.0, 10.0}) {
      const auto job = KernelJob::make(e, t);
      double lo = 1e300, hi = 0.0;
      for (long k = 1; k <= 8; ++k)
        for (int i = 0; i < 3; ++i) {
          const double r = decay_check(job, sphere_point(p, n, -k, rng));
          lo = std::min(lo, r);
          hi = std::max(hi, r);
        }
      const double spread = lo > 0 ? hi / lo : INFINITY;
      if (t <= 1.0) {
        o.require(spread <= 100.0, c.name + " t=" + fmt(t) + " max/min=" + fmt(spread));
        worst = std::max(worst, spread);
      } else {
        info << " " << c.name << ":" << fmt(spread);
      }
    }
  }
  o.detail << "t in {0.1, 1}: worst max/min=" << fmt(worst) << "; informational t=10:" << info.str();
  return o;
}

Outcome semigroup_laws() {
  Outcome o;
  double contraction = -1e300, two_step = 0.0, pos = 1e300, final_gap = 0.0;
  for (const auto& c : cases::elliptic()) {
    const SemigroupOperator S(engine_of(c.params));
    const unsigned p = c.params.prime();
    const std::size_t n = c.params.dimension();
    const auto u = bump(p, n);
    const auto grid = probe_grid(p, n, 25, 21);
    for (const auto& x : grid)
      for (double t : {0.05, 1.0, 10.0}) {
        const auto v = S.apply_Tt(u, t, x);
        const double gap = std::abs(v.value) - u.sup_norm();
        o.require(gap <= v.err, c.name + " contraction");
        o.require(v.value.real() >= -v.err, c.name + " positivity");
        contraction = std::max(contraction, gap - v.err);
        pos = std::min(pos, v.value.real() + v.err);
      }
    for (std::size_t i = 0; i < 8; ++i) {
      const auto two = S.apply_twice(u, 0.3, 0.4, grid[i]);
      const auto one = S.apply_Tt(u, 0.7, grid[i]);
      const double d = std::abs(two.value - one.value);
      o.require(d <= 1e-6 + two.err + one.err, c.name + " two-step " + fmt(d));
      two_step = std::max(two_step, d);
    }
    double prev = 1e300;
    for (double t : {1e-1, 1e-2, 1e-3, 1e-4}) {
      double sup = 0.0;
      for (const auto& x : grid) sup = std::max(sup, std::abs(S.apply_Tt(u, t, x).value - u.evaluate(x)));
      o.require(sup < prev, c.name + " strong continuity not decreasing at t=" + fmt(t));
      prev = sup;
    }
    o.require(prev <= 1e-3, c.name + " ||T u - u|| at 1e-4 = " + fmt(prev));
    final_gap = std::max(final_gap, prev);
  }
  o.detail << "max contraction gap - err=" << fmt(contraction) << ", max two-step diff=" << fmt(two_step)
           << ", max ||T_1e-4 u - u||=" << fmt(final_gap) << ", min(T u + err)=" << fmt(pos);
  return o;
}

Outcome conservativity() {
  Outcome o;
  const long R = 6;
  double worst = 0.0, worst_excess = -1e300;
  bool bound_holds = true;
  for (const auto& c : cases::elliptic()) {
    const SemigroupOperator S(engine_of(c.params));
    const unsigned p = c.params.prime();
    const std::size_t n = c.params.dimension();
    const auto u = LocallyConstantFn::indicator(Coset::ball(p, n, R));
    std::vector<Vector> xs{Vector(p, n)};
    std::mt19937_64 rng(17);
    for (long k = -3; k <= R - 3; ++k) xs.push_back(sphere_point(p, n, -k, rng));
    for (double t : {0.1, 1.0, 10.0}) {
      const double tail = conservativity_tail_bound(S.engine(), t, R);
      for (const auto& x : xs) {
        const auto v = S.apply_Tt(u, t, x);
        const double dev = std::abs(v.value - 1.0);
        o.require(dev <= 1e-6 + v.err, c.name + " t=" + fmt(t) + " fails");
        worst = std::max(worst, dev);
        worst_excess = std::max(worst_excess, dev - v.err - 1e-6);
        bound_holds = bound_holds && dev <= v.err + tail;
      }
    }
  }
  o.detail << "max |T_t 1_{B_6} - 1|=" << fmt(worst) << " (excess over 1e-6 + err: " << fmt(worst_excess)
           << "); missing mass within the tail bound at every probe: " << (bound_holds ? "yes" : "no");
  return o;
}

Outcome cauchy() {
  Outcome o;
  double lo = 1e300, hi = 0.0, eig = 0.0;
  for (const auto& c : cases::elliptic()) {
    const SemigroupOperator S(engine_of(c.params));
    const unsigned p = c.params.prime();
    const std::size_t n = c.params.dimension();
    const auto u = bump(p, n);
    std::vector<std::int64_t> one(n, 1);
    const auto x = Vector::from_integers(p, one);
    double prev = S.cauchy_residual(u, 0.5, x, 1e-2).residual;
    for (double h : {5e-3, 2.5e-3, 1.25e-3}) {
      const auto r = S.cauchy_residual(u, 0.5, x, h);
      if (r.residual <= 10 * r.err) break;  // truncation floor
      const double q = prev / r.residual;
      o.require(q >= 3.0 && q <= 5.0, c.name + " halving ratio " + fmt(q));
      lo = std::min(lo, q);
      hi = std::max(hi, q);
      prev = r.residual;
    }
    const auto u0 = inverse_fourier(LocallyConstantFn::indicator(unit_level_class(c.params)));
    for (const auto& y : probe_grid(p, n, 6, 4)) {
      const double r = S.cauchy_residual(u0, 0.7, y, 1e-5).residual;
      o.require(r <= 1e-10, c.name + " eigenfunction residual " + fmt(r));
      eig = std::max(eig, r);
    }
  }
  o.detail << "halving ratios in [" << fmt(lo) << ", " << fmt(hi) << "], max eigenfunction residual " << fmt(eig);
  return o;
}

Outcome transition_axioms() {
  Outcome o;
  double add = 0.0, ck = 0.0, ck_res = -1.0, ck_errs = 0.0;
  std::ostringstream lines;
  for (const auto& c : cases::elliptic()) {
    const SemigroupOperator S(engine_of(c.params));
    const unsigned p = c.params.prime();
    const std::size_t n = c.params.dimension();
    std::mt19937_64 rng(23);
    const auto x = sphere_point(p, n, -1, rng);

    o.require(S.transition_probability({x, {Coset(x, -4)}, 0.0}).value == 1.0, c.name + " p_0 != 1");

    const Coset parent(x, 0);
    const auto whole = S.transition_probability({x, {parent}, 0.4});
    double sum = 0.0, err = whole.err;
    for (const auto& ch : parent.children()) {
      const auto v = S.transition_probability({x, {ch}, 0.4});
      sum += v.value;
      err += v.err;
    }
    o.require(std::abs(sum - whole.value) <= err, c.name + " additivity");
    add = std::max(add, std::abs(sum - whole.value));

    // p_{t+s}(x, E) = sum_c p_t(x, c) p_s(c, E) over the radius-0 cosets c of B_R; y -> p_s(y, B_0)
    // is constant on them. The part outside B_R is at most p_t(x, ∁B_R) sup_{y ∉ B_R} p_s(y, B_0),
    // and the sup is at most the mass of Z_s outside B_R.
    const double t = 0.1, s = 0.1;
    const long R = p == 2 ? 8 : 3;
    const std::vector<Coset> E{Coset::ball(p, n, 0)};
    std::vector<Coset> cells{Coset::ball(p, n, R)};
    for (long r = R; r > 0; --r) {
      std::vector<Coset> next;
      for (const auto& cell : cells)
        for (const auto& ch : cell.children()) next.push_back(ch);
      cells = std::move(next);
    }
    const auto direct = S.transition_probability({x, E, t + s});
    double total = 0.0, errs = direct.err;
    for (const auto& cell : cells) {
      const auto a = S.transition_probability({x, {cell}, t});
      const auto b = S.transition_probability({cell.center(), E, s});
      total += a.value * b.value;
      errs += a.err * b.value + a.value * b.err + a.err * b.err;
    }
    const auto out_t = S.transition_probability({x, {Coset::ball(p, n, R)}, t});
    const auto out_s = complement_mass(S.job(s), R);
    errs += (1.0 - out_t.value + out_t.err) * (out_s.value + out_s.err);
    const double res = std::abs(direct.value - total);
    o.require(res <= 1e-5 + errs, c.name + " partition Chapman-Kolmogorov " + fmt(res));
    if (res >= ck_res) {
      ck_res = res;
      ck_errs = errs;
    }
    ck = std::max(ck, res / (1e-5 + errs));

    const double L = S.condition_L_profile(E, 1.0, {8}).front();
    o.require(L <= 1e-4, c.name + " condition (L) at p^8 = " + fmt(L));
    lines << " " << c.name << ":" << fmt(L);

    const auto g1 = S.stochastic_continuity_gap(0, 1e-3), g2 = S.stochastic_continuity_gap(0, 1e-1);
    o.require(g1.value + g1.err < g2.value - g2.err, c.name + " stochastic continuity");
  }
  o.detail << "max additivity defect " << fmt(add) << ", partition CK: largest residual " << fmt(ck_res) << " vs 1e-5 + errs = " << fmt(1e-5 + ck_errs)
           << " (max ratio " << fmt(ck) << ")"
           << ", condition (L) at p^8:" << lines.str();
  return o;
}

Outcome negative_definiteness() {
  Outcome o;
  double margin = 1e300;
  for (const auto& c : cases::elliptic()) {
    const auto rep = verify_negdef(c.params, 200, 8, 2024);
    o.require(rep.passed && rep.trials.size() == 200, c.name + " failed at trial " + std::to_string(rep.first_failure));
    margin = std::min(margin, rep.worst_margin);
  }
  const SymbolParams P(cases::poly_A(), Rational(1));
  const auto bad = verify_negdef([&](const Vector& x) { return -symbol_value(P, x); }, 3, 2, 200, 8, 2024);
  const bool control = !bad.passed && bad.trials[bad.first_failure].points.size() == 1;
  o.require(control, "negative control did not fail at m = 1");
  o.detail << "5 cases x 200 sets, worst margin " << fmt(margin) << "; control fails at trial " << bad.first_failure
           << " with m=" << bad.trials[bad.first_failure].points.size();
  return o;
}

Outcome sesquilinear_vanishing() {
  Outcome o;
  std::size_t violations = 0, pairs = 0, mean_zero_ok = 0, mean_zero = 0;
  double worst = 0.0;
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  const auto all = cases::elliptic();
  for (int i = 0; i < 20; ++i) {
    const auto& c = all[i % all.size()];
    const SemigroupOperator S(engine_of(c.params));
    const unsigned p = c.params.prime();
    const std::size_t n = c.params.dimension();
    // g = const on B_0, something else far away; h lives on sub-cosets of B_0
    auto g = LocallyConstantFn::indicator(Coset::ball(p, n, 0), {val(rng), val(rng)});
    std::vector<std::int64_t> far(n, 0);
    far[0] = 1;
    g = g + LocallyConstantFn::indicator(Coset(Vector::from_integers(p, far, 2), 0), {val(rng), val(rng)});
    LocallyConstantFn h(p, n);
    for (const auto& ch : Coset::ball(p, n, -1).children())
      if (rng() % 2) h = h + LocallyConstantFn::indicator(ch, {val(rng), val(rng)});
    if (h.is_zero()) h = LocallyConstantFn::indicator(Coset::ball(p, n, -2));
    const auto gh = S.beta_form(g, h);
    const double scale = std::sqrt(std::abs(S.beta_form(g, g).value) * std::abs(S.beta_form(h, h).value));
    const bool ok = std::abs(gh.value) <= 1e-10 * scale;
    ++pairs;
    if (!ok) ++violations;
    worst = std::max(worst, std::abs(gh.value) / scale);
    o.require(ok, c.name + " |beta(g,h)|/scale=" + fmt(std::abs(gh.value) / scale));

    // same g with h re-centered to mean zero (informational)
    const Complex mean = integrate(h) / Coset::ball(p, n, -1).volume_value();
    const auto h0 = h - LocallyConstantFn::indicator(Coset::ball(p, n, -1), mean);
    if (!h0.is_zero()) {
      const auto v = S.beta_form(g, h0);
      const double sc = std::sqrt(std::abs(S.beta_form(g, g).value) * std::abs(S.beta_form(h0, h0).value));
      ++mean_zero;
      if (std::abs(v.value) <= 1e-10 * sc + v.err) ++mean_zero_ok;
    }
  }
  o.detail << violations << "/" << pairs << " pairs exceed 1e-10 scale (max ratio " << fmt(worst)
           << "); with h shifted to mean zero: " << mean_zero_ok << "/" << mean_zero << " vanish";
  return o;
}

// ∫_{||y|| > 1} of the Lévy density for |xi|^alpha on Q_2: sum over spheres of density x sphere volume
double levy_mass_oracle(double alpha) {
  double s = 0.0;
  for (long k = 1; k < 200; ++k) s += oracle::radial_levy_1d(2, alpha, k) * std::pow(2.0, k) * 0.5;
  return s;
}

Outcome levy_probe() {
  Outcome o;
  const std::vector<double> ts{1e-1, 1e-2, 1e-3, 1e-4};
  std::ostringstream lines;
  double radial = 0.0;
  for (const auto& c : cases::elliptic()) {
    const auto pr = equivalence_probe(engine_of(c.params), 0, ts);
    o.require(pr.cauchy_halving, c.name + " Cauchy differences do not halve");
    o.require(pr.limit_estimate > 0.0, c.name + " limit not positive");
    lines << " " << c.name << ":" << fmt(pr.limit_estimate);
    if (c.params.dimension() == 1) {
      const double ref = levy_mass_oracle(c.params.beta_value());
      const double rel = std::abs(pr.limit_estimate - ref) / ref;
      o.require(rel <= 1e-6, c.name + " radial mismatch " + fmt(rel));
      radial = std::max(radial, rel);
    }
  }
  o.detail << "limits" << lines.str() << "; radial max relative deviation " << fmt(radial);
  return o;
}

Outcome sampler() {
  Outcome o;
  std::ostringstream lines;
  const std::size_t N = 100000;
  for (const auto& c : cases::elliptic()) {
    const auto e = engine_of(c.params);
    const unsigned p = c.params.prime();
    const std::size_t n = c.params.dimension();
    const IncrementSampler s(KernelJob::make(e, 1.0, 1e-10), 1);
    std::vector<Coset> regions;
    for (const auto& a : Coset::ball(p, n, 1).children())
      for (const auto& b : a.children()) regions.push_back(b);
    std::size_t passing = 0;
    std::vector<std::size_t> first;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto rep = validate_sampler(s, seed, N, regions, default_threads());
      if (rep.p_value > 1e-3) ++passing;
      if (seed == 1) first = rep.observed;
    }
    o.require(passing >= 19, c.name + " only " + std::to_string(passing) + "/20 seeds pass");
    const auto again = validate_sampler(s, 1, N, regions, 1);
    o.require(again.observed == first, c.name + " not deterministic");

    IncrementSampler bad(KernelJob::make(e, 1.0, 1e-10), 1);
    bad.set_mass_perturbation(1.05);
    const double pbad = validate_sampler(bad, 1, N, regions, default_threads()).p_value;
    o.require(pbad < 1e-6, c.name + " corrupted control p=" + fmt(pbad));
    lines << " " << c.name << ":" << passing << "/20 (control p=" << fmt(pbad) << ")";
  }
  o.detail << "N=1e5 per seed;" << lines.str() << "; same seed bit-identical across thread counts";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"certification", certification},
      {"mass", mass},
      {"positivity", positivity},
      {"oracle equivalence", oracle_equivalence},
      {"Chapman-Kolmogorov", chapman_kolmogorov},
      {"decay", decay},
      {"semigroup laws", semigroup_laws},
      {"conservativity", conservativity},
      {"Cauchy residual", cauchy},
      {"transition axioms", transition_axioms},
      {"negative definiteness", negative_definiteness},
      {"sesquilinear vanishing", sesquilinear_vanishing},
      {"Levy probe", levy_probe},
      {"sampler", sampler},
  };
  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2zu %s | %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.str().c_str(), secs);
    for (const auto& note : o.notes) std::printf("       - %s\n", note.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%zu/%zu criteria pass, %.1fs total\n", criteria.size() - failed, criteria.size(), total);
  return failed == 0 ? 0 : 1;
}
