#include "padicheat/negdef.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace padicheat {

SymmetricMatrix negdef_matrix(const SymbolFunction& psi, const std::vector<Vector>& points) {
  const std::size_t m = points.size();
  for (std::size_t i = 1; i < m; ++i)
    if (points[i].dimension() != points[0].dimension() || points[i].prime() != points[0].prime())
      throw std::invalid_argument("negdef_matrix: points have different dimensions");
  SymmetricMatrix M{m, std::vector<double>(m * m, 0.0)};
  std::vector<double> diag(m);
  for (std::size_t i = 0; i < m; ++i) diag[i] = psi(points[i]);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      const double v = diag[i] + diag[j] - psi(points[i] - points[j]);
      M(i, j) = v;
      M(j, i) = v;
    }
  return M;
}

SymmetricMatrix negdef_matrix(const SymbolParams& params, const std::vector<Vector>& points) {
  return negdef_matrix([&](const Vector& x) { return symbol_value(params, x); }, points);
}

std::vector<double> jacobi_eigenvalues(const SymmetricMatrix& input) {
  const std::size_t n = input.size;
  if (n == 0) return {};
  if (n > 64) throw std::invalid_argument("jacobi_eigenvalues: size above 64");
  if (input.data.size() != n * n) throw std::invalid_argument("jacobi_eigenvalues: malformed matrix");
  double scale = 0.0;
  for (double v : input.data) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(input(i, j) - input(j, i)) > 1e-14 * scale) throw std::invalid_argument("matrix is not symmetric");

  SymmetricMatrix A = input;
  double frob = 0.0;
  for (double v : A.data) frob += v * v;
  frob = std::sqrt(frob);
  auto off = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += A(i, j) * A(i, j);
    return std::sqrt(s);
  };
  for (int sweep = 0; sweep < 100 && off() > 1e-12 * frob; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (apq == 0.0) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = A(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

double min_eigenvalue(const SymmetricMatrix& M) {
  if (M.size == 0) throw std::invalid_argument("min_eigenvalue of an empty matrix");
  return jacobi_eigenvalues(M).front();
}

namespace {

Vector random_point(unsigned p, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> sphere(-3, 3);
  std::uniform_int_distribution<std::int64_t> digit(0, static_cast<std::int64_t>(p) - 1);
  const long k = sphere(rng);
  std::vector<std::int64_t> u(n);
  for (;;) {
    bool unit = false;
    for (auto& c : u) {
      std::int64_t v = 0, place = 1;
      for (int d = 0; d < 6; ++d, place *= p) v += digit(rng) * place;
      c = v;
      unit = unit || (v % static_cast<std::int64_t>(p) != 0);
    }
    if (unit) break;
  }
  return Vector::from_integers(p, u, -k);
}

}  // namespace

NegDefReport verify_negdef(const SymbolFunction& psi, unsigned p, std::size_t n, std::size_t trials,
                           std::size_t m_max, std::uint64_t seed) {
  if (m_max == 0 || m_max > 64) throw std::invalid_argument("m_max must be in [1, 64]");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size_dist(1, m_max);
  NegDefReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t tr = 0; tr < trials; ++tr) {
    NegDefTrial trial;
    const std::size_t m = tr == 0 ? 1 : size_dist(rng);
    while (trial.points.size() < m) {
      Vector x = random_point(p, n, rng);
      if (std::find(trial.points.begin(), trial.points.end(), x) == trial.points.end()) trial.points.push_back(x);
    }
    const auto M = negdef_matrix(psi, trial.points);
    double maxdiag = 0.0;
    for (std::size_t i = 0; i < m; ++i) maxdiag = std::max(maxdiag, std::abs(M(i, i)));
    trial.tolerance = 1e-9 * (1.0 + maxdiag);
    trial.min_eigenvalue = min_eigenvalue(M);
    trial.passed = trial.min_eigenvalue >= -trial.tolerance;
    rep.worst_margin = std::min(rep.worst_margin, trial.min_eigenvalue + trial.tolerance);
    if (!trial.passed && rep.passed) {
      rep.passed = false;
      rep.first_failure = tr;
    }
    rep.trials.push_back(std::move(trial));
  }
  return rep;
}

NegDefReport verify_negdef(const SymbolParams& params, std::size_t trials, std::size_t m_max, std::uint64_t seed) {
  return verify_negdef([&](const Vector& x) { return symbol_value(params, x); }, params.prime(), params.dimension(),
                       trials, m_max, seed);
}

namespace {

void finish_probe(EquivalenceProbe& pr, double zero_tol) {
  for (std::size_t i = 1; i < pr.values.size(); ++i) pr.cauchy.push_back(std::abs(pr.values[i] - pr.values[i - 1]));
  pr.cauchy_halving = true;
  for (std::size_t i = 1; i < pr.cauchy.size(); ++i)
    pr.cauchy_halving = pr.cauchy_halving && pr.cauchy[i] <= 0.5 * pr.cauchy[i - 1];
  const std::size_t b = pr.values.size() - 1, a = b - 1;
  pr.limit_estimate =
      (pr.times[a] * pr.values[b] - pr.times[b] * pr.values[a]) / (pr.times[a] - pr.times[b]);
  const double tol = zero_tol + (pr.errs.empty() ? 0.0 : pr.errs.back());
  // (i) <=> (ii) <=> (iii); the measured quantity is the Lévy mass of the complement
  pr.condition_i = std::abs(pr.limit_estimate) <= tol;
  pr.condition_ii = pr.condition_i;
  pr.condition_iii = pr.condition_ii;
  pr.representation = pr.condition_iii ? "yes (l = q = 0)" : "no";
}

void check_sequence(const std::vector<double>& ts) {
  if (ts.size() < 2) throw std::invalid_argument("need at least two times");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ts[i] > 0.0)) throw std::invalid_argument("times must be positive");
    if (i > 0 && !(ts[i] < ts[i - 1])) throw std::invalid_argument("t_sequence must be strictly decreasing");
  }
}

}  // namespace

EquivalenceProbe equivalence_probe(const std::shared_ptr<const SpectralEngine>& engine, long r,
                                   const std::vector<double>& t_sequence, double eps) {
  check_sequence(t_sequence);
  EquivalenceProbe pr;
  pr.r = r;
  for (double t : t_sequence) {
    const auto v = levy_mass_outside(KernelJob::make(engine, t, eps), r);
    pr.times.push_back(t);
    pr.values.push_back(v.value);
    pr.errs.push_back(v.err);
  }
  pr.direct_limit = levy_mass_limit(*engine, r, eps).value;
  finish_probe(pr, 1e-9);
  return pr;
}

EquivalenceProbe equivalence_probe(const std::function<double(double)>& outside_mass_over_t, long r,
                                   const std::vector<double>& t_sequence, double zero_tol) {
  check_sequence(t_sequence);
  EquivalenceProbe pr;
  pr.r = r;
  for (double t : t_sequence) {
    pr.times.push_back(t);
    pr.values.push_back(outside_mass_over_t(t));
  }
  pr.direct_limit = pr.values.back();
  finish_probe(pr, zero_tol);
  return pr;
}

}  // namespace padicheat
