#include "padicheat/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace padicheat {

double Weight::operator()(double sigma) const {
  switch (kind) {
    case WeightKind::Heat: return std::exp(-t * sigma);
    case WeightKind::HeatDeficit: return -std::expm1(-t * sigma);
    case WeightKind::Symbol: return sigma;
    case WeightKind::HeatGenerator: return sigma * std::exp(-t * sigma);
    case WeightKind::LevyQuotient: return -std::expm1(-t * sigma) / t;
  }
  return 0.0;
}

double Weight::at_zero() const { return kind == WeightKind::Heat ? 1.0 : 0.0; }

double Weight::centered(double sigma) const {
  if (kind == WeightKind::Heat) return std::expm1(-t * sigma);
  return (*this)(sigma);
}

double Weight::deviation(double sigma_max) const {
  switch (kind) {
    case WeightKind::Heat:
    case WeightKind::HeatDeficit: return -std::expm1(-t * sigma_max);
    case WeightKind::Symbol: return sigma_max;
    case WeightKind::HeatGenerator:
      return t * sigma_max <= 1.0 ? sigma_max * std::exp(-t * sigma_max) : 1.0 / (std::numbers::e * t);
    case WeightKind::LevyQuotient: return -std::expm1(-t * sigma_max) / t;
  }
  return 0.0;
}

void CompensatedSum::add(double v) {
  const double s = sum_ + v;
  if (std::abs(sum_) >= std::abs(v))
    comp_ += (sum_ - s) + v;
  else
    comp_ += (v - s) + sum_;
  sum_ = s;
  abs_ += std::abs(v);
  ++count_;
}

UnitSphereTable::UnitSphereTable(const EllipticPolynomial& f, unsigned depth)
    : p_(f.prime()), n_(f.dimension()), depth_(depth) {
  const auto mod = detail::small_power(p_, depth);
  if (!mod || depth == 0) throw std::invalid_argument("residue depth out of range");
  modulus_ = *mod;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n_; ++i) {
    if (total > (std::uint64_t{1} << 26) / modulus_) throw std::invalid_argument("unit-sphere table too large");
    total *= modulus_;
  }
  std::vector<std::uint64_t> c(n_);
  unsigned lo = depth;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    bool unit = false;
    for (std::size_t i = 0; i < n_; ++i) {
      c[i] = rest % modulus_;
      rest /= modulus_;
      unit = unit || (c[i] % p_ != 0);
    }
    if (!unit) continue;
    std::uint64_t v = f.evaluate_mod(c, modulus_);
    if (v == 0) throw std::invalid_argument("|f| is not determined by residues mod p^" + std::to_string(depth));
    unsigned level = 0;
    while (v % p_ == 0) {
      v /= p_;
      ++level;
    }
    residues_.insert(residues_.end(), c.begin(), c.end());
    levels_.push_back(level);
    if (counts_.size() <= level) counts_.resize(level + 1, 0.0);
    counts_[level] += 1.0;
    lo = std::min(lo, level);
  }
  min_level_ = lo;
}

std::vector<double> UnitSphereTable::phase_sums(std::span<const std::uint64_t> u, unsigned s) const {
  std::vector<double> out(counts_.size(), 0.0);
  const std::uint64_t shift = detail::powmod(p_, s, modulus_);
  const double P = static_cast<double>(modulus_);
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    std::uint64_t dot = 0;
    for (std::size_t j = 0; j < n_; ++j) dot = (dot + detail::mulmod(u[j], residues_[i * n_ + j], modulus_)) % modulus_;
    const std::uint64_t a = detail::mulmod(dot, shift, modulus_);
    // signed representative keeps the cosine argument small
    const double angle = a > modulus_ / 2 ? -static_cast<double>(modulus_ - a) : static_cast<double>(a);
    out[levels_[i]] += std::cos(2.0 * std::numbers::pi * angle / P);
  }
  return out;
}

SpectralEngine::SpectralEngine(SymbolParams params, EllipticityCertificate cert, unsigned depth)
    : params_(std::move(params)),
      cert_(std::move(cert)),
      table_(params_.polynomial(), depth ? depth : cert_.depth) {
  if (!cert_.certified()) throw std::invalid_argument("symbol is not certified elliptic");
  if (table_.depth() < cert_.depth) throw std::invalid_argument("residue depth below the certified depth");
  const double p = prime();
  const double beta = params_.beta_value();
  c0_beta_ = std::pow(p, -beta * static_cast<double>(table_.max_level()));
  c1_beta_ = std::pow(p, -beta * static_cast<double>(table_.min_level()));
  dbeta_ = static_cast<double>(params_.degree()) * beta;
}

double SpectralEngine::sigma(long j, unsigned level) const {
  const double e = static_cast<double>(j * static_cast<long>(params_.degree()) - static_cast<long>(level));
  return std::pow(static_cast<double>(prime()), e * params_.beta_value());
}

SpectralEngine::Decomposed SpectralEngine::decompose(const Vector& x) const {
  if (x.prime() != prime() || x.dimension() != dimension()) throw std::invalid_argument("point has the wrong p or n");
  Decomposed d;
  if (x.is_zero()) return d;
  auto ud = x.unit_residues(table_.depth());
  d.zero = false;
  d.k = -ud.ord;
  d.residues = std::move(ud.residues);
  return d;
}

std::vector<double> SpectralEngine::level_factors(const Decomposed& x, long j) const {
  const long m = static_cast<long>(table_.depth());
  if (x.zero) return table_.counts();
  const long s = m - x.k - j;
  if (s >= m) return table_.counts();
  if (s < 0) return std::vector<double>(table_.counts().size(), 0.0);
  return table_.phase_sums(x.residues, static_cast<unsigned>(s));
}

double SpectralEngine::sphere_term(const Vector& x, long j, const Weight& w) const {
  const auto d = decompose(x);
  const auto F = level_factors(d, j);
  const double scale = std::pow(static_cast<double>(prime()),
                                static_cast<double>((j - static_cast<long>(table_.depth())) * static_cast<long>(dimension())));
  double s = 0.0;
  for (unsigned l = 0; l < F.size(); ++l)
    if (F[l] != 0.0) s += F[l] * w(sigma(j, l));
  return scale * s;
}

double SpectralEngine::inner_bound(const Weight& w, long L) const {
  const double p = prime();
  const double n = static_cast<double>(dimension());
  const double smax = c1_beta_ * std::pow(p, -static_cast<double>(L) * dbeta_);
  return std::pow(p, -static_cast<double>(L) * n) * w.deviation(smax);
}

double SpectralEngine::outer_tail_bound(const Weight& w, long U) const {
  if (!w.integrable()) throw std::invalid_argument("weight is not integrable over Q_p^n");
  const double p = prime();
  const double n = static_cast<double>(dimension());
  const double shell = 1.0 - std::pow(p, -n);
  auto sup_weight = [&](long j) {
    const double lo = c0_beta_ * std::pow(p, static_cast<double>(j) * dbeta_);
    const double hi = c1_beta_ * std::pow(p, static_cast<double>(j) * dbeta_);
    if (w.kind == WeightKind::Heat) return std::exp(-w.t * lo);
    if (w.t * hi <= 1.0) return hi * std::exp(-w.t * hi);
    if (w.t * lo >= 1.0) return lo * std::exp(-w.t * lo);
    return 1.0 / (std::numbers::e * w.t);
  };
  auto term = [&](long j) { return std::pow(p, static_cast<double>(j) * n) * shell * sup_weight(j); };
  double total = 0.0;
  for (long j = U + 1; j < U + 100000; ++j) {
    const double b = term(j);
    if (b == 0.0) return total + std::numeric_limits<double>::denorm_min();
    const double lo = c0_beta_ * std::pow(p, static_cast<double>(j) * dbeta_);
    const double ratio = term(j + 1) / b;
    // past this point the ratios decrease, so a geometric series dominates
    if (w.t * lo >= 1.0 && ratio <= 0.5) return total + b / (1.0 - ratio);
    total += b;
  }
  throw std::runtime_error("outer tail bound did not converge");
}

long SpectralEngine::choose_inner_cutoff(const Weight& w, double eps) const {
  for (long L = -60; L < 4000; ++L)
    if (inner_bound(w, L) <= eps) return L;
  throw std::runtime_error("no inner cutoff reaches the requested accuracy");
}

long SpectralEngine::choose_outer_cutoff(const Weight& w, double eps) const {
  for (long U = -60; U < 4000; ++U)
    if (outer_tail_bound(w, U) <= eps) return U;
  throw std::runtime_error("no outer cutoff reaches the requested accuracy");
}

SpectralResult SpectralEngine::integrate(const Vector& x, std::optional<long> J, const Weight& w, long L,
                                         long U) const {
  const auto d = decompose(x);
  const long m = static_cast<long>(table_.depth());
  const double p = prime();
  const long n = static_cast<long>(dimension());

  SpectralResult res;
  long top;
  if (J) {
    top = *J;
  } else if (d.zero) {
    top = U;
    res.outer_err = outer_tail_bound(w, U);
  } else {
    top = m - d.k;
  }
  if (!d.zero) top = std::min(top, m - d.k);
  if (top < -L) L = -top;
  res.inner_cutoff = L;
  res.top_sphere = top;
  res.centered = !d.zero && d.k > -top;
  res.inner_err = inner_bound(w, L);

  CompensatedSum sum;
  double magnitude = 0.0;
  if (!res.centered) {
    const double inner = w.at_zero() * std::pow(p, static_cast<double>(-L * n));
    sum.add(inner);
    magnitude += std::abs(inner);
  }
  for (long j = -L + 1; j <= top; ++j) {
    const auto F = level_factors(d, j);
    const double scale = std::pow(p, static_cast<double>((j - m) * n));
    for (unsigned l = 0; l < F.size(); ++l) {
      if (table_.counts()[l] == 0.0) continue;
      const double s = sigma(j, l);
      const double wv = res.centered ? w.centered(s) : w(s);
      sum.add(scale * F[l] * wv);
      magnitude += scale * table_.counts()[l] * std::abs(wv);
    }
  }
  res.value = sum.value();
  const double u = std::numeric_limits<double>::epsilon() / 2.0;
  res.float_err = 4.0 * u * static_cast<double>(sum.count() + table_.size() + 8) * magnitude;
  return res;
}

SeriesValue evaluate_series(const SpectralEngine& engine, const SpectralSeries& series, const Vector& y) {
  SeriesValue out{0.0, 0.0};
  for (const auto& term : series.terms) {
    const double mag = std::abs(term.coeff);
    if (mag == 0.0) continue;
    const long L = engine.choose_inner_cutoff(series.weight, series.eps / mag);
    const auto r = engine.integrate(y - term.shift, term.J, series.weight, L, 0);
    out.value += term.coeff * r.value;
    out.err += mag * r.err();
  }
  return out;
}

namespace {

void tabulate_cell(const SpectralEngine& engine, const SpectralSeries& series, const Coset& cell,
                   std::vector<TabulatedCell>& out) {
  const long m = static_cast<long>(engine.table().depth());
  const long rho = cell.radius_exp();
  bool constant = true;
  for (const auto& term : series.terms) {
    if (rho <= -term.J) continue;
    const Coset rel(cell.center() - term.shift, rho);
    if (rel.contains_origin() || rho > std::max(-term.J, rel.norm_exponent() - m)) {
      constant = false;
      break;
    }
  }
  if (!constant) {
    for (const auto& child : cell.children()) tabulate_cell(engine, series, child, out);
    return;
  }
  const auto v = evaluate_series(engine, series, cell.center());
  out.push_back({cell, v.value, v.err});
}

}  // namespace

std::vector<TabulatedCell> tabulate_series(const SpectralEngine& engine, const SpectralSeries& series, long R) {
  std::vector<TabulatedCell> out;
  tabulate_cell(engine, series, Coset::ball(engine.prime(), engine.dimension(), R), out);
  return out;
}

}  // namespace padicheat
