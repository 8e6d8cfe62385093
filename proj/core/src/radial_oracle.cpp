#include "padicheat/radial_oracle.hpp"

#include <cmath>

namespace padicheat::radial {

namespace {

long double lpow(unsigned p, long double e) { return std::pow(static_cast<long double>(p), e); }

constexpr long kDeep = 80;  // spheres below -kDeep are lumped into one ball

}  // namespace

double sphere_integral(unsigned p, unsigned n, long gamma, std::optional<long> k) {
  const long double nn = n;
  // ||x|| <= p^{-gamma}: the character is trivial on the whole sphere
  if (!k || *k <= -gamma) return static_cast<double>(lpow(p, gamma * nn) - lpow(p, (gamma - 1) * nn));
  // ||x|| = p^{-gamma+1}: trivial on the ball B_{gamma-1}, averages to zero on B_gamma
  if (*k == -gamma + 1) return static_cast<double>(-lpow(p, (gamma - 1) * nn));
  return 0.0;
}

double kernel(unsigned p, unsigned n, double alpha, double t, std::optional<long> k) {
  const long lo = -kDeep - (k ? std::abs(*k) : 0);
  long double sum = 0.0L;
  // ball B_lo with the weight replaced by 1 (error below p^{lo n})
  if (!k || *k <= -lo) sum += lpow(p, static_cast<long double>(lo) * n);
  const long hi_x = k ? 1 - *k : 100000;
  for (long g = lo + 1; g <= hi_x; ++g) {
    const long double arg = t * lpow(p, g * static_cast<long double>(alpha));
    if (arg > 11000.0L) break;
    sum += std::exp(-arg) * sphere_integral(p, n, g, k);
  }
  return static_cast<double>(sum);
}

double fourier_mass(unsigned p, unsigned n, double alpha, double t) {
  long double sum = lpow(p, -static_cast<long double>(kDeep) * n);
  for (long g = -kDeep + 1; g < 100000; ++g) {
    const long double arg = t * lpow(p, g * static_cast<long double>(alpha));
    if (arg > 11000.0L) break;
    sum += (lpow(p, g * static_cast<long double>(n)) - lpow(p, (g - 1) * static_cast<long double>(n))) * std::exp(-arg);
  }
  return static_cast<double>(sum);
}

double ball_mass(unsigned p, unsigned n, double alpha, double t, long r) {
  const long lo = -r - kDeep;
  long double sum = lpow(p, static_cast<long double>(lo) * n);
  for (long g = lo + 1; g <= -r; ++g) {
    const long double arg = t * lpow(p, g * static_cast<long double>(alpha));
    sum += (lpow(p, g * static_cast<long double>(n)) - lpow(p, (g - 1) * static_cast<long double>(n))) * std::exp(-arg);
  }
  return static_cast<double>(lpow(p, static_cast<long double>(r) * n) * sum);
}

double levy_density(unsigned p, unsigned n, double alpha, long k) {
  long double sum = 0.0L;
  for (long g = 1 - k - 4 * kDeep; g <= 1 - k; ++g)
    sum += lpow(p, g * static_cast<long double>(alpha)) * sphere_integral(p, n, g, k);
  return static_cast<double>(-sum);
}

double levy_mass_outside(unsigned p, unsigned n, double alpha, long r) {
  long double sum = 0.0L;
  const long double shell = 1.0L - lpow(p, -static_cast<long double>(n));
  for (long k = r + 1; k < r + 20000; ++k) {
    const long double term = lpow(p, static_cast<long double>(k) * n) * shell * levy_density(p, n, alpha, k);
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum)) break;
  }
  return static_cast<double>(sum);
}

double operator_on_unit_ball(unsigned p, unsigned n, double alpha, std::optional<long> k) {
  long double sum = 0.0L;
  for (long g = -4 * kDeep; g <= 0; ++g) sum += lpow(p, g * static_cast<long double>(alpha)) * sphere_integral(p, n, g, k);
  return static_cast<double>(sum);
}

double vladimirov_unit_ball(unsigned p, std::optional<long> k) {
  const double q = p;
  if (!k || *k <= 0) return q / (q + 1.0);
  const double kk = static_cast<double>(*k);
  return (1.0 - 1.0 / q) * std::pow(q, -2.0 * kk) / (1.0 - 1.0 / (q * q)) - std::pow(q, 1.0 - 2.0 * kk);
}

}  // namespace padicheat::radial
