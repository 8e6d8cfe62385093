#pragma once

#include <optional>

namespace padicheat::radial {

// Independent series for symbols equal to ||xi||_p^alpha. Only sphere
// integrals of the character are used; points enter through k with
// ||x|| = p^k (std::nullopt for x = 0).

/// ∫_{||xi|| = p^gamma} chi(-x·xi) d^n xi.
double sphere_integral(unsigned p, unsigned n, long gamma, std::optional<long> k);

/// Z_t(x) = sum_gamma e^{-t p^{gamma alpha}} S_gamma(x).
double kernel(unsigned p, unsigned n, double alpha, double t, std::optional<long> k);

/// ∫ e^{-t ||xi||^alpha} d^n xi, summed sphere by sphere.
double fourier_mass(unsigned p, unsigned n, double alpha, double t);

/// ∫_{B_r} Z_t(y) d^n y = p^{rn} ∫_{B_{-r}} e^{-t ||xi||^alpha} d^n xi.
double ball_mass(unsigned p, unsigned n, double alpha, double t, long r);

/// lim_{t->0} Z_t(y)/t = -sum_gamma p^{gamma alpha} S_gamma(y), y != 0 with ||y|| = p^k.
double levy_density(unsigned p, unsigned n, double alpha, long k);

/// ∫_{||y|| > p^r} of the Lévy density.
double levy_mass_outside(unsigned p, unsigned n, double alpha, long r);

/// (D^alpha 1_{Z_p^n})(x) = sum_{gamma <= 0} p^{gamma alpha} S_gamma(x).
double operator_on_unit_ball(unsigned p, unsigned n, double alpha, std::optional<long> k);

/// Closed form of the n = 1, alpha = 1 case of operator_on_unit_ball.
double vladimirov_unit_ball(unsigned p, std::optional<long> k);

}  // namespace padicheat::radial
