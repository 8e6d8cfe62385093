#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "padicheat/heat_kernel.hpp"

namespace padicheat {

/// Dense row-major real symmetric matrix.
struct SymmetricMatrix {
  std::size_t size = 0;
  std::vector<double> data;

  double& operator()(std::size_t i, std::size_t j) { return data[i * size + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * size + j]; }
};

using SymbolFunction = std::function<double(const Vector&)>;

/// M_ij = psi(x_i) + psi(x_j) - psi(x_i - x_j).
SymmetricMatrix negdef_matrix(const SymbolFunction& psi, const std::vector<Vector>& points);
SymmetricMatrix negdef_matrix(const SymbolParams& params, const std::vector<Vector>& points);

/// All eigenvalues (ascending) by cyclic Jacobi rotations. Size <= 64.
std::vector<double> jacobi_eigenvalues(const SymmetricMatrix& M);
double min_eigenvalue(const SymmetricMatrix& M);

struct NegDefTrial {
  std::vector<Vector> points;
  double min_eigenvalue = 0.0;
  double tolerance = 0.0;
  bool passed = true;
};

struct NegDefReport {
  std::vector<NegDefTrial> trials;
  bool passed = true;
  std::size_t first_failure = 0;  // index of the first failing trial, if any
  double worst_margin = 0.0;      // min over trials of min_eigenvalue + tolerance
};

/// Random point sets of size 1..m_max drawn from spheres ||x|| = p^k,
/// k in [-3, 3], with 6 random digits; tolerance 1e-9 (1 + max diagonal).
NegDefReport verify_negdef(const SymbolFunction& psi, unsigned p, std::size_t n, std::size_t trials,
                           std::size_t m_max, std::uint64_t seed);
NegDefReport verify_negdef(const SymbolParams& params, std::size_t trials, std::size_t m_max, std::uint64_t seed);

struct EquivalenceProbe {
  long r = 0;
  std::vector<double> times;
  std::vector<double> values;  // (1/t) ∫_{||y|| > p^r} Z_t(y) dy
  std::vector<double> errs;
  std::vector<double> cauchy;
  double limit_estimate = 0.0;  // Richardson on the last two times
  double direct_limit = 0.0;    // p^{rn} ∫_{B_{-r}} |f|^beta when available
  bool cauchy_halving = false;  // each difference at most half the previous
  bool condition_i = false;     // the Lévy mass vanishes
  bool condition_ii = false;
  bool condition_iii = false;
  std::string representation = "no";  // whether c + il + q was exhibited
};

EquivalenceProbe equivalence_probe(const std::shared_ptr<const SpectralEngine>& engine, long r,
                                   const std::vector<double>& t_sequence, double eps = 1e-12);
/// Same verdict logic for a synthetic symbol given by t -> (1/t) ∫_{∁B_r} mu_t.
EquivalenceProbe equivalence_probe(const std::function<double(double)>& outside_mass_over_t, long r,
                                   const std::vector<double>& t_sequence, double zero_tol = 1e-9);

}  // namespace padicheat
