#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <vector>

#include "padicheat/heat_kernel.hpp"

namespace padicheat {

/// Counter-based generator: each uniform is a hash of (seed, draw, step, level).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t seed() const noexcept { return seed_; }
  /// Uniform double in [0, 1).
  double uniform(std::uint64_t draw, std::uint64_t step, std::uint64_t level) const;

 private:
  std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t x);

/**
 * Draws increments from Z_t(y) d^n y conditioned on B_R, one digit level at
 * a time: the p^n children of the current coset are weighted by their exact
 * masses. Child masses are memoized per coset.
 */
class IncrementSampler {
 public:
  /// cap_radius = std::nullopt picks the smallest R with 1 - mass(B_R) <= 1e-6.
  IncrementSampler(KernelJob job, long depth, std::optional<long> cap_radius = std::nullopt);

  long depth() const noexcept { return depth_; }
  long cap_radius() const noexcept { return cap_; }
  /// mass(B_R) of the conditioning ball.
  double conditioning_mass() const noexcept { return cap_mass_; }
  const KernelJob& job() const noexcept { return job_; }

  /// Negative control: multiplies the mass of the first child at every level.
  void set_mass_perturbation(double factor) { perturbation_ = factor; }

  /// Leaf coset of radius p^{-depth}.
  Coset sample(const CounterRng& rng, std::uint64_t draw, std::uint64_t step = 0) const;
  /// Same draw as sample(), returned as an index into the internal trie.
  std::size_t sample_leaf(const CounterRng& rng, std::uint64_t draw, std::uint64_t step = 0) const;
  Coset node_coset(std::size_t id) const;

  /// Probability the sampler assigns to a coset of radius >= -depth (inside B_R).
  double law(const Coset& c) const;

 private:
  struct Node {
    Coset coset;
    std::vector<double> masses;      // raw child masses, filled on first visit
    std::vector<std::size_t> child;  // trie indices of the p^n children
  };
  // expands node id if needed; caller holds mutex_
  const Node& expanded(std::size_t id) const;

  KernelJob job_;
  long depth_;
  long cap_;
  double cap_mass_;
  double perturbation_ = 1.0;
  mutable std::mutex mutex_;
  mutable std::deque<Node> nodes_;
};

struct PathConfig {
  std::shared_ptr<const SpectralEngine> engine;
  std::vector<double> times;  // 0 = t_0 < t_1 < ... < t_K
  long depth = 2;
  std::optional<long> cap_radius;
  std::uint64_t seed = 0;
  double eps = 1e-10;
};

struct PathSample {
  std::vector<double> times;
  std::vector<Coset> positions;  // radius p^{-depth}, positions[0] = B_{-depth}
  std::vector<double> conditioning_masses;
  std::vector<long> cap_radii;
  std::uint64_t seed = 0;
};

/// Piecewise-constant path; step i uses draw index path_id and step index i.
PathSample sample_path(const PathConfig& config, std::uint64_t path_id = 0);

struct SamplerReport {
  std::size_t draws = 0;
  std::vector<Coset> regions;
  std::vector<double> expected;  // probabilities under the conditioned law; last entry = rest (if any)
  std::vector<std::size_t> observed;
  double chi_square = 0.0;
  std::size_t dof = 0;
  double p_value = 0.0;
  bool has_rest = false;
};

/// Chi-square of N draws against exact masses of the (disjoint) regions.
/// Throws when an expected count falls below 5.
SamplerReport validate_sampler(const IncrementSampler& sampler, std::uint64_t seed, std::size_t N,
                               const std::vector<Coset>& regions, unsigned threads = 1);

/// Upper tail probability of the chi-square distribution.
double chi_square_pvalue(double statistic, std::size_t dof);

}  // namespace padicheat
