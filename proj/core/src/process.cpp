#include "padicheat/process.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "padicheat/parallel.hpp"

namespace padicheat {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double CounterRng::uniform(std::uint64_t draw, std::uint64_t step, std::uint64_t level) const {
  std::uint64_t h = splitmix64(seed_);
  h = splitmix64(h ^ draw);
  h = splitmix64(h ^ (step * 0xD1B54A32D192ED03ULL));
  h = splitmix64(h ^ (level * 0x8CB92BA72F3D8DD7ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

IncrementSampler::IncrementSampler(KernelJob job, long depth, std::optional<long> cap_radius)
    : job_(std::move(job)), depth_(depth) {
  if (cap_radius) {
    cap_ = *cap_radius;
  } else {
    cap_ = 0;
    for (;; ++cap_) {
      const auto comp = complement_mass(job_, cap_);
      if (comp.value + comp.err <= 1e-6) break;
      if (cap_ > 400) throw std::runtime_error("no cap radius keeps the discarded mass below 1e-6");
    }
  }
  if (cap_ < -depth_) throw std::invalid_argument("cap radius below the leaf radius");
  const auto comp = complement_mass(job_, cap_);
  cap_mass_ = 1.0 - comp.value;
  if (comp.value > 1e-6) throw std::invalid_argument("conditioning mass below 1 - 1e-6 for cap radius " + std::to_string(cap_));
}

const IncrementSampler::Node& IncrementSampler::expanded(std::size_t id) const {
  if (!nodes_[id].child.empty()) return nodes_[id];
  const auto children = nodes_[id].coset.children();
  std::vector<double> masses;
  std::vector<std::size_t> ids;
  for (const auto& c : children) {
    const auto m = coset_mass(job_, c);
    if (m.value < -m.err) throw std::runtime_error("negative coset mass beyond its error bound at " + c.str());
    masses.push_back(std::max(m.value, 0.0));
    ids.push_back(nodes_.size());
    nodes_.push_back({c, {}, {}});
  }
  nodes_[id].masses = std::move(masses);
  nodes_[id].child = std::move(ids);
  return nodes_[id];
}

std::size_t IncrementSampler::sample_leaf(const CounterRng& rng, std::uint64_t draw, std::uint64_t step) const {
  std::lock_guard lock(mutex_);
  if (nodes_.empty()) nodes_.push_back({Coset::ball(job_.prime(), job_.dimension(), cap_), {}, {}});
  std::size_t id = 0;
  std::uint64_t level = 0;
  for (long r = cap_; r > -depth_; --r, ++level) {
    const Node& node = expanded(id);
    const auto& raw = node.masses;
    double total = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) total += i == 0 ? raw[i] * perturbation_ : raw[i];
    const double target = rng.uniform(draw, step, level) * total;
    double acc = 0.0;
    std::size_t pick = raw.size() - 1;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      acc += i == 0 ? raw[i] * perturbation_ : raw[i];
      if (target < acc) {
        pick = i;
        break;
      }
    }
    while (raw[pick] == 0.0 && pick > 0) --pick;
    id = node.child[pick];
  }
  return id;
}

Coset IncrementSampler::node_coset(std::size_t id) const {
  std::lock_guard lock(mutex_);
  return nodes_.at(id).coset;
}

Coset IncrementSampler::sample(const CounterRng& rng, std::uint64_t draw, std::uint64_t step) const {
  return node_coset(sample_leaf(rng, draw, step));
}

double IncrementSampler::law(const Coset& c) const {
  if (c.radius_exp() < -depth_) throw std::invalid_argument("coset finer than the sampler depth");
  std::lock_guard lock(mutex_);
  if (nodes_.empty()) nodes_.push_back({Coset::ball(job_.prime(), job_.dimension(), cap_), {}, {}});
  if (!nodes_[0].coset.contains(c)) return 0.0;
  double prob = 1.0;
  std::size_t id = 0;
  for (long r = cap_; r > c.radius_exp(); --r) {
    const Node& node = expanded(id);
    double total = 0.0, chosen = 0.0;
    std::size_t pick = 0;
    for (std::size_t i = 0; i < node.masses.size(); ++i) {
      const double m = i == 0 ? node.masses[i] * perturbation_ : node.masses[i];
      total += m;
      if (nodes_[node.child[i]].coset.contains(c)) {
        chosen = m;
        pick = i;
      }
    }
    prob *= chosen / total;
    id = node.child[pick];
  }
  return prob;
}

PathSample sample_path(const PathConfig& config, std::uint64_t path_id) {
  if (config.times.empty() || config.times.front() != 0.0) throw std::invalid_argument("time grid must start at 0");
  for (std::size_t i = 1; i < config.times.size(); ++i)
    if (!(config.times[i] > config.times[i - 1])) throw std::invalid_argument("time grid must be strictly increasing");
  const auto& e = *config.engine;
  std::map<double, std::unique_ptr<IncrementSampler>> samplers;
  const CounterRng rng(config.seed);
  PathSample out;
  out.seed = config.seed;
  out.times = config.times;
  Coset pos = Coset::ball(e.prime(), e.dimension(), -config.depth);
  out.positions.push_back(pos);
  for (std::size_t i = 1; i < config.times.size(); ++i) {
    const double dt = config.times[i] - config.times[i - 1];
    auto& s = samplers[dt];
    if (!s)
      s = std::make_unique<IncrementSampler>(KernelJob::make(config.engine, dt, config.eps), config.depth,
                                             config.cap_radius);
    const Coset inc = s->sample(rng, path_id, i);
    pos = pos.translated(inc.center());
    out.positions.push_back(pos);
    out.conditioning_masses.push_back(s->conditioning_mass());
    out.cap_radii.push_back(s->cap_radius());
  }
  return out;
}

double chi_square_pvalue(double statistic, std::size_t dof) {
  if (dof == 0) throw std::invalid_argument("chi-square with zero degrees of freedom");
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

SamplerReport validate_sampler(const IncrementSampler& sampler, std::uint64_t seed, std::size_t N,
                               const std::vector<Coset>& regions, unsigned threads) {
  if (!pairwise_disjoint(regions)) throw std::invalid_argument("regions overlap");
  const Coset cap = Coset::ball(sampler.job().prime(), sampler.job().dimension(), sampler.cap_radius());
  SamplerReport rep;
  rep.draws = N;
  rep.regions = regions;
  double covered = 0.0;
  for (const auto& r : regions) {
    if (r.radius_exp() < -sampler.depth()) throw std::invalid_argument("region finer than the sampler depth");
    if (!cap.contains(r)) throw std::invalid_argument("region " + r.str() + " leaves the conditioning ball");
    const double pr = coset_mass(sampler.job(), r).value / sampler.conditioning_mass();
    rep.expected.push_back(pr);
    covered += pr;
  }
  const double rest = 1.0 - covered;
  rep.has_rest = rest > 1e-9;
  if (rep.has_rest) rep.expected.push_back(rest);
  for (double pr : rep.expected)
    if (pr * static_cast<double>(N) < 5.0) throw std::invalid_argument("expected count below 5; use coarser regions");

  const CounterRng rng(seed);
  const unsigned workers = std::max(1U, threads);
  const std::size_t chunk = (N + workers - 1) / workers;
  std::vector<std::unordered_map<std::size_t, std::size_t>> leaves(workers);
  parallel_for(workers, workers, [&](std::size_t w) {
    const std::size_t lo = w * chunk, hi = std::min(N, lo + chunk);
    for (std::size_t d = lo; d < hi; ++d) ++leaves[w][sampler.sample_leaf(rng, d)];
  });
  std::map<std::size_t, std::size_t> merged;
  for (const auto& part : leaves)
    for (const auto& [id, count] : part) merged[id] += count;
  std::vector<std::size_t> partial(rep.expected.size(), 0);
  for (const auto& [id, count] : merged) {
    const Coset leaf = sampler.node_coset(id);
    std::size_t cell = regions.size();
    for (std::size_t i = 0; i < regions.size(); ++i)
      if (regions[i].contains(leaf)) {
        cell = i;
        break;
      }
    if (cell == regions.size() && !rep.has_rest) throw std::logic_error("draw outside every region");
    partial[cell] += count;
  }
  rep.observed = std::move(partial);
  for (std::size_t i = 0; i < rep.expected.size(); ++i) {
    const double E = rep.expected[i] * static_cast<double>(N);
    const double diff = static_cast<double>(rep.observed[i]) - E;
    rep.chi_square += diff * diff / E;
  }
  rep.dof = rep.expected.size() - 1;
  rep.p_value = chi_square_pvalue(rep.chi_square, rep.dof);
  return rep;
}

}  // namespace padicheat
