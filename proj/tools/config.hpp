#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <padicheat/symbol.hpp>

namespace padicheat::cli {

/// Every problem found in a config file, one message per violation.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

struct KernelBlock {
  std::vector<double> times{0.1, 1.0, 10.0};
  long k_min = -3;  // ||x|| = p^k for k in [k_min, k_max]
  long k_max = 8;
  std::size_t points_per_sphere = 2;
  bool include_origin = true;
};

struct SemigroupBlock {
  std::vector<double> times{0.05, 1.0, 10.0};
  std::size_t probes = 25;
  long conservativity_radius = 6;
};

struct PathBlock {
  std::vector<double> times{0.0, 0.5, 1.0, 2.0};
  long depth = 2;
  std::optional<long> cap_radius;
  std::size_t paths = 10;
  std::uint64_t seed = 1;
};

struct NegdefBlock {
  std::size_t trials = 200;
  std::size_t m_max = 8;
  std::uint64_t seed = 2024;
  bool negate_symbol = false;  // negative control: test -|f|^beta instead
};

struct LevyBlock {
  long r = 0;
  double t_start = 0.1;
  std::size_t t_steps = 4;  // t_i = t_start 10^{-i}
};

struct SamplerBlock {
  std::size_t draws = 100000;
  long depth = 1;
  double t = 1.0;
};

struct RunConfig {
  std::string name;
  unsigned p = 0;
  std::size_t n = 0;
  std::string polynomial;  // literal, e.g. "x1^2 + 3*x2^2"
  Rational beta = 1;
  std::string beta_text = "1";
  double target_eps = 1e-8;
  std::vector<std::uint64_t> seeds;
  KernelBlock kernel;
  SemigroupBlock semigroup;
  PathBlock paths;
  NegdefBlock negdef;
  LevyBlock levy;
  SamplerBlock sampler;

  EllipticPolynomial make_polynomial() const;
  SymbolParams symbol() const { return SymbolParams(make_polynomial(), beta); }
};

/// Strict: unknown fields, wrong types and out-of-range values are all
/// collected before throwing ConfigError.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::string& path);

/// Parses "3*x1^2 - x1 x2 + 5 x2^2" into monomials in n variables. Throws
/// std::invalid_argument on syntax errors or non-homogeneous input.
std::vector<Monomial> parse_polynomial(const std::string& literal, std::size_t n, unsigned& degree);

}  // namespace padicheat::cli
