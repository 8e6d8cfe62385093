#include "padicheat/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace padicheat {

namespace detail {

__extension__ using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, unsigned e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1U) result = mulmod(result, a, m);
    a = mulmod(a, a, m);
    e >>= 1U;
  }
  return result;
}

std::optional<std::uint64_t> small_power(unsigned p, unsigned k) {
  constexpr std::uint64_t limit = std::uint64_t{1} << 62;
  std::uint64_t v = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (v > limit / p) return std::nullopt;
    v *= p;
  }
  return v;
}

}  // namespace detail

namespace {

BigInt pow_mod_big(const BigInt& a, unsigned e, const BigInt& m) {
  BigInt result = 1;
  BigInt base = floor_mod(a, m);
  while (e > 0) {
    if (e & 1U) result = (result * base) % m;
    base = (base * base) % m;
    e >>= 1U;
  }
  return result % m;
}

// Inverse of a unit modulo m via the extended Euclidean algorithm.
BigInt inverse_mod(const BigInt& a, const BigInt& m) {
  BigInt old_r = floor_mod(a, m), r = m;
  BigInt old_s = 1, s = 0;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw std::logic_error("inverse_mod: argument is not a unit");
  return floor_mod(old_s, m);
}

unsigned valuation_of(std::uint64_t v, unsigned p) {
  unsigned k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

}  // namespace

EllipticPolynomial::EllipticPolynomial(unsigned p, std::size_t n, unsigned d, std::vector<Monomial> monomials)
    : p_(p), n_(n), d_(d) {
  if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  if (n == 0) throw std::invalid_argument("dimension must be >= 1");
  if (d == 0) throw std::invalid_argument("degree must be >= 1");
  for (auto& m : monomials) {
    if (m.exponents.size() != n)
      throw std::invalid_argument("monomial has " + std::to_string(m.exponents.size()) + " exponents, expected " +
                                  std::to_string(n));
    const unsigned total = std::accumulate(m.exponents.begin(), m.exponents.end(), 0U);
    if (total != d)
      throw std::invalid_argument("monomial of degree " + std::to_string(total) +
                                  " in a polynomial declared homogeneous of degree " + std::to_string(d));
    if (m.coefficient != 0) monomials_.push_back(std::move(m));
  }
  if (monomials_.empty()) throw std::invalid_argument("polynomial is identically zero");
}

Scalar EllipticPolynomial::evaluate(const Vector& xi) const {
  if (xi.dimension() != n_ || xi.prime() != p_) throw std::invalid_argument("point has the wrong dimension or prime");
  Scalar acc(p_);
  for (const auto& m : monomials_) {
    Scalar term = Scalar::integer(p_, m.coefficient);
    for (std::size_t i = 0; i < n_; ++i)
      for (unsigned e = 0; e < m.exponents[i]; ++e) term = term * xi[i];
    acc = acc + term;
  }
  return acc;
}

std::uint64_t EllipticPolynomial::evaluate_mod(std::span<const std::uint64_t> x, std::uint64_t modulus) const {
  std::uint64_t acc = 0;
  for (const auto& m : monomials_) {
    std::uint64_t term = static_cast<std::uint64_t>(floor_mod(m.coefficient, BigInt(modulus)));
    for (std::size_t i = 0; i < n_ && term != 0; ++i)
      if (m.exponents[i]) term = detail::mulmod(term, detail::powmod(x[i], m.exponents[i], modulus), modulus);
    acc = (acc + term) % modulus;
  }
  return acc;
}

std::uint64_t EllipticPolynomial::partial_mod(std::size_t i, std::span<const std::uint64_t> x,
                                              std::uint64_t modulus) const {
  std::uint64_t acc = 0;
  for (const auto& m : monomials_) {
    if (m.exponents[i] == 0) continue;
    std::uint64_t term = static_cast<std::uint64_t>(floor_mod(m.coefficient * m.exponents[i], BigInt(modulus)));
    for (std::size_t j = 0; j < n_ && term != 0; ++j) {
      const unsigned e = (j == i) ? m.exponents[j] - 1 : m.exponents[j];
      if (e) term = detail::mulmod(term, detail::powmod(x[j], e, modulus), modulus);
    }
    acc = (acc + term) % modulus;
  }
  return acc;
}

BigInt EllipticPolynomial::evaluate_mod(std::span<const BigInt> x, const BigInt& modulus) const {
  BigInt acc = 0;
  for (const auto& m : monomials_) {
    BigInt term = floor_mod(m.coefficient, modulus);
    for (std::size_t i = 0; i < n_; ++i)
      if (m.exponents[i]) term = (term * pow_mod_big(x[i], m.exponents[i], modulus)) % modulus;
    acc = (acc + term) % modulus;
  }
  return acc;
}

BigInt EllipticPolynomial::partial_mod(std::size_t i, std::span<const BigInt> x, const BigInt& modulus) const {
  BigInt acc = 0;
  for (const auto& m : monomials_) {
    if (m.exponents[i] == 0) continue;
    BigInt term = floor_mod(m.coefficient * m.exponents[i], modulus);
    for (std::size_t j = 0; j < n_; ++j) {
      const unsigned e = (j == i) ? m.exponents[j] - 1 : m.exponents[j];
      if (e) term = (term * pow_mod_big(x[j], e, modulus)) % modulus;
    }
    acc = (acc + term) % modulus;
  }
  return acc;
}

std::string EllipticPolynomial::str() const {
  std::string out;
  for (const auto& m : monomials_) {
    if (!out.empty()) out += " + ";
    out += m.coefficient.str();
    for (std::size_t i = 0; i < n_; ++i)
      if (m.exponents[i]) out += "*x" + std::to_string(i + 1) + "^" + std::to_string(m.exponents[i]);
  }
  return out;
}

SymbolParams::SymbolParams(EllipticPolynomial polynomial, const Rational& beta)
    : polynomial_(std::move(polynomial)), beta_(beta), beta_value_(beta.convert_to<double>()) {
  if (beta_ <= 0) throw std::invalid_argument("beta must be positive");
}

Rational symbol_norm(const EllipticPolynomial& f, const Vector& xi) { return f.evaluate(xi).norm(); }

double symbol_value(const SymbolParams& params, const Vector& xi) {
  const auto ord = params.polynomial().evaluate(xi).valuation();
  if (!ord) return 0.0;
  return std::pow(static_cast<double>(params.prime()), -params.beta_value() * static_cast<double>(*ord));
}

std::string to_string(CertificateStatus status) {
  switch (status) {
    case CertificateStatus::Certified: return "certified";
    case CertificateStatus::NotElliptic: return "not-elliptic";
    case CertificateStatus::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

// Newton iteration along one coordinate; the start satisfies
// ord f(x) > 2 ord(df/dx_i), which guarantees convergence in Z_p.
HenselWitness lift_root(const EllipticPolynomial& f, std::span<const std::uint64_t> start, unsigned found_depth,
                        std::size_t coord, unsigned grad_ord, unsigned digits) {
  const unsigned p = f.prime();
  const BigInt work_mod = ipow(p, digits + 3 * grad_ord + 4);
  const BigInt target = ipow(p, digits);
  const BigInt pg = ipow(p, grad_ord);
  std::vector<BigInt> x(start.begin(), start.end());
  for (int iter = 0; iter < 256; ++iter) {
    const BigInt value = f.evaluate_mod(std::span<const BigInt>(x), work_mod);
    if (value % target == 0) break;
    const BigInt grad = f.partial_mod(coord, std::span<const BigInt>(x), work_mod);
    if (grad % pg != 0 || value % pg != 0) throw std::logic_error("Hensel lifting lost its valuation invariant");
    const BigInt unit_part = grad / pg;
    const BigInt step = ((value / pg) * inverse_mod(unit_part, work_mod)) % work_mod;
    x[coord] = floor_mod(x[coord] - step, work_mod);
  }
  HenselWitness w;
  w.residue_root.assign(start.begin(), start.end());
  w.found_depth = found_depth;
  w.lifted_coordinate = coord;
  w.digits = digits;
  for (auto& c : x) w.root.push_back(floor_mod(c, target));
  if (f.evaluate_mod(std::span<const BigInt>(w.root), target) != 0)
    throw std::logic_error("Hensel lifting did not converge");
  return w;
}

}  // namespace

EllipticityCertificate certify_elliptic(const EllipticPolynomial& f, unsigned max_depth) {
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  const unsigned p = f.prime();
  const std::size_t n = f.dimension();

  EllipticityCertificate cert;
  std::vector<std::uint64_t> frontier;  // flattened residue vectors, n entries each
  {
    std::size_t count = 1;
    for (std::size_t i = 0; i < n; ++i) count *= p;
    std::vector<std::uint64_t> c(n);
    for (std::size_t idx = 1; idx < count; ++idx) {
      std::size_t rest = idx;
      for (std::size_t i = 0; i < n; ++i) {
        c[i] = rest % p;
        rest /= p;
      }
      frontier.insert(frontier.end(), c.begin(), c.end());
    }
  }

  std::optional<unsigned> min_ord, max_ord;
  for (unsigned m = 1; m <= max_depth; ++m) {
    cert.depth_reached = m;
    const auto modulus = detail::small_power(p, m);
    if (!modulus) break;
    std::vector<std::uint64_t> next;
    for (std::size_t off = 0; off < frontier.size(); off += n) {
      std::span<const std::uint64_t> c(frontier.data() + off, n);
      const std::uint64_t v = f.evaluate_mod(c, *modulus);
      if (v != 0) {
        const unsigned ord = valuation_of(v, p);
        min_ord = min_ord ? std::min(*min_ord, ord) : ord;
        max_ord = max_ord ? std::max(*max_ord, ord) : ord;
        continue;
      }
      // f vanishes on the class to the current precision: look for a liftable zero
      std::optional<std::size_t> best_coord;
      unsigned best_ord = m;
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t g = f.partial_mod(i, c, *modulus);
        if (g == 0) continue;
        const unsigned go = valuation_of(g, p);
        if (go < best_ord) {
          best_ord = go;
          best_coord = i;
        }
      }
      if (best_coord && m > 2 * best_ord) {
        cert.status = CertificateStatus::NotElliptic;
        cert.witness = lift_root(f, c, m, *best_coord, best_ord, std::max(20U, m + 4));
        return cert;
      }
      const std::uint64_t step = *modulus;
      std::size_t count = 1;
      for (std::size_t i = 0; i < n; ++i) count *= p;
      std::vector<std::uint64_t> child(n);
      for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t rest = idx;
        for (std::size_t i = 0; i < n; ++i) {
          child[i] = c[i] + (rest % p) * step;
          rest /= p;
        }
        next.insert(next.end(), child.begin(), child.end());
      }
    }
    if (next.empty()) {
      cert.status = CertificateStatus::Certified;
      cert.c0 = rational_power(p, -static_cast<long>(*max_ord));
      cert.c1 = rational_power(p, -static_cast<long>(*min_ord));
      cert.depth = *max_ord + 1;
      return cert;
    }
    frontier = std::move(next);
  }
  cert.status = CertificateStatus::Inconclusive;
  return cert;
}

}  // namespace padicheat
