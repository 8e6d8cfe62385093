#include "padicheat/vector.hpp"

#include <algorithm>
#include <stdexcept>

namespace padicheat {

Vector::Vector(unsigned p, std::size_t n) : p_(p), coords_(n, Scalar(p)) {
  if (n == 0) throw std::invalid_argument("dimension must be >= 1");
}

Vector::Vector(unsigned p, std::vector<Scalar> coords) : p_(p), coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("dimension must be >= 1");
  for (const auto& c : coords_)
    if (c.prime() != p_) throw std::invalid_argument("coordinates use different primes");
}

Vector Vector::parse(unsigned p, const std::vector<std::string>& coords) {
  std::vector<Scalar> out;
  out.reserve(coords.size());
  for (const auto& c : coords) out.push_back(Scalar::parse(p, c));
  return Vector(p, std::move(out));
}

Vector Vector::from_integers(unsigned p, std::span<const std::int64_t> values, long shift) {
  std::vector<Scalar> out;
  out.reserve(values.size());
  for (auto v : values) out.push_back(Scalar::integer(p, BigInt(v)).shifted(shift));
  return Vector(p, std::move(out));
}

bool Vector::is_zero() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& c) { return c.is_zero(); });
}

std::optional<long> Vector::valuation() const noexcept {
  std::optional<long> best;
  for (const auto& c : coords_) {
    auto v = c.valuation();
    if (v && (!best || *v < *best)) best = v;
  }
  return best;
}

Rational Vector::norm() const {
  auto v = valuation();
  if (!v) return Rational(0);
  return rational_power(p_, -*v);
}

long Vector::norm_exponent() const {
  auto v = valuation();
  if (!v) throw std::domain_error("norm exponent of the zero vector");
  return -*v;
}

void Vector::check_compatible(const Vector& other) const {
  if (p_ != other.p_ || coords_.size() != other.coords_.size())
    throw std::invalid_argument("vector dimension or prime mismatch");
}

Vector Vector::operator-() const {
  std::vector<Scalar> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(-c);
  return Vector(p_, std::move(out));
}

Vector operator+(const Vector& a, const Vector& b) {
  a.check_compatible(b);
  std::vector<Scalar> out;
  out.reserve(a.coords_.size());
  for (std::size_t i = 0; i < a.coords_.size(); ++i) out.push_back(a.coords_[i] + b.coords_[i]);
  return Vector(a.p_, std::move(out));
}

Vector operator-(const Vector& a, const Vector& b) {
  a.check_compatible(b);
  std::vector<Scalar> out;
  out.reserve(a.coords_.size());
  for (std::size_t i = 0; i < a.coords_.size(); ++i) out.push_back(a.coords_[i] - b.coords_[i]);
  return Vector(a.p_, std::move(out));
}

Vector Vector::scaled(const Scalar& c) const {
  std::vector<Scalar> out;
  out.reserve(coords_.size());
  for (const auto& x : coords_) out.push_back(x * c);
  return Vector(p_, std::move(out));
}

Vector Vector::shifted(long k) const {
  std::vector<Scalar> out;
  out.reserve(coords_.size());
  for (const auto& x : coords_) out.push_back(x.shifted(k));
  return Vector(p_, std::move(out));
}

Scalar Vector::dot(const Vector& other) const {
  check_compatible(other);
  Scalar acc(p_);
  for (std::size_t i = 0; i < coords_.size(); ++i) acc = acc + coords_[i] * other.coords_[i];
  return acc;
}

Vector Vector::reduced(long radius_exp) const {
  std::vector<Scalar> out;
  out.reserve(coords_.size());
  for (const auto& x : coords_) out.push_back(x.reduced(radius_exp));
  return Vector(p_, std::move(out));
}

Vector::UnitDecomposition Vector::unit_residues(unsigned digits) const {
  auto ord = valuation();
  if (!ord) throw std::domain_error("unit decomposition of the zero vector");
  UnitDecomposition out;
  out.ord = *ord;
  out.residues.reserve(coords_.size());
  for (const auto& x : coords_) {
    const BigInt r = x.shifted(-*ord).residue(digits);
    out.residues.push_back(static_cast<std::uint64_t>(r));
  }
  return out;
}

std::string Vector::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ';';
    out += coords_[i].str();
  }
  return out + ")";
}

bool operator<(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(), b.coords_.end());
}

}  // namespace padicheat
