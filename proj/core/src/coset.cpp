#include "padicheat/coset.hpp"

#include <cmath>
#include <stdexcept>

namespace padicheat {

Rational ball_volume(unsigned p, long r, std::size_t n) { return rational_power(p, r * static_cast<long>(n)); }

Coset::Coset(const Vector& center, long radius_exp) : center_(center.reduced(radius_exp)), radius_exp_(radius_exp) {}

Coset Coset::ball(unsigned p, std::size_t n, long radius_exp) { return Coset(Vector(p, n), radius_exp); }

bool Coset::contains(const Vector& y) const {
  auto v = (y - center_).valuation();
  return !v || *v >= -radius_exp_;
}

bool Coset::contains(const Coset& other) const {
  return other.radius_exp_ <= radius_exp_ && contains(other.center_);
}

bool Coset::disjoint(const Coset& other) const {
  return !contains(other) && !other.contains(*this);
}

Rational Coset::volume() const { return ball_volume(prime(), radius_exp_, dimension()); }

double Coset::volume_value() const {
  return std::pow(static_cast<double>(prime()), static_cast<double>(radius_exp_ * static_cast<long>(dimension())));
}

std::vector<Coset> Coset::children() const {
  const unsigned p = prime();
  const std::size_t n = dimension();
  std::size_t count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= p;
  std::vector<Coset> out;
  out.reserve(count);
  std::vector<std::int64_t> digits(n, 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = 0; i < n; ++i) {
      digits[i] = static_cast<std::int64_t>(rest % p);
      rest /= p;
    }
    const Vector offset = Vector::from_integers(p, digits, -radius_exp_);
    out.emplace_back(center_ + offset, radius_exp_ - 1);
  }
  return out;
}

std::string Coset::str() const { return center_.str() + "+B" + std::to_string(radius_exp_); }

BallRelation relation(const Coset& a, const Coset& b) {
  if (a == b) return BallRelation::Equal;
  if (b.contains(a)) return BallRelation::FirstInsideSecond;
  if (a.contains(b)) return BallRelation::SecondInsideFirst;
  return BallRelation::Disjoint;
}

bool pairwise_disjoint(const std::vector<Coset>& cosets) {
  for (std::size_t i = 0; i < cosets.size(); ++i)
    for (std::size_t j = i + 1; j < cosets.size(); ++j)
      if (!cosets[i].disjoint(cosets[j])) return false;
  return true;
}

}  // namespace padicheat
