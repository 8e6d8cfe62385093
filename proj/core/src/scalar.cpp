#include "padicheat/scalar.hpp"

#include <stdexcept>

namespace padicheat {

BigInt ipow(unsigned p, unsigned k) {
  BigInt result = 1;
  BigInt base = p;
  while (k > 0) {
    if (k & 1U) result *= base;
    base *= base;
    k >>= 1U;
  }
  return result;
}

Rational rational_power(unsigned p, long k) {
  if (k >= 0) return Rational(ipow(p, static_cast<unsigned>(k)));
  return Rational(BigInt(1), ipow(p, static_cast<unsigned>(-k)));
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

BigInt floor_mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [&](std::string_view s) {
    s = trim(s);
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("malformed integer literal");
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9')
        throw std::invalid_argument("malformed integer literal '" + std::string(s) + "'");
    return BigInt(std::string(s.front() == '+' ? s.substr(1) : s));
  };
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string rational_to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Scalar::Scalar(unsigned p) : p_(p) {
  if (p < 2) throw std::invalid_argument("prime must be >= 2");
}

Scalar::Scalar(unsigned p, long valuation, BigInt unit) : p_(p), valuation_(valuation), unit_(std::move(unit)) {
  if (p < 2) throw std::invalid_argument("prime must be >= 2");
  canonicalize();
}

void Scalar::canonicalize() {
  if (unit_ == 0) {
    valuation_ = 0;
    return;
  }
  const BigInt p = p_;
  while (unit_ % p == 0) {
    unit_ /= p;
    ++valuation_;
  }
}

Scalar Scalar::integer(unsigned p, const BigInt& value) { return Scalar(p, 0, value); }

Scalar Scalar::rational(unsigned p, const Rational& value) {
  BigInt num = boost::multiprecision::numerator(value);
  BigInt den = boost::multiprecision::denominator(value);
  long shift = 0;
  const BigInt bp = p;
  while (den % bp == 0) {
    den /= bp;
    --shift;
  }
  if (den != 1)
    throw std::invalid_argument("denominator of " + rational_to_string(value) + " is not a power of " +
                                std::to_string(p));
  return Scalar(p, shift, std::move(num));
}

Scalar Scalar::parse(unsigned p, std::string_view text) { return rational(p, parse_rational(text)); }

Scalar Scalar::power(unsigned p, long k) { return Scalar(p, k, BigInt(1)); }

std::optional<long> Scalar::valuation() const noexcept {
  if (is_zero()) return std::nullopt;
  return valuation_;
}

Rational Scalar::to_rational() const {
  if (is_zero()) return Rational(0);
  return Rational(unit_) * rational_power(p_, valuation_);
}

Rational Scalar::norm() const {
  if (is_zero()) return Rational(0);
  return rational_power(p_, -valuation_);
}

Rational Scalar::fractional_part() const {
  if (is_zero() || valuation_ >= 0) return Rational(0);
  const BigInt digits = floor_mod(unit_, ipow(p_, static_cast<unsigned>(-valuation_)));
  return Rational(digits) * rational_power(p_, valuation_);
}

Scalar Scalar::shifted(long k) const {
  if (is_zero()) return *this;
  Scalar out(*this);
  out.valuation_ += k;
  return out;
}

BigInt Scalar::residue(unsigned digits) const {
  if (is_zero()) return 0;
  if (valuation_ < 0) throw std::domain_error("residue of a non-integral p-adic number");
  if (static_cast<unsigned long>(valuation_) >= digits) return 0;
  const BigInt modulus = ipow(p_, digits);
  return floor_mod(unit_ * ipow(p_, static_cast<unsigned>(valuation_)), modulus);
}

Scalar Scalar::reduced(long radius_exp) const {
  if (is_zero() || valuation_ >= -radius_exp) return Scalar(p_);
  const auto width = static_cast<unsigned>(-radius_exp - valuation_);
  return Scalar(p_, valuation_, floor_mod(unit_, ipow(p_, width)));
}

std::string Scalar::str() const { return rational_to_string(to_rational()); }

Scalar Scalar::operator-() const {
  Scalar out(*this);
  out.unit_ = -out.unit_;
  return out;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) throw std::invalid_argument("mixing p-adic numbers for different primes");
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const long v = std::min(a.valuation_, b.valuation_);
  BigInt u = a.unit_ * ipow(a.p_, static_cast<unsigned>(a.valuation_ - v)) +
             b.unit_ * ipow(a.p_, static_cast<unsigned>(b.valuation_ - v));
  return Scalar(a.p_, v, std::move(u));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) throw std::invalid_argument("mixing p-adic numbers for different primes");
  if (a.is_zero() || b.is_zero()) return Scalar(a.p_);
  return Scalar(a.p_, a.valuation_ + b.valuation_, a.unit_ * b.unit_);
}

bool operator<(const Scalar& a, const Scalar& b) {
  const int sa = a.unit_.sign(), sb = b.unit_.sign();
  if (sa != sb) return sa < sb;
  if (sa == 0) return false;
  // same sign: compare p^va ua with p^vb ub after clearing the smaller power
  if (a.valuation_ <= b.valuation_)
    return a.unit_ < b.unit_ * ipow(a.p_, static_cast<unsigned>(b.valuation_ - a.valuation_));
  return a.unit_ * ipow(a.p_, static_cast<unsigned>(a.valuation_ - b.valuation_)) < b.unit_;
}

}  // namespace padicheat
