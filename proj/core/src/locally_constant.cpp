#include "padicheat/locally_constant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "padicheat/character.hpp"

namespace padicheat {

namespace {

constexpr double kRelTol = 1e-12;

void check_dims(unsigned p, std::size_t n, const Coset& c) {
  if (c.prime() != p || c.dimension() != n) throw std::invalid_argument("coset does not match the function's p or n");
}

}  // namespace

LocallyConstantFn::LocallyConstantFn(unsigned p, std::size_t n) : p_(p), n_(n) {}

LocallyConstantFn::LocallyConstantFn(unsigned p, std::size_t n, std::vector<Piece> pieces, bool canon)
    : p_(p), n_(n), pieces_(std::move(pieces)) {
  if (canon) canonicalize();
}

LocallyConstantFn LocallyConstantFn::from_pieces(unsigned p, std::size_t n, std::vector<Piece> pieces) {
  std::set<Coset> seen;
  long top = std::numeric_limits<long>::min();
  for (const auto& pc : pieces) {
    check_dims(p, n, pc.coset);
    top = std::max(top, pc.coset.radius_exp());
  }
  for (const auto& pc : pieces)
    if (!seen.insert(pc.coset).second) throw std::invalid_argument("duplicate coset " + pc.coset.str());
  // two balls overlap iff one is an ancestor of (or equal to) the other
  for (const auto& pc : pieces) {
    Coset a = pc.coset;
    while (a.radius_exp() < top) {
      a = a.parent();
      if (seen.count(a)) throw std::invalid_argument("overlapping cosets " + pc.coset.str() + " and " + a.str());
    }
  }
  return LocallyConstantFn(p, n, std::move(pieces), true);
}

LocallyConstantFn LocallyConstantFn::from_overlapping(unsigned p, std::size_t n, std::vector<Piece> pieces) {
  std::map<Coset, Complex> acc;
  long top = std::numeric_limits<long>::min();
  for (const auto& pc : pieces) {
    check_dims(p, n, pc.coset);
    acc[pc.coset] += pc.value;
    top = std::max(top, pc.coset.radius_exp());
  }
  // split every coset that strictly contains another one, until none does
  for (;;) {
    std::set<Coset> to_split;
    for (const auto& [c, v] : acc) {
      Coset a = c;
      while (a.radius_exp() < top) {
        a = a.parent();
        if (acc.count(a)) to_split.insert(a);
      }
    }
    if (to_split.empty()) break;
    for (const auto& c : to_split) {
      const Complex v = acc.at(c);
      acc.erase(c);
      for (const auto& child : c.children()) acc[child] += v;
    }
  }
  std::vector<Piece> out;
  out.reserve(acc.size());
  for (const auto& [c, v] : acc) out.push_back({c, v});
  return LocallyConstantFn(p, n, std::move(out), true);
}

LocallyConstantFn LocallyConstantFn::indicator(const Coset& c, Complex value) {
  return LocallyConstantFn(c.prime(), c.dimension(), {{c, value}}, true);
}

void LocallyConstantFn::canonicalize() {
  double scale = 0.0;
  for (const auto& pc : pieces_) scale = std::max(scale, std::abs(pc.value));
  const double tol = kRelTol * scale;
  std::erase_if(pieces_, [&](const Piece& pc) { return std::abs(pc.value) <= tol; });

  std::size_t family = 1;
  for (std::size_t i = 0; i < n_; ++i) family *= p_;
  bool changed = true;
  while (changed && !pieces_.empty()) {
    changed = false;
    std::map<Coset, std::vector<std::size_t>> by_parent;
    for (std::size_t i = 0; i < pieces_.size(); ++i) by_parent[pieces_[i].coset.parent()].push_back(i);
    std::vector<bool> drop(pieces_.size(), false);
    std::vector<Piece> merged;
    for (const auto& [parent, idx] : by_parent) {
      if (idx.size() != family) continue;
      const Complex v0 = pieces_[idx.front()].value;
      bool equal = true;
      Complex sum = 0.0;
      for (auto i : idx) {
        equal = equal && std::abs(pieces_[i].value - v0) <= tol;
        sum += pieces_[i].value;
      }
      if (!equal) continue;
      for (auto i : idx) drop[i] = true;
      merged.push_back({parent, sum / static_cast<double>(family)});
      changed = true;
    }
    if (!changed) break;
    std::vector<Piece> next;
    for (std::size_t i = 0; i < pieces_.size(); ++i)
      if (!drop[i]) next.push_back(pieces_[i]);
    next.insert(next.end(), merged.begin(), merged.end());
    pieces_ = std::move(next);
  }
  std::sort(pieces_.begin(), pieces_.end(), [](const Piece& a, const Piece& b) { return a.coset < b.coset; });
}

Complex LocallyConstantFn::evaluate(const Vector& x) const {
  for (const auto& pc : pieces_)
    if (pc.coset.contains(x)) return pc.value;
  return 0.0;
}

double LocallyConstantFn::sup_norm() const {
  double s = 0.0;
  for (const auto& pc : pieces_) s = std::max(s, std::abs(pc.value));
  return s;
}

long LocallyConstantFn::support_radius() const {
  if (pieces_.empty()) throw std::logic_error("support_radius of the zero function");
  long R = std::numeric_limits<long>::min();
  for (const auto& pc : pieces_) {
    long r = pc.coset.radius_exp();
    if (!pc.coset.contains_origin()) r = std::max(r, pc.coset.norm_exponent());
    R = std::max(R, r);
  }
  return R;
}

long LocallyConstantFn::resolution() const {
  long r = std::numeric_limits<long>::max();
  for (const auto& pc : pieces_) r = std::min(r, pc.coset.radius_exp());
  return r;
}

LocallyConstantFn LocallyConstantFn::translated(const Vector& a) const {
  std::vector<Piece> out;
  for (const auto& pc : pieces_) out.push_back({pc.coset.translated(a), pc.value});
  return LocallyConstantFn(p_, n_, std::move(out), true);
}

LocallyConstantFn LocallyConstantFn::reflected() const {
  std::vector<Piece> out;
  for (const auto& pc : pieces_) out.push_back({Coset(-pc.coset.center(), pc.coset.radius_exp()), pc.value});
  return LocallyConstantFn(p_, n_, std::move(out), true);
}

LocallyConstantFn LocallyConstantFn::scaled(Complex c) const {
  std::vector<Piece> out;
  for (const auto& pc : pieces_) out.push_back({pc.coset, pc.value * c});
  return LocallyConstantFn(p_, n_, std::move(out), true);
}

LocallyConstantFn LocallyConstantFn::conj() const {
  std::vector<Piece> out;
  for (const auto& pc : pieces_) out.push_back({pc.coset, std::conj(pc.value)});
  return LocallyConstantFn(p_, n_, std::move(out), false);
}

LocallyConstantFn operator+(const LocallyConstantFn& a, const LocallyConstantFn& b) {
  std::vector<Piece> all = a.pieces_;
  all.insert(all.end(), b.pieces_.begin(), b.pieces_.end());
  return LocallyConstantFn::from_overlapping(a.p_, a.n_, std::move(all));
}

LocallyConstantFn operator-(const LocallyConstantFn& a, const LocallyConstantFn& b) { return a + b.scaled(-1.0); }

Complex integrate(const LocallyConstantFn& g) {
  Complex s = 0.0;
  for (const auto& pc : g.pieces()) s += pc.value * pc.coset.volume_value();
  return s;
}

Complex fourier_coset_indicator(const Coset& c, const Vector& x) {
  if (!x.is_zero() && x.norm_exponent() > -c.radius_exp()) return 0.0;
  return c.volume_value() * character(-x.dot(c.center())).value();
}

namespace {

struct FourierTerm {
  Vector center;
  long support;                 // the term lives on B_{-r}
  std::optional<long> phase_k;  // ||center|| = p^k, none for center 0
  Complex weight;
  std::vector<std::uint64_t> scaled;  // center * p^K mod p^{K + Kc}, when phases are done in machine integers
};

// Phases chi(cell . center) as (sum A_i C_i mod p^e) / p^e with A = center p^K,
// C = cell center p^Kc, whenever p^e fits comfortably in 64 bits.
struct PhaseContext {
  bool fast = false;
  unsigned K = 0, Kc = 0;
  std::uint64_t mod = 1;
  std::vector<Complex> roots;  // e^{2 pi i r / mod} when mod is small
};

std::uint64_t scaled_residue(const Scalar& x, unsigned shift, std::uint64_t mod) {
  if (x.is_zero()) return 0;
  const Rational q = x.shifted(static_cast<long>(shift)).to_rational();
  return static_cast<std::uint64_t>(floor_mod(numerator(q), BigInt(mod)));
}

Complex phase_value(const PhaseContext& ctx, const std::vector<std::uint64_t>& cell, const FourierTerm& t) {
  __extension__ typedef unsigned __int128 u128;
  u128 acc = 0;
  for (std::size_t i = 0; i < cell.size(); ++i) acc += static_cast<u128>(cell[i]) * t.scaled[i] % ctx.mod;
  const auto r = static_cast<std::uint64_t>(acc % ctx.mod);
  if (!ctx.roots.empty()) return ctx.roots[r];
  const double ang = 2.0 * M_PI * (static_cast<double>(r) / static_cast<double>(ctx.mod));
  return {std::cos(ang), std::sin(ang)};
}

void fourier_refine(const Coset& cell, const std::vector<const FourierTerm*>& terms, const PhaseContext& ctx,
                    std::vector<Piece>& out) {
  std::vector<const FourierTerm*> inside;
  bool split = false;
  const long rho = cell.radius_exp();
  const bool origin = cell.contains_origin();
  const long k = origin ? std::numeric_limits<long>::min() : cell.center().norm_exponent();
  for (const auto* t : terms) {
    if (rho <= t->support) {
      if (!origin && k > t->support) continue;  // disjoint from B_support
      inside.push_back(t);
      if (t->phase_k && *t->phase_k + rho > 0) split = true;
    } else if (origin) {
      inside.push_back(t);  // the cell strictly contains the support ball
      split = true;
    }
  }
  if (inside.empty()) return;
  if (split) {
    for (const auto& child : cell.children()) fourier_refine(child, inside, ctx, out);
    return;
  }
  Complex v = 0.0;
  if (ctx.fast) {
    std::vector<std::uint64_t> c;
    for (const auto& x : cell.center().coords()) c.push_back(scaled_residue(x, ctx.Kc, ctx.mod));
    for (const auto* t : inside) v += t->weight * phase_value(ctx, c, *t);
  } else {
    for (const auto* t : inside) v += t->weight * character(cell.center().dot(t->center)).value();
  }
  out.push_back({cell, v});
}

}  // namespace

LocallyConstantFn fourier(const LocallyConstantFn& phi) {
  const unsigned p = phi.prime();
  const std::size_t n = phi.dimension();
  if (phi.is_zero()) return LocallyConstantFn(p, n);
  std::vector<FourierTerm> terms;
  long top = std::numeric_limits<long>::min();
  long K = 0;
  for (const auto& pc : phi.pieces()) {
    const long r = pc.coset.radius_exp();
    FourierTerm t{pc.coset.center(), -r, std::nullopt, pc.value * pc.coset.volume_value(), {}};
    if (!pc.coset.center().is_zero()) {
      t.phase_k = pc.coset.center().norm_exponent();
      K = std::max(K, *t.phase_k);
    }
    terms.push_back(std::move(t));
    top = std::max(top, -r);
  }
  PhaseContext ctx;
  ctx.K = static_cast<unsigned>(K);
  ctx.Kc = static_cast<unsigned>(std::max(0L, top));
  const double bits = static_cast<double>(ctx.K + ctx.Kc) * std::log2(static_cast<double>(p));
  if (bits <= 52.0) {
    ctx.fast = true;
    for (unsigned i = 0; i < ctx.K + ctx.Kc; ++i) ctx.mod *= p;
    if (ctx.mod <= (1U << 20))
      for (std::uint64_t r = 0; r < ctx.mod; ++r) {
        const double ang = 2.0 * M_PI * (static_cast<double>(r) / static_cast<double>(ctx.mod));
        ctx.roots.emplace_back(std::cos(ang), std::sin(ang));
      }
    for (auto& t : terms)
      for (const auto& x : t.center.coords()) t.scaled.push_back(scaled_residue(x, ctx.K, ctx.mod));
  }
  std::vector<const FourierTerm*> ptrs;
  for (const auto& t : terms) ptrs.push_back(&t);
  std::vector<Piece> out;
  fourier_refine(Coset::ball(p, n, top), ptrs, ctx, out);
  return LocallyConstantFn::from_pieces(p, n, std::move(out));
}

LocallyConstantFn inverse_fourier(const LocallyConstantFn& phi) { return fourier(phi).reflected(); }

LocallyConstantFn convolve(const LocallyConstantFn& a, const LocallyConstantFn& b) {
  if (a.prime() != b.prime() || a.dimension() != b.dimension()) throw std::invalid_argument("convolve: mismatched spaces");
  std::vector<Piece> out;
  for (const auto& pa : a.pieces())
    for (const auto& pb : b.pieces()) {
      const long r = pa.coset.radius_exp(), s = pb.coset.radius_exp();
      const Coset small = r < s ? pa.coset : pb.coset;
      out.push_back({Coset(pa.coset.center() + pb.coset.center(), std::max(r, s)),
                     pa.value * pb.value * small.volume_value()});
    }
  return LocallyConstantFn::from_overlapping(a.prime(), a.dimension(), std::move(out));
}

LocallyConstantFn multiply(const LocallyConstantFn& a, const LocallyConstantFn& b) {
  if (a.prime() != b.prime() || a.dimension() != b.dimension()) throw std::invalid_argument("multiply: mismatched spaces");
  // within a disjoint family a ball can only meet its ancestors or descendants in the other family
  std::map<Coset, Complex> ia, ib;
  std::set<long> ra, rb;
  for (const auto& pc : a.pieces()) ia.emplace(pc.coset, pc.value), ra.insert(pc.coset.radius_exp());
  for (const auto& pc : b.pieces()) ib.emplace(pc.coset, pc.value), rb.insert(pc.coset.radius_exp());
  std::vector<Piece> out;
  for (const auto& pb : b.pieces())
    for (auto it = ra.lower_bound(pb.coset.radius_exp()); it != ra.end(); ++it) {
      const auto hit = ia.find(Coset(pb.coset.center(), *it));
      if (hit != ia.end()) out.push_back({pb.coset, hit->second * pb.value});
    }
  for (const auto& pa : a.pieces())
    for (auto it = rb.upper_bound(pa.coset.radius_exp()); it != rb.end(); ++it) {
      const auto hit = ib.find(Coset(pa.coset.center(), *it));
      if (hit != ib.end()) out.push_back({pa.coset, pa.value * hit->second});
    }
  return LocallyConstantFn::from_pieces(a.prime(), a.dimension(), std::move(out));
}

Complex inner_product(const LocallyConstantFn& a, const LocallyConstantFn& b) {
  return integrate(multiply(a, b.conj()));
}

}  // namespace padicheat
