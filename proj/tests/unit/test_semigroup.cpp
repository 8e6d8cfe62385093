#include <doctest.h>

#include <random>

#include <padicheat/radial_oracle.hpp>
#include <padicheat/semigroup.hpp>

#include "cases.hpp"

using namespace padicheat;

namespace {

SemigroupOperator op(const SymbolParams& params) { return SemigroupOperator(make_engine(params)); }

LocallyConstantFn bump(unsigned p, std::size_t n) {
  // nonnegative, two scales
  auto u = LocallyConstantFn::indicator(Coset::ball(p, n, 0), 0.5);
  std::vector<std::int64_t> c(n, 1);
  return u + LocallyConstantFn::indicator(Coset(Vector::from_integers(p, c), -1), 0.25) +
         LocallyConstantFn::indicator(Coset(Vector::from_integers(p, c, -1), 0), 1.0);
}

}  // namespace

TEST_SUITE("semigroup") {
  TEST_CASE("contraction, positivity, t = 0") {
    for (const auto& c : cases::elliptic()) {
      const auto S = op(c.params);
      const auto u = bump(c.params.prime(), c.params.dimension());
      for (const auto& x : probe_grid(c.params.prime(), c.params.dimension(), 25, 3)) {
        for (double t : {0.01, 1.0, 10.0}) {
          const auto v = S.apply_Tt(u, t, x);
          CHECK(std::abs(v.value) <= u.sup_norm() + v.err);
          CHECK(v.value.real() >= -v.err);
        }
        CHECK(S.apply_Tt(u, 0.0, x).value == u.evaluate(x));
      }
    }
  }

  TEST_CASE("translation invariance") {
    const auto S = op(SymbolParams(cases::poly_A(), Rational(1, 2)));
    const auto u = bump(3, 2);
    const auto a = Vector::parse(3, {"1/3", "5"});
    for (const auto& x : probe_grid(3, 2, 10, 8)) {
      const auto l = S.apply_Tt(u.translated(a), 0.6, x), r = S.apply_Tt(u, 0.6, x - a);
      CHECK(std::abs(l.value - r.value) <= l.err + r.err);
    }
  }

  TEST_CASE("operator on the unit ball: Vladimirov closed form") {
    const auto S = op(SymbolParams(cases::poly_B(), Rational(1)));
    const auto one = LocallyConstantFn::indicator(Coset::ball(2, 1, 0));
    for (long k : {-2L, 0L, 1L, 2L, 5L}) {
      const std::vector<std::int64_t> v{1};
      const auto x = Vector::from_integers(2, v, -k);
      const auto a = S.apply_operator(one, x);
      const double closed = radial::vladimirov_unit_ball(2, k), series = radial::operator_on_unit_ball(2, 1, 1.0, k);
      CHECK(std::abs(a.value.real() - closed) <= 1e-10);
      CHECK(std::abs(series - closed) <= 1e-10);
    }
    CHECK(std::abs(S.apply_operator(one, Vector(2, 1)).value.real() - radial::vladimirov_unit_ball(2, std::nullopt)) <=
          1e-10);
  }

  TEST_CASE("eigenfunction Cauchy case") {
    // u0 = F^{-1} 1_C with C = (1,0) + 3 Z_3^2, on which |f| = 1
    const auto S = op(SymbolParams(cases::poly_A(), Rational(1)));
    const std::vector<std::int64_t> c{1, 0};
    const auto u0 = inverse_fourier(LocallyConstantFn::indicator(Coset(Vector::from_integers(3, c), -1)));
    for (const auto& x : probe_grid(3, 2, 8, 2)) {
      const double t = 0.7;
      const auto r = S.cauchy_residual(u0, t, x, 1e-5);
      CHECK(r.residual <= 1e-10);
      const auto sol = S.solve_cauchy(u0, t, x);
      CHECK(std::abs(sol.value - std::exp(-t) * u0.evaluate(x)) <= sol.err + 1e-14);
      const auto Au = S.apply_operator(u0, x);
      CHECK(std::abs(Au.value - u0.evaluate(x)) <= Au.err + 1e-14);
    }
  }

  TEST_CASE("central difference order") {
    const auto S = op(SymbolParams(cases::poly_B(), Rational(1)));
    const auto u = bump(2, 1);
    const auto x = Vector::parse(2, {"1/2"});
    double prev = S.cauchy_residual(u, 0.5, x, 1e-2).residual;
    for (double h : {5e-3, 2.5e-3}) {
      const double r = S.cauchy_residual(u, 0.5, x, h).residual;
      CHECK(prev / r >= 3.0);
      CHECK(prev / r <= 5.0);
      prev = r;
    }
    CHECK_THROWS(S.cauchy_residual(u, 0.5, x, 0.6));
  }

  TEST_CASE("generator consistency at small t") {
    const auto S = op(SymbolParams(cases::poly_A(), Rational(1)));
    const auto u = bump(3, 2);
    const auto x = Vector::parse(3, {"1", "1"});
    const auto Au = S.apply_operator(u, x).value;
    double prev = 1e300;
    for (double t : {1e-2, 1e-3, 1e-4}) {
      const auto diff = (S.apply_Tt(u, t, x).value - u.evaluate(x)) / t;
      const double gap = std::abs(diff + Au);
      CHECK(gap < prev);
      CHECK(gap <= 10 * t * (1.0 + std::abs(Au)));
      prev = gap;
    }
  }

  TEST_CASE("semigroup law") {
    const auto S = op(SymbolParams(cases::poly_A(), Rational(1, 2)));
    const auto u = bump(3, 2);
    for (const auto& x : probe_grid(3, 2, 5, 6)) {
      const auto two = S.apply_twice(u, 0.3, 0.5, x);
      const auto one = S.apply_Tt(u, 0.8, x);
      CHECK(std::abs(two.value - one.value) <= 1e-6 + two.err + one.err);
    }
  }

  TEST_CASE("transition function") {
    const auto S = op(SymbolParams(cases::poly_B(), Rational(1)));
    const auto x = Vector::parse(2, {"3/4"});
    CHECK(S.transition_probability({x, {Coset(x, -5)}, 0.0}).value == 1.0);
    CHECK(S.transition_probability({x, {Coset(x + Vector::parse(2, {"1"}), -5)}, 0.0}).value == 0.0);
    const std::vector<Coset> E = Coset::ball(2, 1, 1).children();
    const auto whole = S.transition_probability({x, {Coset::ball(2, 1, 1)}, 0.5});
    const auto parts = S.transition_probability({x, E, 0.5});
    CHECK(std::abs(whole.value - parts.value) <= whole.err + parts.err);
    CHECK_THROWS(S.transition_probability({x, {Coset::ball(2, 1, 1), Coset::ball(2, 1, 0)}, 0.5}));
    const auto g1 = S.stochastic_continuity_gap(0, 1e-3), g2 = S.stochastic_continuity_gap(0, 1e-1);
    CHECK(g1.value < g2.value);
    CHECK(S.stochastic_continuity_gap(0, 0.0).value == 0.0);
  }

  TEST_CASE("sesquilinear form basics") {
    const auto S = op(SymbolParams(cases::poly_A(), Rational(1)));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> val(-1, 1);
    auto rnd = [&] {
      LocallyConstantFn g(3, 2);
      for (int i = 0; i < 3; ++i) {
        const std::vector<std::int64_t> c{i, 2 * i + 1};
        g = g + LocallyConstantFn::indicator(Coset(Vector::from_integers(3, c, -1), -i), {val(rng), val(rng)});
      }
      return g;
    };
    for (int i = 0; i < 5; ++i) {
      const auto g = rnd(), h = rnd();
      const auto gg = S.beta_form(g, g);
      CHECK(gg.value.real() >= -gg.err);
      CHECK(std::abs(gg.value.imag()) <= gg.err + 1e-14);
      const auto gh = S.beta_form(g, h), hg = S.beta_form(h, g);
      CHECK(std::abs(gh.value - std::conj(hg.value)) <= gh.err + hg.err + 1e-13);
    }
  }

  TEST_CASE("sesquilinear form: constant g near supp h") {
    const auto S = op(SymbolParams(cases::poly_B(), Rational(1)));
    // h with mean zero inside a ball where g is constant: the form vanishes
    const auto g = LocallyConstantFn::indicator(Coset::ball(2, 1, 0));
    const auto h = LocallyConstantFn::indicator(Coset::ball(2, 1, -2)) -
                   LocallyConstantFn::indicator(Coset(Vector::parse(2, {"2"}), -2));
    const auto v = S.beta_form(g, h);
    CHECK(std::abs(v.value) <= v.err + 1e-14);
    // without mean zero it does not: g = 1 on Z_2 ⊇ 2 Z_2 = supp h, yet
    // beta(g, h) = (1/2) ∫_{Z_2} |xi| d xi = 1/3
    const auto h2 = LocallyConstantFn::indicator(Coset::ball(2, 1, -1));
    const auto w = S.beta_form(g, h2);
    CHECK(w.value.real() == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  }

  TEST_CASE("probe helpers") {
    const auto grid = probe_grid(3, 2, 100, 1);
    CHECK(grid.size() == 100);
    CHECK(grid[0].is_zero());
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(std::abs(grid[i].norm_exponent()) <= 3);
    const auto sp = sphere_probes(2, 1, 8, 4);
    for (const auto& x : sp) CHECK(x.norm_exponent() == 8);
    for (std::size_t i = 1; i < sp.size(); ++i) CHECK_FALSE(sp[i] == sp[0]);
  }
}
