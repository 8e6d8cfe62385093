#include <doctest.h>

#include <padicheat/heat_kernel.hpp>
#include <padicheat/radial_oracle.hpp>

#include "cases.hpp"
#include "oracles.hpp"

using namespace padicheat;

namespace {

Vector point_1d(unsigned p, std::int64_t u, long k) {
  const std::vector<std::int64_t> v{u};
  return Vector::from_integers(p, v, -k);
}

}  // namespace

TEST_SUITE("heat-kernel") {
  TEST_CASE("radial series oracle agrees with the hand-written sphere sum") {
    for (double alpha : {0.5, 1.0, 2.0})
      for (double t : {0.05, 1.0, 7.0}) {
        for (long k : {-4L, -1L, 0L, 1L, 3L, 6L}) {
          const double a = radial::kernel(2, 1, alpha, t, k), b = oracle::radial_kernel_1d(2, alpha, t, k);
          CHECK(std::abs(a - b) <= 1e-13 * (1.0 + std::abs(b)));
        }
        CHECK(radial::kernel(3, 1, alpha, t, std::nullopt) ==
              doctest::Approx(oracle::radial_kernel_1d(3, alpha, t, std::nullopt)).epsilon(1e-13));
      }
  }

  TEST_CASE("kernel against the radial oracle") {
    for (const auto& [beta, alpha] : std::vector<std::pair<Rational, double>>{{Rational(1, 2), 0.5}, {1, 1.0}, {2, 2.0}}) {
      const auto e = make_engine(SymbolParams(cases::poly_B(), beta));
      for (double t : {0.1, 1.0, 10.0}) {
        const auto job = KernelJob::make(e, t, 1e-10);
        for (long k = -3; k <= 8; ++k) {
          const auto z = kernel_value(job, point_1d(2, 3, k));
          const double o = oracle::radial_kernel_1d(2, alpha, t, k);
          CHECK(std::abs(z.value - o) <= 1e-10 * std::abs(o) + z.err);
        }
        const auto z0 = kernel_value(job, Vector(2, 1));
        CHECK(std::abs(z0.value - oracle::radial_kernel_1d(2, alpha, t, std::nullopt)) <= 1e-10 + z0.err);
      }
    }
  }

  TEST_CASE("Z_t(0) decreases in t") {
    const auto e = make_engine(SymbolParams(cases::poly_A(), Rational(1)));
    double prev = 1e300;
    for (double t : {0.1, 0.5, 1.0, 5.0, 50.0}) {
      const double z = kernel_value(KernelJob::make(e, t), Vector(3, 2)).value;
      CHECK(z < prev);
      prev = z;
    }
  }

  TEST_CASE("masses") {
    for (const auto& c : cases::elliptic()) {
      const auto e = make_engine(c.params);
      for (double t : {0.1, 1.0, 10.0}) {
        const auto job = KernelJob::make(e, t, 1e-10);
        const auto m = kernel_total_mass(job);
        CHECK(std::abs(m.value - 1.0) <= m.err + 1e-8);
        // children of B_0 add up to B_0
        const auto whole = coset_mass(job, Coset::ball(e->prime(), e->dimension(), 0));
        double sum = 0.0, err = whole.err;
        for (const auto& ch : Coset::ball(e->prime(), e->dimension(), 0).children()) {
          const auto v = coset_mass(job, ch);
          sum += v.value;
          err += v.err;
        }
        CHECK(std::abs(sum - whole.value) <= err);
        const auto comp = complement_mass(job, 0);
        CHECK(std::abs(comp.value - (1.0 - whole.value)) <= comp.err + whole.err + 1e-14);
      }
    }
    // radial ball-mass series
    const auto e = make_engine(SymbolParams(cases::poly_B(), Rational(1)));
    const auto job = KernelJob::make(e, 0.7, 1e-12);
    for (long r : {-2L, 0L, 3L})
      CHECK(std::abs(coset_mass(job, Coset::ball(2, 1, r)).value - radial::ball_mass(2, 1, 1.0, 0.7, r)) <= 1e-10);
  }

  TEST_CASE("decay ratio") {
    const auto e = make_engine(SymbolParams(cases::poly_B(), Rational(1)));
    for (double t : {0.1, 1.0}) {
      const auto job = KernelJob::make(e, t);
      double r2 = 0.0, r8 = 0.0;
      for (long k = 1; k <= 8; ++k) {
        const double r = decay_check(job, point_1d(2, 1, k));
        const double o = oracle::radial_kernel_1d(2, 1.0, t, k) * std::pow(2.0, 2.0 * k) / t;
        CHECK(std::abs(r - o) <= 1e-8 * o);
        if (k == 2) r2 = r;
        if (k == 8) r8 = r;
      }
      CHECK(r8 <= 10 * r2);
    }
    CHECK_THROWS(decay_check(KernelJob::make(e, 1.0), Vector(2, 1)));
  }

  TEST_CASE("Chapman-Kolmogorov") {
    const auto e = make_engine(SymbolParams(cases::poly_A(), Rational(1)));
    const auto job = KernelJob::make(e, 1.0, 1e-10);
    for (const auto& x : {Vector(3, 2), Vector::parse(3, {"1/3", "2"}), Vector::parse(3, {"1", "0"})}) {
      const auto r = chapman_residual(job, 0.4, 0.4, x);
      CHECK(r.residual <= r.err_budget + 1e-6);
    }
  }

  TEST_CASE("Levy quantities") {
    // radial case: density at y against the oracle, and its homogeneity
    const auto e = make_engine(SymbolParams(cases::poly_B(), Rational(1)));
    for (long k : {0L, 1L, 3L}) {
      const auto est = levy_density_estimate(*e, point_1d(2, 1, k), {1e-1, 1e-2, 1e-3, 1e-4});
      const double o = oracle::radial_levy_1d(2, 1.0, k);
      CHECK(std::abs(est.direct_limit.value - o) <= 1e-10 * o);
      CHECK(std::abs(est.extrapolated - o) <= 1e-6 * o);
      for (double v : est.values) CHECK(v >= -1e-9);
    }
    const double ratio = oracle::radial_levy_1d(2, 1.0, 1) / oracle::radial_levy_1d(2, 1.0, 2);
    CHECK(ratio == doctest::Approx(std::pow(2.0, 2.0)).epsilon(1e-12));
    CHECK_THROWS(levy_density_estimate(*e, point_1d(2, 1, 0), {1e-3, 1e-2}));
    CHECK_THROWS(levy_density_estimate(*e, Vector(2, 1), {1e-2, 1e-3}));

    // Levy mass outside B_r tends to its limit and vanishes as r grows
    const auto out = levy_mass_outside(KernelJob::make(e, 1e-4, 1e-12), 0);
    CHECK(std::abs(out.value - levy_mass_limit(*e, 0).value) <= 1e-3);
    CHECK(std::abs(levy_mass_limit(*e, 0).value - radial::levy_mass_outside(2, 1, 1.0, 0)) <= 1e-10);
    CHECK(levy_mass_outside(KernelJob::make(e, 1.0), 30).value < 1e-8);
  }

  TEST_CASE("non-elliptic symbols are refused") {
    CHECK_THROWS_AS(make_engine(SymbolParams(cases::poly_C(), Rational(1))), std::invalid_argument);
    const auto e = make_engine(SymbolParams(cases::poly_B(), Rational(1)));
    CHECK_THROWS(KernelJob::make(e, 0.0));
    CHECK_THROWS(KernelJob::make(e, -1.0));
  }
}
