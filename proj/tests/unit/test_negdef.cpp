#include <doctest.h>

#include <random>

#include <padicheat/negdef.hpp>
#include <padicheat/radial_oracle.hpp>

#include "cases.hpp"
#include "oracles.hpp"

using namespace padicheat;

TEST_SUITE("negdef") {
  TEST_CASE("matrix entries") {
    const SymbolParams P(cases::poly_A(), Rational(1));
    const auto M = negdef_matrix(P, {Vector::parse(3, {"1", "0"}), Vector::parse(3, {"0", "1"})});
    CHECK(M(0, 0) == doctest::Approx(2.0));
    CHECK(M(1, 1) == doctest::Approx(2.0 / 3.0));
    CHECK(M(0, 1) == doctest::Approx(1.0 / 3.0));
    CHECK(M(1, 0) == M(0, 1));
    const auto one = negdef_matrix(P, {Vector::parse(3, {"1/3", "1"})});
    CHECK(one(0, 0) == doctest::Approx(2.0 * symbol_value(P, Vector::parse(3, {"1/3", "1"}))));
  }

  TEST_CASE("Jacobi eigenvalues") {
    SymmetricMatrix I{3, {1, 0, 0, 0, 1, 0, 0, 0, 1}};
    CHECK(min_eigenvalue(I) == doctest::Approx(1.0));
    SymmetricMatrix D{2, {2, 0, 0, 2.0 / 3.0}};
    CHECK(min_eigenvalue(D) == doctest::Approx(2.0 / 3.0));
    CHECK_THROWS(min_eigenvalue(SymmetricMatrix{2, {1, 2, 3, 4}}));
    CHECK_THROWS(min_eigenvalue(SymmetricMatrix{0, {}}));

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 8;
      SymmetricMatrix A{n, std::vector<double>(n * n)};
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) A(i, j) = A(j, i) = u(rng);
      const auto ev = jacobi_eigenvalues(A);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ev[i] - oracle::bisect_eigenvalue(A.data, n, i)) <= 1e-9);
    }
  }

  TEST_CASE("shipped symbols are negative definite") {
    for (const auto& c : cases::elliptic()) {
      const auto rep = verify_negdef(c.params, 200, 8, 2024);
      CHECK(rep.passed);
      CHECK(rep.trials.size() == 200);
      CHECK(rep.trials.front().points.size() == 1);
    }
  }

  TEST_CASE("corrupted symbol fails at m = 1") {
    const SymbolParams P(cases::poly_A(), Rational(1));
    const auto rep = verify_negdef([&](const Vector& x) { return -symbol_value(P, x); }, 3, 2, 10, 8, 1);
    CHECK_FALSE(rep.passed);
    CHECK(rep.first_failure == 0);
    CHECK(rep.trials[0].points.size() == 1);
  }

  TEST_CASE("equivalence probe") {
    const auto e = make_engine(SymbolParams(cases::poly_A(), Rational(1)));
    const std::vector<double> ts{1e-1, 1e-2, 1e-3, 1e-4};
    const auto pr = equivalence_probe(e, 0, ts);
    CHECK(pr.limit_estimate > 0.0);
    CHECK(pr.cauchy_halving);
    CHECK_FALSE(pr.condition_i);
    CHECK_FALSE(pr.condition_ii);
    CHECK_FALSE(pr.condition_iii);
    CHECK(pr.representation == "no");
    // probe monotone in r
    const auto pr1 = equivalence_probe(e, 1, ts);
    CHECK(pr1.limit_estimate <= pr.limit_estimate);
    CHECK_THROWS(equivalence_probe(e, 0, {1e-3, 1e-2}));

    // radial limit against the Levy series
    const auto eb = make_engine(SymbolParams(cases::poly_B(), Rational(1)));
    const auto rb = equivalence_probe(eb, 0, ts);
    const double o = radial::levy_mass_outside(2, 1, 1.0, 0);
    CHECK(std::abs(rb.limit_estimate - o) <= 1e-6 * o);
  }

  TEST_CASE("constant-symbol control") {
    // psi = c: the semigroup is e^{-tc} delta_0, nothing leaves B_0
    const double c = 0.7;
    const auto pr = equivalence_probe([](double) { return 0.0; }, 0, {1e-1, 1e-2, 1e-3});
    CHECK(pr.condition_i);
    CHECK(pr.condition_iii);
    CHECK(pr.representation == "yes (l = q = 0)");
    const auto rep = verify_negdef([&](const Vector&) { return c; }, 3, 2, 20, 6, 3);
    CHECK(rep.passed);
  }
}
