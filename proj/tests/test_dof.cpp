#include <doctest.h>

#include <sstream>

#include "blockfade/dof.hpp"
#include "oracles.hpp"

using namespace blockfade;

TEST_SUITE("dof") {

TEST_CASE("constant-model DoF") {
  CHECK(chi_const(2, 3, 4) == 1);
  CHECK(chi_const(1, 1, 1) == 0);
  for (int N = 2; N <= 50; ++N) {
    const Rational v = chi_const(N / 2, N / 2, N);
    CHECK(v <= Rational(N, 4));
    CHECK((v == Rational(N, 4)) == (N % 2 == 0));
  }
}

TEST_CASE("generic DoF and upper bound") {
  CHECK(chi_gen(2, 4) == Rational(3, 2));
  CHECK(chi_gen(7, 1) == 0);
  CHECK(chi_gen(3, 4) == Rational(9, 4));
  CHECK(chi_upper(2, 4) == Rational(3, 2));
  CHECK(chi_upper(1, 2) == Rational(1, 2));
}

TEST_CASE("lower bound for fixed T_eff") {
  CHECK(chi_low(2, 3, 4, 1) == Rational(3, 2));
  CHECK(chi_low(1, 1, 1, 1) == 0);
  for (int N = 2; N <= 8; ++N)
    for (int te = 1; te <= N; ++te)
      if (N % te == 0) CHECK(chi_low(te, 5, N, N / te) <= 0);
}

TEST_CASE("optimized lower bound: closed form") {
  CHECK(t_opt(9, 4, 1) == 3);
  CHECK(chi_low_star(3, 9, 4, 1) == Rational(9, 4));
  for (int N = 2; N <= 8; ++N) CHECK(chi_low_star(4, 6, N, N) == 0);
}

TEST_CASE("closed form agrees with an independent enumeration") {
  for (int N = 1; N <= 10; ++N)
    for (int Q = 1; Q <= N; ++Q)
      for (int T = 1; T <= 20; ++T)
        for (int R = 1; R <= 20; ++R) {
          const Rational closed = chi_low_star(T, R, N, Q);
          REQUIRE(closed == oracle::best_lower_bound(T, R, N, Q));
          // equivalent min-form
          REQUIRE(closed == std::min(chi_upper(T, N), eta(R, N, Q)));
        }
}

TEST_CASE("bounds: ordering, monotonicity, T_opt < N/Q") {
  for (int N = 1; N <= 12; ++N)
    for (int Q = 1; Q <= N; ++Q)
      for (int T = 1; T <= 20; ++T)
        for (int R = 1; R <= 20; ++R) {
          REQUIRE(chi_low_star(T, R, N, Q) <= chi_upper(T, N));
          if (R > 1) REQUIRE(chi_low_star(T, R, N, Q) >= chi_low_star(T, R - 1, N, Q));
          if (N >= 2) REQUIRE(t_opt(R, N, Q) < Rational(N, Q));
        }
}

TEST_CASE("unused outputs") {
  CHECK(unused_outputs(2, 3, 4, 1) == 0);
  CHECK(unused_outputs(1, 1, 2, 1) == 0);
  for (int N = 2; N <= 12; ++N)
    for (int Q = 1; Q < N; ++Q)
      for (int te = 1; te * Q < N; ++te) {
        const Dims base = Dims::make(te, te, N, Q, te);
        for (int R = te; R <= base.receive_cap(); ++R) {
          const long ell = unused_outputs(te, R, N, Q);
          CHECK(ell >= 0);
          CHECK(ell < N - te * Q);
        }
      }
}

TEST_CASE("report for the reference configuration") {
  const DofReport rep = dof_report(Dims::make(2, 3, 4, 1));
  CHECK(rep.M == 2);
  CHECK(rep.chi_const == 1);
  CHECK(rep.chi_gen_upper == Rational(3, 2));
  CHECK(rep.chi_low_star == Rational(3, 2));
  CHECK(rep.chi_low_of_teff == Rational(3, 2));
  CHECK(rep.T_opt == 2);
  CHECK(rep.ell == 0);
  CHECK(rep.theta == 2);
  CHECK(rep.chi_low_star <= rep.chi_gen_upper);
}

TEST_CASE("rational helpers") {
  CHECK(floor_of(Rational(-3, 2)) == -2);
  CHECK(ceil_of(Rational(-3, 2)) == -1);
  CHECK(floor_of(Rational(7, 2)) == 3);
  CHECK(ceil_of(Rational(7, 2)) == 4);
  CHECK(ceil_of(Rational(4)) == 4);
  CHECK(to_fraction(Rational(6, 4)) == "3/2");
  CHECK(to_fraction(Rational(2)) == "2");
  CHECK(format_double(3.992004) == "3.992004");
}

TEST_CASE("ratio curve: unconstrained ratio") {
  const auto rows = figure1_curves(1, 1000, std::nullopt, Execution::Serial);
  REQUIRE(rows.front().N == 2);
  REQUIRE(rows.back().N == 1000);
  CHECK(rows.back().unconstrained == Rational(998001, 250000));
  CHECK(rows[2].unconstrained == Rational(9, 4));
  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK(rows[k].unconstrained > rows[k - 1].unconstrained);
    CHECK(rows[k].unconstrained < 4);
  }
  CHECK_FALSE(rows.back().lower.has_value());
}

TEST_CASE("ratio curve: capped ratios tend to one") {
  const auto rows = figure1_curves(100000, 100000, 3, Execution::Serial);
  REQUIRE(rows.size() == 1);
  CHECK(*rows[0].lower <= *rows[0].upper);
  CHECK(to_double(*rows[0].lower) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(to_double(*rows[0].upper) == doctest::Approx(1.0).epsilon(1e-3));
  const auto near = figure1_curves(50, 50, 3, Execution::Serial);
  CHECK(*near[0].upper - 1 > *rows[0].upper - 1);
}

TEST_CASE("ratio curve: csv and parallel/serial agreement") {
  const auto a = figure1_curves(2, 120, 4, Execution::Serial);
  const auto b = figure1_curves(2, 120, 4, Execution::Parallel);
  std::ostringstream sa, sb;
  write_figure1_csv(sa, a, true);
  write_figure1_csv(sb, b, true);
  CHECK(sa.str() == sb.str());
  std::ostringstream plain;
  write_figure1_csv(plain, figure1_curves(999, 1000, std::nullopt), false);
  CHECK(plain.str() == "N,ratio_unconstrained,ratio_lower,ratio_upper\n999,3.992,,\n1000,3.992004,,\n");
}

TEST_CASE("virtual SIMO constant") {
  const Dims d = Dims::make(2, 3, 4, 1);
  const SimoDecomposition c = virtual_simo_K(constant_model(d), d);
  CHECK(c.K == doctest::Approx(2.0 * (1 + 1e-6)).epsilon(1e-15));
  CHECK(c.min_residual == doctest::Approx(1.0 - 2.0 / (c.K * 2)).epsilon(1e-15));
  CHECK(c.min_residual > 0);

  const Dims one = Dims::make(1, 1, 3, 1);
  ColoringMatrix Z(1, 1, 3, 1);
  Z.stacked()(1, 0) = Complex(0.6, 0.8);
  const SimoDecomposition s = virtual_simo_K(Z, one);
  CHECK(s.K == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(s.residual_variance(1, 0) > 0);
  CHECK(s.residual_variance(1, 0) < 1e-5);
  CHECK(s.residual_variance(0, 0) == 1.0);

  CHECK_THROWS_AS(virtual_simo_K(ColoringMatrix(1, 1, 3, 1), one), InvalidInput);

  const double snr = virtual_simo_snr(c.K, 10.0, d, 200000, 4);
  CHECK(snr <= d.T * c.K * 10.0 * 1.03);
  CHECK(snr == doctest::Approx(c.K * 10.0).epsilon(0.03));
}

}
