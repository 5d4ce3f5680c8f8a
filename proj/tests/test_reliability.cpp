#include "drbd/reliability.hpp"

#include <cmath>

#include "doctest.h"
#include "drbd/errors.hpp"

using namespace drbd;

namespace {

// Closed-form warm-spare reliability for identical exponential(rate)
// main/active laws and dormancy a > 0 (limit a -> 0 is the Erlang-2
// survival), derived by integrating the two failure routes analytically.
double wsp_exponential_closed_form(double rate, double a, double t) {
  double x = rate * t;
  if (a == 0.0) return std::exp(-x) * (1.0 + x);
  return std::exp(-x) * (1.0 + (1.0 - std::exp(-a * x)) / a);
}

}  // namespace

TEST_CASE("rel_basic closed forms") {
  auto e01 = Distribution::exponential(0.1);
  CHECK(rel_basic(e01, 0.0) == 1.0);
  CHECK(rel_basic(e01, 1.0) == doctest::Approx(std::exp(-0.1)).epsilon(1e-12));
  // Weibull with shape 1 reduces to an exponential.
  auto w = Distribution::weibull(1.0, 10.0);
  CHECK(rel_basic(w, 1.0) == doctest::Approx(std::exp(-0.1)).epsilon(1e-12));
  CHECK_THROWS_AS(rel_basic(e01, -0.5), std::invalid_argument);
}

TEST_CASE("series and parallel arithmetic") {
  double r1 = std::exp(-0.1);
  double r2 = std::exp(-0.2);
  CHECK(rel_series({r1, r2}) == doctest::Approx(std::exp(-0.3)).epsilon(1e-12));
  CHECK(rel_series({1.0}) == 1.0);
  CHECK(rel_parallel({r1, std::exp(-0.2)}) ==
        doctest::Approx(1.0 - (1.0 - r1) * (1.0 - r2)).epsilon(1e-12));
  CHECK_THROWS_AS(rel_series({}), StructureError);
  CHECK_THROWS_AS(rel_parallel({}), StructureError);
  CHECK_THROWS_AS(rel_series({1.5}), std::invalid_argument);
}

TEST_CASE("long products go through the log path without drift") {
  std::vector<double> rels(40, std::exp(-0.1));
  CHECK(rel_series(rels) == doctest::Approx(std::exp(-4.0)).epsilon(1e-10));
  std::vector<double> small(40, 0.05);
  double direct = 1.0;
  for (double r : small) direct *= 1.0 - r;
  CHECK(rel_parallel(small) == doctest::Approx(1.0 - direct).epsilon(1e-10));
  std::vector<double> with_zero(40, 0.9);
  with_zero[17] = 0.0;
  CHECK(rel_series(with_zero) == 0.0);
}

TEST_CASE("nested reliability matches the alternating products") {
  double path = std::exp(-0.3);
  auto ps = NestedIndex::two_level(StructKind::Parallel, {{"A", "B"}, {"C", "D"}});
  auto leaf = [&](const std::string& id) -> double {
    if (id == "A" || id == "C") return std::exp(-0.1);
    return std::exp(-0.2);
  };
  CHECK(rel_nested(ps, leaf) == doctest::Approx(1.0 - (1.0 - path) * (1.0 - path)).epsilon(1e-12));

  auto all_ones = [](const std::string&) { return 1.0; };
  CHECK(rel_nested(ps, all_ones) == 1.0);

  NestedIndex::Groups4 singles;
  for (const char* id : {"A", "B", "C", "D"}) singles.push_back({{{{id}}}});
  auto four = NestedIndex::four_level(singles);
  CHECK(rel_nested(four, leaf) == doctest::Approx(std::exp(-0.6)).epsilon(1e-12));
}

TEST_CASE("quadrature basics") {
  auto one = [](double) { return 1.0; };
  CHECK(integrate(one, 0.0, 1.0, 1e-9).value == doctest::Approx(1.0).epsilon(1e-9));
  auto decay = [](double x) { return std::exp(-x); };
  CHECK(integrate(decay, 0.0, 1.0, 1e-10).value ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-9));
  CHECK(integrate(decay, 2.0, 2.0, 1e-9).value == 0.0);
  CHECK_THROWS_AS(integrate(decay, 1.0, 0.0, 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(integrate(one, 0.0, 1.0, 0.0), std::invalid_argument);

  // Depth cap: an oscillatory integrand at an unreachable tolerance.
  auto wiggle = [](double x) { return std::sin(50.0 * x); };
  CHECK_THROWS_AS(integrate(wiggle, 0.0, 3.0, 1e-9, 2), NumericError);

  // Non-finite integrands are rejected.
  auto pole = [](double x) { return 1.0 / x; };
  CHECK_THROWS_AS(integrate(pole, 0.0, 1.0, 1e-6), NumericError);
}

TEST_CASE("pdf integrates to the cdf") {
  for (const auto& d : {Distribution::exponential(0.7), Distribution::weibull(2.0, 1.5),
                        Distribution::weibull(1.0, 2.0)}) {
    for (double t : {0.5, 1.0, 3.0}) {
      double integral = integrate([&](double x) { return d.pdf(x); }, 0.0, t, 1e-10).value;
      CHECK(integral == doctest::Approx(d.cdf(t)).epsilon(1e-8));
    }
  }
}

TEST_CASE("rel_after matches the exponential closed form") {
  auto fx = [](double x) { return std::exp(-x); };
  auto Fy = [](double x) { return 1.0 - std::exp(-x); };
  // 1 - [(1 - e^-t) - (1 - e^-2t)/2]
  for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    double expected = std::exp(-t) + 0.5 * (1.0 - std::exp(-2.0 * t));
    CHECK(rel_after(fx, Fy, t) == doctest::Approx(expected).epsilon(1e-9));
  }
  CHECK(rel_after(fx, Fy, 0.0) == 1.0);
  auto never_before = [](double) { return 0.0; };
  CHECK(rel_after(fx, never_before, 1.0) == 1.0);
}

TEST_CASE("spare formulas match their closed forms") {
  auto exp1 = Distribution::exponential(1.0);

  SUBCASE("hot spare equals the parallel arrangement") {
    SpareSpec hot(exp1, 1.0);
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      double parallel = rel_parallel({std::exp(-t), std::exp(-t)});
      CHECK(rel_wsp(exp1, hot, t, 1e-13) == doctest::Approx(parallel).epsilon(1e-11));
    }
  }

  SUBCASE("cold spare equals the Erlang-2 survival and rel_csp") {
    SpareSpec cold(exp1, 0.0);
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      double expected = std::exp(-t) * (1.0 + t);
      CHECK(rel_wsp(exp1, cold, t) == doctest::Approx(expected).epsilon(1e-8));
      CHECK(rel_csp(exp1, exp1, t) == doctest::Approx(expected).epsilon(1e-8));
      CHECK(std::abs(rel_wsp(exp1, cold, t) - rel_csp(exp1, exp1, t)) <= 2e-9);
    }
    CHECK(rel_wsp(exp1, cold, 0.0) == 1.0);
    CHECK(rel_csp(exp1, exp1, 0.0) == 1.0);
  }

  SUBCASE("warm spare closed form at dormancy 0.5") {
    SpareSpec warm(exp1, 0.5);
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      CHECK(rel_wsp(exp1, warm, t) ==
            doctest::Approx(wsp_exponential_closed_form(1.0, 0.5, t)).epsilon(1e-8));
    }
  }

  SUBCASE("a spare that cannot fail before t keeps the system alive") {
    auto frozen = Distribution::user_defined([](double u) { return u < 10.0 ? 0.0 : 1.0; },
                                             [](double) { return 0.0; },
                                             [](double) { return 100.0; });
    CHECK(rel_csp(exp1, frozen, 1.0) == 1.0);
  }
}

TEST_CASE("spare ordering: cold >= warm >= hot, hot = parallel") {
  auto exp1 = Distribution::exponential(1.0);
  double t = 1.0;
  double cold = rel_wsp(exp1, SpareSpec(exp1, 0.0), t);
  double warm = rel_wsp(exp1, SpareSpec(exp1, 0.5), t);
  double hot = rel_wsp(exp1, SpareSpec(exp1, 1.0), t, 1e-13);
  CHECK(cold >= warm);
  CHECK(warm >= hot);
  CHECK(cold == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-9));
  CHECK(std::abs(hot - rel_parallel({std::exp(-1.0), std::exp(-1.0)})) < 1e-11);
}

TEST_CASE("reliability curves are monotone in t and bounded") {
  auto exp1 = Distribution::exponential(1.0);
  SpareSpec warm(exp1, 0.3);
  double prev = 1.0;
  for (int i = 0; i <= 40; ++i) {
    double t = 0.1 * i;
    double r = rel_wsp(exp1, warm, t);
    CHECK(r >= 0.0);
    CHECK(r <= 1.0 + 1e-12);
    CHECK(r <= prev + 1e-9);
    prev = r;
  }
}

TEST_CASE("rel_expr composes and rejects non-read-once structure") {
  DrbdModel m("sys");
  m.add_block("A", Distribution::exponential(0.1));
  m.add_block("B", Distribution::exponential(0.2));
  m.add_spare("S", SpareSpec(Distribution::exponential(1.0), 0.0));
  m.set_root(Expr::and_(Expr::var("A"), Expr::var("B"))).finalize();
  CHECK(rel_expr(m, 1.0) == doctest::Approx(std::exp(-0.3)).epsilon(1e-10));

  DrbdModel rep("repeat");
  rep.add_block("A", Distribution::exponential(0.1));
  rep.set_root(Expr::and_(Expr::var("A"), Expr::var("A"))).finalize();
  CHECK_THROWS_WITH_AS(rel_expr(rep, 1.0), doctest::Contains("simulate"), ModelError);

  DrbdModel temporal("temporal");
  temporal.add_block("A", Distribution::exponential(0.1));
  temporal.add_block("B", Distribution::exponential(0.2));
  temporal.set_root(Expr::after(Expr::var("A"), Expr::var("B"))).finalize();
  CHECK_THROWS_WITH_AS(rel_expr(temporal, 1.0), doctest::Contains("simulate"), ModelError);

  // Composite wsp mains have no closed-form density.
  DrbdModel wide("wide");
  wide.add_block("A", Distribution::exponential(0.1));
  wide.add_block("B", Distribution::exponential(0.2));
  wide.add_spare("S", SpareSpec(Distribution::exponential(1.0), 0.5));
  wide.set_root(Expr::wsp(Expr::and_(Expr::var("A"), Expr::var("B")), "S")).finalize();
  CHECK_THROWS_AS(rel_expr(wide, 1.0), ModelError);

  // Constants and hot-spare composition.
  DrbdModel consts("consts");
  consts.add_block("A", Distribution::exponential(0.1));
  consts.add_spare("H", SpareSpec(Distribution::exponential(0.2), 1.0));
  consts.set_root(Expr::nary_and({Expr::hsp(Expr::var("A"), "H"), Expr::never()})).finalize();
  double expected = rel_parallel({std::exp(-0.1), std::exp(-0.2)});
  CHECK(rel_expr(consts, 1.0) == doctest::Approx(expected).epsilon(1e-10));

  CHECK_THROWS_AS(rel_expr(m, -1.0), std::invalid_argument);
}

TEST_CASE("rel_series and rel_parallel bracket their inputs") {
  std::vector<double> rels = {0.9, 0.6, 0.75};
  CHECK(rel_series(rels) <= 0.6);
  CHECK(rel_parallel(rels) >= 0.9);
}
