#include "drbd/casestudy.hpp"

#include <cmath>

#include "doctest.h"
#include "drbd/errors.hpp"
#include "drbd/reliability.hpp"

using namespace drbd;

TEST_CASE("dbw is the six-factor series with a warm spare") {
  DrbdModel m = dbw_model();
  CHECK(m.root()->op() == Op::NaryAnd);
  CHECK(m.root()->args().size() == 6);
  CHECK(rel_expr(m, 0.0) == 1.0);

  // Product of the five plain blocks and the spare-construct factor.
  double t = 500.0;
  auto exp4 = Distribution::exponential(1e-4);
  double factor = rel_wsp(exp4, SpareSpec(exp4, 0.5), t);
  double expected = std::pow(std::exp(-1e-4 * t), 5) * factor;
  CHECK(rel_expr(m, t) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("dbw overrides replace rates and dormancy") {
  CaseOverrides ov;
  ov.rates["TF"] = 2e-4;
  ov.rates["SC"] = 3e-4;
  ov.dormancy["SC"] = 0.25;
  DrbdModel m = dbw_model(ov);
  CHECK(m.distribution("TF").rate() == 2e-4);
  CHECK(m.spare("SC").active().rate() == 3e-4);
  CHECK(m.spare("SC").dormancy() == 0.25);
  CHECK(m.spare("SC").dormant()->rate() == doctest::Approx(0.25 * 3e-4));

  CaseOverrides bad;
  bad.rates["QQ"] = 1.0;
  CHECK_THROWS_AS(dbw_model(bad), ModelError);
}

TEST_CASE("sen matches its three-factor composition") {
  DrbdModel m = sen_model(true);
  double t = 5e4;
  auto exp5 = Distribution::exponential(1e-5);
  double wsp_factor = rel_wsp(exp5, SpareSpec(exp5, 0.1), t);
  double path = std::exp(-16.0 * 1e-5 * t);
  double paths = 1.0 - (1.0 - path) * (1.0 - path);
  double expected = wsp_factor * wsp_factor * paths;
  CHECK(rel_expr(m, t) == doctest::Approx(expected).epsilon(1e-9));

  // Without spares the endpoint switches are bare blocks.
  DrbdModel plain = sen_model(false);
  double expected_plain = std::exp(-1e-5 * t) * std::exp(-1e-5 * t) * paths;
  CHECK(rel_expr(plain, t) == doctest::Approx(expected_plain).epsilon(1e-9));
}

TEST_CASE("near t with 99% path-element survival the parallel factor dominates") {
  // e^(-16 lambda t) = 0.99  =>  t = -ln(0.99) / (16 lambda)
  double t = -std::log(0.99) / (16.0 * 1e-5);
  DrbdModel m = sen_model(true);
  double total = rel_expr(m, t);

  double path = std::exp(-16.0 * 1e-5 * t);
  double paths = 1.0 - (1.0 - path) * (1.0 - path);
  // The spare-construct deficit is orders of magnitude below the
  // parallel-structure deficit, so the product is driven by the latter.
  CHECK(path == doctest::Approx(0.99).epsilon(1e-12));
  CHECK(std::abs(total - paths) < 0.01 * (1.0 - paths));
}

TEST_CASE("case study names and grids") {
  CHECK(case_study_names().size() == 3);
  CHECK(default_grid("sen").t1 == 2e5);
  CHECK(default_grid("dbw").t1 == 1e4);
  CHECK_THROWS_AS(case_study("unknown"), ModelError);
  CHECK_THROWS_AS(default_grid("unknown"), ModelError);
}
