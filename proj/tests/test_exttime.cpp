#include "drbd/exttime.hpp"

#include <stdexcept>

#include "doctest.h"

using namespace drbd;

TEST_CASE("finite values are ordered as reals, INF on top") {
  CHECK(ExtTime(3.0) < ExtTime(5.0));
  CHECK(ExtTime(5.0) < ExtTime::inf());
  CHECK(ExtTime::inf() == ExtTime::inf());
  CHECK_FALSE(ExtTime::inf() < ExtTime::inf());
  CHECK(ExtTime(0.0) <= ExtTime(0.0));
}

TEST_CASE("negative or NaN construction is rejected") {
  CHECK_THROWS_AS(ExtTime(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(ExtTime(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(ExtTime(1.0).plus(-0.5), std::invalid_argument);
}

TEST_CASE("min and max with INF as top element") {
  CHECK(ext_min(ExtTime(3.0), ExtTime(5.0)) == ExtTime(3.0));
  CHECK(ext_max(ExtTime(3.0), ExtTime::inf()) == ExtTime::inf());
  CHECK(ext_min(ExtTime::inf(), ExtTime::inf()) == ExtTime::inf());
  CHECK(ext_max(ExtTime(0.0), ExtTime(0.0)) == ExtTime(0.0));
}

TEST_CASE("temporal operators follow the piecewise definitions") {
  CHECK(after(ExtTime(5.0), ExtTime(3.0)) == ExtTime(5.0));
  CHECK(after(ExtTime(3.0), ExtTime(5.0)) == ExtTime::inf());
  CHECK(after(ExtTime(4.0), ExtTime(4.0)) == ExtTime::inf());
  CHECK(incl_after(ExtTime(4.0), ExtTime(4.0)) == ExtTime(4.0));
  CHECK(incl_after(ExtTime(3.0), ExtTime(4.0)) == ExtTime::inf());
  CHECK(simult(ExtTime(4.0), ExtTime(4.0)) == ExtTime(4.0));
  CHECK(simult(ExtTime(4.0), ExtTime(5.0)) == ExtTime::inf());
  CHECK(simult(ExtTime::inf(), ExtTime::inf()) == ExtTime::inf());
}

TEST_CASE("plus shifts finite times and fixes INF") {
  CHECK(ExtTime(2.0).plus(5.0) == ExtTime(7.0));
  CHECK(ExtTime::inf().plus(5.0) == ExtTime::inf());
}
