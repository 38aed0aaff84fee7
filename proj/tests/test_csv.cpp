#include <doctest.h>

#include <random>
#include <sstream>

#include "qtwick/csv.hpp"
#include "qtwick/errors.hpp"

using namespace qtwick;

TEST_CASE("doubles round-trip through formatDouble") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int k = 0; k < 1000; ++k) {
    const double v = u(rng) / (1 + k);
    CHECK(csv::parseDouble(csv::formatDouble(v)) == v);
  }
  CHECK(csv::formatDouble(0.5) == "0.5");
  CHECK(csv::formatDouble(-1) == "-1");
  CHECK_THROWS_AS(csv::parseDouble("1.5x"), ArgumentError);
  CHECK_THROWS_AS(csv::parseDouble(""), ArgumentError);
  CHECK(csv::parseInteger("-12") == -12);
  CHECK_THROWS_AS(csv::parseInteger("1.0"), ArgumentError);
}

TEST_CASE("quoted fields survive write and read") {
  std::stringstream ss;
  csv::writeRow(ss, {"tuple", "note"});
  csv::writeRow(ss, {"1,2,1,2", "say \"hi\""});
  CHECK(ss.str() == "tuple,note\n\"1,2,1,2\",\"say \"\"hi\"\"\"\n");
  const auto table = csv::read(ss);
  CHECK(table.header == std::vector<std::string>{"tuple", "note"});
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0] == std::vector<std::string>{"1,2,1,2", "say \"hi\""});
}

TEST_CASE("ragged rows are rejected") {
  std::istringstream in("a,b\n1\n");
  CHECK_THROWS_AS(csv::read(in), ArgumentError);
}
