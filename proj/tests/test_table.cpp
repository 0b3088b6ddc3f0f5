#include <doctest.h>

#include <clocale>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "smallworld/table.hpp"

using namespace smallworld;

TEST_CASE("real formatting") {
  CHECK(format_real(170.66666666) == "170.667");
  CHECK(format_real(0.125) == "0.125");
  CHECK(format_real(2.0) == "2");
  CHECK(format_real(1234567.0) == "1.23457e+06");
  CHECK(format_real(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_cell(Cell{std::int64_t{16777216}}) == "16777216");
}

TEST_CASE("formatting ignores the C locale") {
  const char* previous = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = previous ? previous : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr) CHECK(format_real(0.5) == "0.5");
  std::setlocale(LC_NUMERIC, saved.c_str());
}

TEST_CASE("emit_tsv layout") {
  OutputTable table({"r", "delivery", "stderr", "accept_rate", "overhead"});
  table.add_metadata("seed", "42");
  std::ostringstream empty;
  emit_tsv(table, empty);
  CHECK(empty.str() == "# seed: 42\nr\tdelivery\tstderr\taccept_rate\toverhead\n");

  table.add_row({1.5, 140.25, 1.0, 0.5, 2.0});
  std::ostringstream a, b;
  emit_tsv(table, a);
  emit_tsv(table, b);
  CHECK(a.str() == b.str());
  CHECK(a.str() == "# seed: 42\nr\tdelivery\tstderr\taccept_rate\toverhead\n1.5\t140.25\t1\t0.5\t2\n");

  CHECK_THROWS_AS(table.add_row({1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(emit_tsv(table, std::string("/nonexistent-dir/out.tsv")), std::runtime_error);
}
