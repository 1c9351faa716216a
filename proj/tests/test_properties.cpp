#include "properties.hpp"
#include "support.hpp"

#include <doctest.h>

TEST_CASE("f_n(N) agrees with promenade counts on every fixture") {
  auto r = props::promenade_oracle(BTQ_TEST_FIXTURES, 4);
  INFO(r.summary());
  CHECK(r.ok);
  CHECK(r.checked > 1000);
}

TEST_CASE("f_n(N) commutes with N") {
  auto r = props::commutation(BTQ_TEST_FIXTURES, 4);
  INFO(r.summary());
  CHECK(r.ok);
}

TEST_CASE("Laurent identity for n <= 10, q <= 5") {
  auto r = props::laurent(10, 5);
  INFO(r.summary());
  CHECK(r.ok);
  CHECK(r.checked == 40);
}

TEST_CASE("Moebius action composes") {
  auto r = props::moebius_composition(500, 11);
  INFO(r.summary());
  CHECK(r.ok);
}

TEST_CASE("reduction to the ray round trips") {
  auto r = props::reduce_round_trip(200, 23);
  INFO(r.summary());
  CHECK(r.ok);
}
