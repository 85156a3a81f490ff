#include <doctest.h>

#include <sstream>

#include "phimdp/history.hpp"
#include "phimdp/rng.hpp"

using namespace phimdp;

namespace {
Alphabets binary() { return Alphabets{2, 2, {0.0, 1.0}}; }
}  // namespace

TEST_CASE("append grows the history one step at a time") {
  History h(binary(), 1, 0);
  CHECK(h.length() == 0);
  h.append_value(0, 1, 0.0);
  CHECK(h.length() == 1);
  for (int i = 0; i < 4; ++i) h.append(1, 0, 1);
  CHECK(h.length() == 5);
  h.append(0, 0, 0);
  CHECK(h.length() == 6);
  CHECK(h.action_at(1) == 0);
  CHECK(h.observation_at(1) == 1);  // initial observation
  CHECK(h.observation_at(2) == 1);
  CHECK(h.reward_value_at(3) == 1.0);
}

TEST_CASE("out-of-alphabet symbols are rejected with a diagnostic") {
  History h(binary(), 0, 0);
  CHECK_THROWS_AS(h.append(2, 0, 0), std::invalid_argument);  // action == |A|
  CHECK_THROWS_AS(h.append(0, 5, 0), std::invalid_argument);
  CHECK_THROWS_AS(h.append(0, 0, 7), std::invalid_argument);
  CHECK_THROWS_AS(h.append_value(0, 0, 0.5), std::invalid_argument);
  CHECK(h.length() == 0);  // rejected appends leave the history unchanged
}

TEST_CASE("alphabets validate their invariants") {
  CHECK_THROWS(Alphabets{0, 1, {0.0}}.validate());
  CHECK_THROWS(Alphabets{1, 0, {0.0}}.validate());
  CHECK_THROWS(Alphabets{1, 1, {}}.validate());
  CHECK_THROWS(Alphabets{1, 1, {1.0, 1.0}}.validate());
  CHECK_THROWS(Alphabets{1, 1, {2.0, 1.0}}.validate());
  CHECK_NOTHROW(Alphabets{3, 3, {-100.0, -1.0, 10.0}}.validate());
}

TEST_CASE("csv round-trip reproduces the identical sequence") {
  Alphabets a{3, 4, {-2.0, -1.0, 0.0, 1.5, 2.0}};
  History h(a, 3, 2);
  Rng rng(7);
  for (int i = 0; i < 200; ++i)
    h.append(rand_index(rng, 3), rand_index(rng, 4), rand_index(rng, 5));
  std::stringstream buf;
  h.write_csv(buf);
  History back = History::read_csv(a, buf);
  CHECK(back == h);
}

TEST_CASE("reward indices always dereference into the reward alphabet") {
  Alphabets a{2, 2, {-1.0, 3.0}};
  History h(a, 0, 0);
  Rng rng(11);
  for (int i = 0; i < 100; ++i)
    h.append(rand_index(rng, 2), rand_index(rng, 2), rand_index(rng, 2));
  for (int t = 1; t <= h.length() + 1; ++t) {
    double v = h.reward_value_at(t);
    CHECK((v == -1.0 || v == 3.0));
  }
}

TEST_CASE("csv parse errors identify the problem") {
  Alphabets a = binary();
  std::stringstream missing_header("1,0,0,0,0\n");
  CHECK_THROWS_AS(History::read_csv(a, missing_header), std::runtime_error);
  std::stringstream bad_field("t,a,o,r_index,r_value\n0,-1,0,0,0\n1,x,0,0,0\n");
  CHECK_THROWS_AS(History::read_csv(a, bad_field), std::runtime_error);
}
