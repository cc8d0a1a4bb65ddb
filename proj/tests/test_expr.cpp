// Copyright 2026 The Hyra Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <random>
#include <string>

#include "doctest.h"
#include "hyra/error.hpp"
#include "hyra/expr.hpp"

using namespace hyra;

namespace {

VariableTable table() {
  VariableTable t;
  t.state_vars = {"x", "v", "y"};
  t.input_vars = {"u"};
  t.constants = {{"c", 0.75}, {"g", 9.81}};
  return t;
}

ErrorKind kind_of(std::string_view text) {
  try {
    parse_condition(text, table());
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error for: " << text);
  return ErrorKind::IoError;
}

std::size_t position_of(std::string_view text) {
  try {
    parse_condition(text, table());
  } catch (const Error& e) {
    REQUIRE(e.position());
    return *e.position();
  }
  FAIL("no error for: " << text);
  return 0;
}

}  // namespace

TEST_CASE("conditions parse into linear constraints") {
  const Condition c = parse_condition("x >= 0 & 2*v - y < 3", table());
  REQUIRE(c.constraints.size() == 2);
  CHECK(c.constraints[0].relation == Relation::GreaterEq);
  CHECK(c.constraints[0].coeffs(0) == 1.0);
  CHECK(c.constraints[1].relation == Relation::Less);
  CHECK(c.constraints[1].coeffs(1) == 2.0);
  CHECK(c.constraints[1].coeffs(2) == -1.0);
  CHECK(c.constraints[1].bound == 3.0);
  CHECK(parse_condition("", table()).is_true());
}

TEST_CASE("comparison chains expand to conjunctions") {
  const Condition c = parse_condition("0 <= x <= 1", table());
  REQUIRE(c.constraints.size() == 2);
  Vector p = Vector::Zero(3);
  p(0) = 0.5;
  CHECK(c.satisfied(p));
  p(0) = 1.5;
  CHECK_FALSE(c.satisfied(p));
}

TEST_CASE("precedence of unary minus, products and sums") {
  const AffineDynamics d = parse_flow("x' == -2*v + 3 - -y/4 & v' == -g", table());
  Vector x(3);
  x << 1.0, 2.0, 8.0;
  Vector u = Vector::Zero(1);
  const Vector dx = d.derivative(x, u);
  // Oracle: evaluate the same expressions by hand.
  CHECK(dx(0) == doctest::Approx(-2 * 2.0 + 3 + 8.0 / 4));
  CHECK(dx(2) == 0.0);
}

TEST_CASE("symbolic coefficients stay symbolic until bound") {
  const ResetMap r = parse_assignment("v' == -c*v", table());
  const Coef e = r.entry(1, 1);
  REQUIRE(e.params.count("c") == 1);
  CHECK(e.params.at("c") == -1.0);
  CHECK(e.value == 0.0);
}

TEST_CASE("inputs in flows and input-only bounds") {
  const AffineDynamics d = parse_flow("x' == v + 2*u", table());
  CHECK(d.B(0, 0) == 2.0);
  std::vector<InputBound> bounds;
  const Condition c = parse_condition("-1 <= u & u <= 1 & x >= 0", table(), &bounds);
  CHECK(c.constraints.size() == 1);
  CHECK(bounds.size() == 2);
}

TEST_CASE("errors carry kind and position") {
  CHECK(kind_of("x >= ") == ErrorKind::SyntaxError);
  CHECK(kind_of("x >= z") == ErrorKind::UnknownIdentifier);
  CHECK(kind_of("x*v >= 1") == ErrorKind::NonlinearUnsupported);
  CHECK(kind_of("x >= (1") == ErrorKind::SyntaxError);
  CHECK(position_of("x >= z") == 5);
  CHECK(position_of("x + y >= 1 $") == 11);
}

TEST_CASE("format_number is the shortest exact decimal") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> ex(-30, 30);
  for (int k = 0; k < 2000; ++k) {
    const double v = std::ldexp(mant(rng), ex(rng));
    const std::string s = format_number(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-0.75) == "-0.75");
  CHECK(format_number(10.0) == "10");
  CHECK(format_number(-0.0) == "0");
}

TEST_CASE("formatted conditions parse back to the same constraints") {
  const VariableTable t = table();
  const std::vector<std::string> names = t.state_vars;
  for (const char* text : {"x >= 0 & v <= 0", "x + 2*v - 0.5*y == 3", "-x > -1e-7", "x - y < 0.1"}) {
    const Condition c = parse_condition(text, t);
    const std::string s = format_condition(c, names);
    CHECK(parse_condition(s, t) == c);
  }
  CHECK(format_condition(Condition{}, names).empty());
  const Condition eq = parse_condition("x == 1", t);
  CHECK(format_condition(eq, names, EqualityStyle::SingleEquals) == "x = 1");
}
