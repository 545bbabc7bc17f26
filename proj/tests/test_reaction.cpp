#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "freewave/errors.hpp"
#include "freewave/reaction.hpp"
#include "oracles.hpp"

using namespace freewave;

TEST_CASE("evaluate at sample points") {
  const auto lg = ReactionSpec::logistic();
  const auto cb = ReactionSpec::cubic_bistable(0.25);
  CHECK(lg.evaluate(0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(cb.evaluate(0.25) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(cb.evaluate(0.5) == doctest::Approx(oracle::eval(oracle::cubic(0.25), 0.5)).epsilon(1e-15));
  CHECK(cb.evaluate(0.5) == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK_THROWS_AS(lg.evaluate(-0.1), DomainError);
  // the polynomial continues past 1
  CHECK(lg.evaluate(1.5) == doctest::Approx(-0.75));
}

TEST_CASE("classification of the built-in families") {
  const auto lg = ReactionSpec::logistic();
  CHECK(lg.kind() == Kind::monostable);
  CHECK_FALSE(lg.theta().has_value());
  const auto cb = ReactionSpec::cubic_bistable(0.25);
  CHECK(cb.kind() == Kind::bistable);
  REQUIRE(cb.theta().has_value());
  CHECK(*cb.theta() == 0.25);
}

TEST_CASE("theta = 0.6 fails on the integral condition") {
  // int_0^1 u(u - 0.6)(1 - u) du = (1 - 1.2) / 12 < 0
  CHECK(oracle::integral(oracle::cubic(0.6), 1.0) < 0.0);
  try {
    ReactionSpec::polynomial(oracle::cubic(0.6));
    FAIL("expected a classification error");
  } catch (const ClassificationError& e) {
    CHECK(std::string(e.what()).find("integral") != std::string::npos);
  }
  CHECK_THROWS_AS(ReactionSpec::cubic_bistable(0.6), ClassificationError);
}

TEST_CASE("other classification failures") {
  // f(1) != 0
  CHECK_THROWS_AS(ReactionSpec::polynomial({0.0, 1.0, -0.5}), ClassificationError);
  // f'(0) = 0 is degenerate
  CHECK_THROWS_AS(ReactionSpec::polynomial({0.0, 0.0, 1.0, -1.0}), ClassificationError);
  // u(1-u)(1.5-u) is monostable on (0,1) but positive on (1.5, 2]
  CHECK_THROWS_AS(ReactionSpec::polynomial(oracle::mul({0.0, 1.0, -1.0}, {1.5, -1.0})),
                  ClassificationError);
}

TEST_CASE("classify is deterministic and idempotent") {
  const auto cb = ReactionSpec::cubic_bistable(0.3);
  const auto a = classify(cb);
  const auto b = classify(cb);
  CHECK(a.kind == b.kind);
  CHECK(a.theta == b.theta);
  const auto again = ReactionSpec::polynomial(cb.coefficients());
  CHECK(again.kind() == cb.kind());
  CHECK(*again.theta() == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("primitive closed forms") {
  const auto lg = ReactionSpec::logistic();
  CHECK(lg.primitive(1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  for (double th : {0.1, 0.25, 0.4}) {
    CHECK(ReactionSpec::cubic_bistable(th).primitive(1.0) ==
          doctest::Approx((1.0 - 2.0 * th) / 12.0).epsilon(1e-14));
  }
  CHECK(lg.primitive(0.0) == 0.0);
  CHECK(ReactionSpec::cubic_bistable(0.25).primitive(0.0) == 0.0);
  CHECK_THROWS_AS(lg.primitive(1.5), DomainError);
}

TEST_CASE("primitive matches quadrature at random points") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const auto lg = ReactionSpec::logistic();
  const auto cb = ReactionSpec::cubic_bistable(0.25);
  for (int i = 0; i < 100; ++i) {
    const double u = U(rng);
    CHECK(std::abs(lg.primitive(u) - oracle::integral(oracle::logistic(), u)) < 1e-10);
    CHECK(std::abs(cb.primitive(u) - oracle::integral(oracle::cubic(0.25), u)) < 1e-10);
  }
}

TEST_CASE("bistable reactions have positive total integral") {
  std::mt19937 rng(11);
  int seen = 0;
  for (int i = 0; i < 40; ++i) {
    try {
      const auto f = ReactionSpec::polynomial(oracle::random_bistable(rng));
      CHECK(f.kind() == Kind::bistable);
      CHECK(f.primitive(1.0) > 0.0);
      ++seen;
    } catch (const ClassificationError&) {
    }
  }
  CHECK(seen > 20);
}

TEST_CASE("random monostable polynomials classify as monostable") {
  std::mt19937 rng(5);
  for (int i = 0; i < 20; ++i) {
    const auto f = ReactionSpec::polynomial(oracle::random_monostable(rng));
    CHECK(f.kind() == Kind::monostable);
  }
}

TEST_CASE("theta_bar is the zero of F above theta") {
  const auto cb = ReactionSpec::cubic_bistable(0.25);
  const double tb = cb.theta_bar();
  CHECK(tb > 0.25);
  CHECK(tb < 1.0);
  CHECK(std::abs(oracle::integral(oracle::cubic(0.25), tb)) < 1e-10);
  CHECK(ReactionSpec::logistic().theta_bar() == 0.0);
}

TEST_CASE("JSON and short forms") {
  const auto a = reaction_from_json_text(R"({"family": "cubic_bistable", "theta": 0.25})");
  CHECK(a.family() == Family::cubic_bistable);
  CHECK(*a.theta() == 0.25);
  const auto b = reaction_from_json_text(R"({"family": "polynomial", "coefficients": [0, 1, -1]})");
  CHECK(b.kind() == Kind::monostable);
  CHECK(reaction_from_json(to_json(a)).label() == a.label());

  CHECK_THROWS_AS(reaction_from_json_text(R"({"family": "logistic", "colour": 1})"), SchemaError);
  CHECK_THROWS_AS(reaction_from_json_text(R"({"theta": 0.2})"), SchemaError);
  CHECK_THROWS_AS(reaction_from_json_text(R"({"family": "cubic_bistable"})"), SchemaError);
  try {
    reaction_from_json_text("{\n  \"family\": \"logistic\",\n  oops\n}");
    FAIL("expected a syntax error");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  CHECK(parse_reaction("logistic").family() == Family::logistic);
  CHECK(*parse_reaction("cubic:0.3").theta() == 0.3);
  CHECK(*parse_reaction("cubic_bistable:0.3").theta() == 0.3);
  CHECK(parse_reaction("polynomial:0,1,-1").kind() == Kind::monostable);
  CHECK_THROWS_AS(parse_reaction("cubic"), SchemaError);
  CHECK_THROWS_AS(parse_reaction("sine:1"), SchemaError);
  CHECK_THROWS_AS(parse_reaction("cubic:x"), SchemaError);
}
