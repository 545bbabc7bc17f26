#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "freewave/errors.hpp"
#include "freewave/ode.hpp"
#include "freewave/roots.hpp"

using namespace freewave;
using ode::State;

namespace {

void decay(const State<1>& y, State<1>& dy, double) { dy[0] = -y[0]; }
void oscillator(const State<2>& y, State<2>& dy, double) {
  dy[0] = y[1];
  dy[1] = -y[0];
}

}  // namespace

TEST_CASE("exponential decay") {
  const auto tr = ode::integrate<1>(decay, State<1>{1.0}, 0.0, 1.0, {}, {});
  CHECK(std::abs(tr.final_state()[0] - std::exp(-1.0)) < 1e-9);
  CHECK(tr.final_time() == 1.0);
}

TEST_CASE("event on a linear ramp") {
  auto ramp = [](const State<1>&, State<1>& dy, double) { dy[0] = 1.0; };
  const std::array<ode::EventSpec<1>, 1> ev{
      {{[](double, const State<1>& y) { return y[0] - 0.5; }, ode::Crossing::rising, true}}};
  const auto tr = ode::integrate<1>(ramp, State<1>{0.0}, 0.0, 2.0, ev, {});
  REQUIRE(tr.stopped_by_event);
  REQUIRE(tr.events.size() == 1);
  CHECK(std::abs(tr.events[0].t - 0.5) < 1e-10);
  CHECK(tr.events[0].index == 0);
}

TEST_CASE("direction filter skips the wrong crossing") {
  const std::array<ode::EventSpec<2>, 1> ev{
      {{[](double, const State<2>& y) { return y[0]; }, ode::Crossing::rising, true}}};
  // cos t falls through 0 at pi/2 and rises at 3pi/2
  const auto tr = ode::integrate<2>(oscillator, State<2>{1.0, 0.0}, 0.0, 10.0, ev, {});
  REQUIRE(tr.stopped_by_event);
  CHECK(std::abs(tr.events[0].t - 1.5 * std::numbers::pi) < 1e-8);
}

TEST_CASE("harmonic oscillator returns after one period") {
  const auto tr =
      ode::integrate<2>(oscillator, State<2>{1.0, 0.0}, 0.0, 2.0 * std::numbers::pi, {}, {});
  CHECK(std::abs(tr.final_state()[0] - 1.0) < 1e-8);
  CHECK(std::abs(tr.final_state()[1]) < 1e-8);
}

TEST_CASE("event times converge as rel_tol is halved") {
  // y' = -y from 1 reaches 1/2 at ln 2
  const std::array<ode::EventSpec<1>, 1> ev{
      {{[](double, const State<1>& y) { return y[0] - 0.5; }, ode::Crossing::falling, true}}};
  for (double tol : {1e-6, 1e-8, 1e-10}) {
    ode::IntegratorConfig coarse{tol, tol * 1e-2, 0.5, 100000};
    ode::IntegratorConfig fine{tol / 2, tol * 5e-3, 0.5, 100000};
    const double t1 = ode::integrate<1>(decay, State<1>{1.0}, 0.0, 5.0, ev, coarse).events[0].t;
    const double t2 = ode::integrate<1>(decay, State<1>{1.0}, 0.0, 5.0, ev, fine).events[0].t;
    CHECK(std::abs(t1 - t2) < tol);
    CHECK(std::abs(t2 - std::log(2.0)) < tol);
  }
}

TEST_CASE("backward integration undoes forward integration") {
  ode::IntegratorConfig cfg;
  const State<2> y0{0.3, -0.7};
  const auto fwd = ode::integrate<2>(oscillator, y0, 0.0, 3.0, {}, cfg);
  const auto back = ode::integrate<2>(oscillator, fwd.final_state(), 3.0, 0.0, {}, cfg);
  CHECK(back.final_time() == 0.0);
  CHECK(std::abs(back.final_state()[0] - y0[0]) < 10 * cfg.rel_tol);
  CHECK(std::abs(back.final_state()[1] - y0[1]) < 10 * cfg.rel_tol);
}

TEST_CASE("output at requested times") {
  const std::vector<double> times{0.0, 0.25, 0.5, 1.0};
  const auto tr = ode::integrate<1>(decay, State<1>{1.0}, 0.0, 1.0, {}, {}, times);
  REQUIRE(tr.t.size() == times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(tr.t[i] == times[i]);
    CHECK(std::abs(tr.y[i][0] - std::exp(-times[i])) < 1e-9);
  }
  // backward, times ordered in the direction of integration
  const std::vector<double> back_times{0.0, -0.5, -1.0};
  const auto tb = ode::integrate<1>(decay, State<1>{1.0}, 0.0, -1.0, {}, {}, back_times);
  CHECK(std::abs(tb.y[2][0] - std::exp(1.0)) < 1e-8);
}

TEST_CASE("identical inputs give bit-identical outputs") {
  const auto a = ode::integrate<2>(oscillator, State<2>{1.0, 0.0}, 0.0, 7.0, {}, {});
  const auto b = ode::integrate<2>(oscillator, State<2>{1.0, 0.0}, 0.0, 7.0, {}, {});
  REQUIRE(a.t.size() == b.t.size());
  for (std::size_t i = 0; i < a.t.size(); ++i) {
    CHECK(a.t[i] == b.t[i]);
    CHECK(a.y[i] == b.y[i]);
  }
}

TEST_CASE("step budget exhaustion carries the last state") {
  ode::IntegratorConfig cfg{1e-10, 1e-12, 0.01, 10};
  try {
    ode::integrate<1>(decay, State<1>{1.0}, 0.0, 10.0, {}, cfg);
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.state.size() == 1);
    CHECK(e.t > 0.0);
    CHECK(e.t < 10.0);
  }
  CHECK_THROWS_AS(ode::integrate<1>(decay, State<1>{1.0}, 0.0, 1.0, {},
                                    ode::IntegratorConfig{-1.0, 1e-12, 0.5, 10}),
                  ConfigError);
}

TEST_CASE("monotone root finder") {
  CHECK(std::abs(find_root_monotone([](double x) { return x * x - 2.0; }, {1.0, 2.0, 1e-12}) -
                 std::sqrt(2.0)) < 1e-8);
  CHECK(std::abs(find_root_monotone([](double x) { return x; }, {-1.0, 1.0, 1e-12})) < 1e-12);
  CHECK(std::abs(find_root_monotone([](double x) { return std::cos(x); }, {1.0, 2.0, 1e-12}) -
                 std::numbers::pi / 2) < 1e-8);
  CHECK_THROWS_AS(find_root_monotone([](double x) { return x * x + 1.0; }, {-1.0, 1.0, 1e-12}),
                  BracketError);
}

TEST_CASE("predicate bisection") {
  const double edge = bisect_predicate([](double x) { return x < 0.3; }, 0.0, 1.0, 1e-10);
  CHECK(std::abs(edge - 0.3) < 1e-10);
  CHECK_THROWS_AS(bisect_predicate([](double) { return true; }, 0.0, 1.0, 1e-6), BracketError);
}
