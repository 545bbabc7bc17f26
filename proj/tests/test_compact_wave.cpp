#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "freewave/compact_wave.hpp"
#include "freewave/errors.hpp"
#include "freewave/phase_plane.hpp"
#include "oracles.hpp"

using namespace freewave;

namespace {

const auto lg = ReactionSpec::logistic();
const auto cb = ReactionSpec::cubic_bistable(0.25);

}  // namespace

TEST_CASE("apex shots at c = 0") {
  const double w = oracle::compact_slope_c0(oracle::logistic(), 0.5);
  CHECK(std::abs(w - 0.4082483) < 1e-6);
  auto o = apex_shoot(lg, 0.5, 0.0, ShotDirection::backward);
  REQUIRE(o.crosses());
  CHECK(std::abs(o.slope - w) < 1e-6);
  o = apex_shoot(lg, 0.5, 0.0, ShotDirection::forward);
  REQUIRE(o.crosses());
  CHECK(std::abs(o.slope + w) < 1e-6);
}

TEST_CASE("apex shot below the window does not reach zero") {
  const auto win = speed_window(lg, 0.5);
  const auto o = apex_shoot(lg, 0.5, win.c_star_l - 0.1, ShotDirection::backward);
  // the origin is a node there, so the orbit creeps into it without crossing
  CHECK_FALSE(o.crosses());
  CHECK(o.tag == OutcomeTag::converges_origin);
  // a bistable f2 has a saddle at the origin instead, and the shot turns back
  const auto wb = speed_window(cb, 0.9);
  const auto ob = apex_shoot(cb, 0.9, wb.c_star_l - 0.1, ShotDirection::backward);
  CHECK(ob.tag == OutcomeTag::stalls);
}

TEST_CASE("invalid heights") {
  CHECK_THROWS_AS(apex_shoot(cb, 0.2, 0.0, ShotDirection::forward), InvalidHeightError);
  CHECK_THROWS_AS(speed_window(lg, 1.0), InvalidHeightError);
  CHECK_THROWS_AS(speed_window(lg, 0.0), InvalidHeightError);
  // f2 > 0 but F2 <= 0 just above theta
  CHECK(cb(0.35) > 0.0);
  CHECK_THROWS_AS(speed_window(cb, 0.35), InvalidHeightError);
}

TEST_CASE("window bounds") {
  const auto w = speed_window(lg, 0.5);
  // c*_l(1) = -2 for logistic, F(0.5) / F(1) = 1/2
  CHECK(w.L_sigma == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(w.R_sigma == -w.L_sigma);
  CHECK(w.c_star_l < w.L_sigma);
  CHECK(w.R_sigma < w.c_star_r);
  CHECK(std::abs(w.c_star_l + w.c_star_r) < 1e-7);
  CHECK(w.contains(0.0));
  CHECK_FALSE(w.contains(w.c_star_r + 1e-3));
}

TEST_CASE("window bounds over heights and families") {
  std::vector<std::pair<const ReactionSpec*, double>> cases;
  for (double s : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95}) cases.push_back({&lg, s});
  const auto cb1 = ReactionSpec::cubic_bistable(0.1);
  for (double s : {0.5, 0.7, 0.9}) cases.push_back({&cb, s});
  for (double s : {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) cases.push_back({&cb1, s});
  REQUIRE(cases.size() == 20);
  for (const auto& [f, s] : cases) {
    CAPTURE(f->label());
    CAPTURE(s);
    const auto w = speed_window(*f, s);
    CHECK(w.c_star_l < w.L_sigma);
    CHECK(w.L_sigma < 0.0);
    CHECK(0.0 < w.R_sigma);
    CHECK(w.R_sigma < w.c_star_r);
  }
}

TEST_CASE("window edge does not increase with the height") {
  double prev = 1e300;
  for (double s : {0.3, 0.5, 0.7, 0.9}) {
    const double cl = speed_window(lg, s).c_star_l;
    CHECK(cl <= prev + 1e-7);
    CHECK(cl >= critical_speed_increasing(lg) - 1e-7);
    prev = cl;
  }
  prev = 1e300;
  for (double s : {0.5, 0.7, 0.9}) {
    const double cl = speed_window(cb, s).c_star_l;
    CHECK(cl < prev);
    prev = cl;
  }
}

TEST_CASE("compact profile at c = 0") {
  const auto w = compact_profile(lg, 0.5, 0.0);
  const double slope = oracle::compact_slope_c0(oracle::logistic(), 0.5);
  CHECK(std::abs(w.slope_left - slope) < 1e-10);
  CHECK(std::abs(w.slope_right + slope) < 1e-10);
  CHECK(std::abs(w.width - oracle::compact_width_c0(oracle::logistic(), 0.5)) < 1e-4);
  CHECK(std::abs(w.apex - 0.5 * w.width) < 1e-8);
  const auto& p = w.profile;
  CHECK(p.z.front() == 0.0);
  CHECK(p.value.front() == 0.0);
  CHECK(p.value.back() == 0.0);
  CHECK(p.z.back() == w.width);
  CHECK(std::abs(*std::max_element(p.value.begin(), p.value.end()) - 0.5) < 1e-8);
  CHECK(max_residual(p, lg, 0.0) <= 1e-6);
}

TEST_CASE("compact profile shape away from c = 0") {
  for (double c : {-0.7, 0.4, 1.5}) {
    const auto w = compact_profile(lg, 0.6, c);
    const auto& p = w.profile;
    int turns = 0;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
      const double d0 = p.value[i] - p.value[i - 1], d1 = p.value[i + 1] - p.value[i];
      if ((d0 > 0.0) != (d1 > 0.0)) ++turns;
    }
    CAPTURE(c);
    CHECK(turns == 1);
    CHECK(w.apex > 0.0);
    CHECK(w.apex < w.width);
    CHECK(w.slope_left > 0.0);
    CHECK(w.slope_right < 0.0);
    CHECK(max_residual(p, lg, c) <= 1e-6);
  }
  CHECK_THROWS_AS(compact_profile(lg, 0.5, 2.5), OutOfWindowError);
  try {
    compact_profile(cb, 0.5, 0.3);
    FAIL("expected out of window");
  } catch (const OutOfWindowError& e) {
    CHECK(e.c_star_r < 0.3);
    CHECK(e.c_star_l < 0.0);
  }
}

TEST_CASE("energy identity for random reactions") {
  std::mt19937 rng(99);
  int checked = 0;
  while (checked < 20) {
    const bool bistable = checked >= 10;
    const auto p = bistable ? oracle::random_bistable(rng) : oracle::random_monostable(rng);
    const double sigma = bistable ? 0.9 : 0.6;
    if (oracle::integral(p, sigma) <= 0.0) continue;
    try {
      ReactionSpec::polynomial(p);
    } catch (const ClassificationError&) {
      continue;
    }
    const auto f = ReactionSpec::polynomial(p);
    CAPTURE(f.label());
    const double w = oracle::compact_slope_c0(p, sigma);
    CHECK(std::abs(left_slope(f, sigma, 0.0) - w) < 1e-10);
    CHECK(std::abs(right_slope(f, sigma, 0.0) + w) < 1e-10);
    ++checked;
  }
}

TEST_CASE("boundary slopes increase with c") {
  const double a = left_slope(lg, 0.5, -0.2), b = left_slope(lg, 0.5, 0.0),
               c = left_slope(lg, 0.5, 0.2);
  CHECK(a < b);
  CHECK(b < c);
  CHECK(right_slope(lg, 0.5, -0.2) < right_slope(lg, 0.5, 0.2));
  CHECK(right_slope(lg, 0.5, 0.0) == doctest::Approx(-left_slope(lg, 0.5, 0.0)).epsilon(1e-12));
  CHECK(std::abs(left_slope(lg, 0.5, 0.0) - 0.4082483) < 1e-6);
}

TEST_CASE("slopes vanish towards the window edges") {
  const auto w = speed_window(cb, 0.7);
  double prev_l = 1e300, prev_r = 1e300;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const double l = left_slope(cb, 0.7, w.c_star_l + eps);
    const double r = right_slope(cb, 0.7, w.c_star_r - eps);
    CHECK(l > 0.0);
    CHECK(r < 0.0);
    CHECK(l < prev_l);
    CHECK(-r < prev_r);
    prev_l = l;
    prev_r = -r;
  }
  CHECK(left_slope_or_zero(cb, 0.7, w.c_star_l - 1e-3) == 0.0);
  CHECK(right_slope_or_zero(cb, 0.7, w.c_star_r + 1e-3) == 0.0);
}

TEST_CASE("width is stable under tighter tolerances") {
  ShootingConfig tight;
  tight.integrator.rel_tol *= 0.1;
  tight.integrator.abs_tol *= 0.1;
  for (double c : {-0.5, 0.0, 0.8}) {
    const double h = compact_profile(lg, 0.5, c).width;
    const double ht = compact_profile(lg, 0.5, c, tight).width;
    CHECK(std::abs(h - ht) < 1e-6);
  }
}
