#include "freewave/phase_plane.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "freewave/errors.hpp"
#include "freewave/roots.hpp"

namespace freewave {

namespace {

// (1 - delta, -mu delta) with mu the positive root of mu^2 + c mu + f'(1) = 0.
ode::State<2> saddle_launch(const ReactionSpec& f, double c, double delta) {
  const double mu = 0.5 * (-c + std::sqrt(c * c - 4.0 * f.derivative(1.0)));
  return {1.0 - delta, -mu * delta};
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

double max_abs_derivative(const ReactionSpec& f) {
  double m = 0.0;
  for (int i = 0; i <= 1000; ++i) m = std::max(m, std::abs(f.derivative(i / 1000.0)));
  return m;
}

// Uniform grid 0, h, ..., L with the last point exactly L.
std::vector<double> uniform_grid(double length, double spacing) {
  const auto n = std::max<long>(4, static_cast<long>(std::ceil(length / spacing)));
  std::vector<double> z(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = length * k / n;
  z.back() = length;
  return z;
}

}  // namespace

TrajectoryOutcome shoot_decreasing(const ReactionSpec& f, double c, const ShootingConfig& cfg) {
  return shoot(f, c, saddle_launch(f, c, cfg.launch_offset), ShotDirection::forward, cfg).outcome;
}

double critical_speed_decreasing(const ReactionSpec& f, const ShootingConfig& cfg) {
  double lo, hi;
  if (f.kind() == Kind::monostable) {
    lo = 0.0;
    hi = 2.0 * std::sqrt(f.derivative(0.0)) + 1.0;
  } else {
    const double bound = 2.0 * std::sqrt(max_abs_derivative(f)) + 1.0;
    lo = -bound;
    hi = bound;
  }
  auto crosses = [&](double c) { return shoot_decreasing(f, c, cfg).crosses(); };
  const double lo0 = lo, hi0 = hi;
  double width = hi - lo;
  for (int widen = 0;; ++widen) {
    const bool lo_ok = crosses(lo);
    const bool hi_ok = !crosses(hi);
    if (lo_ok && hi_ok) break;
    if (widen == 4) {
      throw ConfigError("critical_speed_decreasing: no bracket for " + f.label() +
                        " (initial bracket [" + num(lo0) + ", " + num(hi0) + "])");
    }
    if (!lo_ok) lo -= width;
    if (!hi_ok) hi += width;
    width *= 2.0;
  }
  return bisect_predicate(crosses, lo, hi, cfg.speed_tol);
}

double semiwave_slope(const ReactionSpec& f, double c, const ShootingConfig& cfg) {
  const auto outcome = shoot_decreasing(f, c, cfg);
  if (!outcome.crosses()) {
    throw NoSemiWaveError("no decreasing semi-wave for " + f.label() + " at c = " + num(c) +
                          " (c >= c*_f; shot " + to_string(outcome.tag) + ")");
  }
  return outcome.slope;
}

double semiwave_slope_or_zero(const ReactionSpec& f, double c, const ShootingConfig& cfg) {
  const auto outcome = shoot_decreasing(f, c, cfg);
  return outcome.crosses() ? outcome.slope : 0.0;
}

SemiWave semiwave_profile(const ReactionSpec& f, double c, double far_tol,
                          const ShootingConfig& cfg) {
  if (!(far_tol > 0.0 && far_tol < 1.0)) throw DomainError("semiwave_profile: far_tol in (0,1)");
  const auto start = saddle_launch(f, c, std::min(cfg.launch_offset, far_tol));
  const Shot shot = shoot(f, c, start, ShotDirection::forward, cfg);
  if (!shot.outcome.crosses()) {
    throw NoSemiWaveError("no decreasing semi-wave for " + f.label() + " at c = " + num(c));
  }
  const double length = shot.outcome.z;
  const auto grid = uniform_grid(length, cfg.profile_spacing);
  const auto path = resample_shot(f, c, start, length, grid, cfg);

  SemiWave w;
  w.c = c;
  w.slope0 = shot.outcome.slope;
  w.domain_length = length;
  w.increasing = false;
  const std::size_t n = grid.size();
  w.profile.z.resize(n);
  w.profile.value.resize(n);
  w.profile.slope.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    w.profile.z[k] = grid[k] - length;
    w.profile.value[k] = path.y[k][0];
    w.profile.slope[k] = path.y[k][1];
  }
  w.profile.z.back() = 0.0;
  w.profile.value.back() = 0.0;
  w.profile.slope.back() = w.slope0;
  return w;
}

double semiwave_slope_increasing(const ReactionSpec& g, double c, const ShootingConfig& cfg) {
  const auto outcome = shoot_decreasing(g, -c, cfg);
  if (!outcome.crosses()) {
    throw NoSemiWaveError("no increasing semi-wave for " + g.label() + " at c = " + num(c) +
                          " (c <= c*_g)");
  }
  return -outcome.slope;
}

double semiwave_slope_increasing_or_zero(const ReactionSpec& g, double c,
                                         const ShootingConfig& cfg) {
  return -semiwave_slope_or_zero(g, -c, cfg);
}

double critical_speed_increasing(const ReactionSpec& g, const ShootingConfig& cfg) {
  return -critical_speed_decreasing(g, cfg);
}

SemiWave semiwave_profile_increasing(const ReactionSpec& g, double c, double far_tol,
                                     const ShootingConfig& cfg) {
  SemiWave mirror;
  try {
    mirror = semiwave_profile(g, -c, far_tol, cfg);
  } catch (const NoSemiWaveError&) {
    throw NoSemiWaveError("no increasing semi-wave for " + g.label() + " at c = " + num(c));
  }
  SemiWave w;
  w.c = c;
  w.slope0 = -mirror.slope0;
  w.domain_length = mirror.domain_length;
  w.increasing = true;
  const std::size_t n = mirror.profile.size();
  for (std::size_t k = n; k-- > 0;) {
    w.profile.z.push_back(-mirror.profile.z[k]);
    w.profile.value.push_back(mirror.profile.value[k]);
    w.profile.slope.push_back(-mirror.profile.slope[k]);
  }
  w.profile.z.front() = 0.0;
  return w;
}

Profile front_profile(const ReactionSpec& f, double c, double floor, const ShootingConfig& cfg) {
  auto rhs = [&f, c](const ode::State<2>& y, ode::State<2>& dy, double) {
    dy[0] = y[1];
    dy[1] = -c * y[1] - f(y[0]);
  };
  const std::array<ode::EventSpec<2>, 2> events{{
      {[floor](double, const ode::State<2>& y) { return y[0] - floor; }, ode::Crossing::falling,
       true},
      {[](double, const ode::State<2>& y) { return y[1]; }, ode::Crossing::rising, true},
  }};
  auto icfg = cfg.integrator;
  icfg.max_step = std::min(icfg.max_step, cfg.profile_spacing * 10.0);
  const auto path =
      ode::integrate<2>(rhs, saddle_launch(f, c, cfg.launch_offset), 0.0, cfg.z_max, events, icfg);
  Profile p;
  for (std::size_t k = 0; k < path.t.size(); ++k) {
    p.z.push_back(path.t[k]);
    p.value.push_back(path.y[k][0]);
    p.slope.push_back(path.y[k][1]);
  }
  return p;
}

}  // namespace freewave
