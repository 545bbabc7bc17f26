#include "freewave/compact_wave.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "freewave/errors.hpp"
#include "freewave/phase_plane.hpp"
#include "freewave/roots.hpp"

namespace freewave {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void require_positive_apex_reaction(const ReactionSpec& f, double sigma) {
  if (!(sigma > 0.0) || !(f(sigma) > 0.0)) {
    throw InvalidHeightError("invalid height sigma = " + num(sigma) + " for " + f.label() +
                             ": need f(sigma) > 0");
  }
}

// 0, step, ..., end (end may be negative), last point exactly end.
std::vector<double> apex_grid(double end, double spacing) {
  const auto n = std::max<long>(4, static_cast<long>(std::ceil(std::abs(end) / spacing)));
  std::vector<double> z(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = end * k / n;
  z.back() = end;
  return z;
}

double window_edge(const ReactionSpec& f, double sigma, ShotDirection dir, double far_guess,
                   const ShootingConfig& cfg) {
  auto crosses = [&](double c) { return apex_shoot(f, sigma, c, dir, cfg).crosses(); };
  if (!crosses(0.0)) {
    throw ConfigError("speed_window: apex shot at c = 0 does not reach zero (sigma = " +
                      num(sigma) + ")");
  }
  double far = far_guess;
  for (int widen = 0; crosses(far); ++widen) {
    if (widen == 4) {
      throw ConfigError("speed_window: no bracket for " + f.label() + " (initial bracket [0, " +
                        num(far_guess) + "])");
    }
    far *= 2.0;
  }
  return far < 0.0 ? bisect_predicate(crosses, far, 0.0, cfg.speed_tol)
                   : bisect_predicate(crosses, 0.0, far, cfg.speed_tol);
}

}  // namespace

void require_valid_height(const ReactionSpec& f, double sigma) {
  if (!(sigma > 0.0 && sigma < 1.0)) {
    throw InvalidHeightError("invalid height sigma = " + num(sigma) + ": need 0 < sigma < 1");
  }
  require_positive_apex_reaction(f, sigma);
  if (!(f.primitive(sigma) > 0.0)) {
    throw InvalidHeightError("invalid height sigma = " + num(sigma) + " for " + f.label() +
                             ": need F(sigma) > 0, i.e. sigma > " + num(f.theta_bar()));
  }
}

TrajectoryOutcome apex_shoot(const ReactionSpec& f, double sigma, double c, ShotDirection direction,
                             const ShootingConfig& cfg) {
  require_positive_apex_reaction(f, sigma);
  return shoot(f, c, {sigma, 0.0}, direction, cfg).outcome;
}

SpeedWindow speed_window(const ReactionSpec& f, double sigma, const ShootingConfig& cfg) {
  require_valid_height(f, sigma);
  const double c_l1 = critical_speed_increasing(f, cfg);
  SpeedWindow w;
  w.c_star_l = window_edge(f, sigma, ShotDirection::backward, c_l1 - 1.0, cfg);
  w.c_star_r = window_edge(f, sigma, ShotDirection::forward, -c_l1 + 1.0, cfg);
  w.L_sigma = c_l1 * f.primitive(sigma) / f.primitive(1.0);
  w.R_sigma = -w.L_sigma;
  return w;
}

CompactWave compact_profile(const ReactionSpec& f, double sigma, double c,
                            const ShootingConfig& cfg) {
  require_valid_height(f, sigma);
  const ode::State<2> apex_state{sigma, 0.0};
  const Shot back = shoot(f, c, apex_state, ShotDirection::backward, cfg);
  const Shot fwd = shoot(f, c, apex_state, ShotDirection::forward, cfg);
  if (!back.outcome.crosses() || !fwd.outcome.crosses()) {
    const SpeedWindow w = speed_window(f, sigma, cfg);
    throw OutOfWindowError("c = " + num(c) + " outside the compact-wave window (" +
                               num(w.c_star_l) + ", " + num(w.c_star_r) + ") for sigma = " +
                               num(sigma),
                           w.c_star_l, w.c_star_r);
  }
  const double z_left = back.outcome.z;  // < 0
  const double z_right = fwd.outcome.z;  // > 0
  const auto grid_l = apex_grid(z_left, cfg.profile_spacing);
  const auto grid_r = apex_grid(z_right, cfg.profile_spacing);
  const auto path_l = resample_shot(f, c, apex_state, z_left, grid_l, cfg);
  const auto path_r = resample_shot(f, c, apex_state, z_right, grid_r, cfg);

  CompactWave w;
  w.c = c;
  w.sigma = sigma;
  w.apex = -z_left;
  w.width = z_right - z_left;
  w.slope_left = back.outcome.slope;
  w.slope_right = fwd.outcome.slope;
  auto& p = w.profile;
  for (std::size_t k = grid_l.size(); k-- > 0;) {
    p.z.push_back(grid_l[k] + w.apex);
    p.value.push_back(path_l.y[k][0]);
    p.slope.push_back(path_l.y[k][1]);
  }
  for (std::size_t k = 1; k < grid_r.size(); ++k) {
    p.z.push_back(grid_r[k] + w.apex);
    p.value.push_back(path_r.y[k][0]);
    p.slope.push_back(path_r.y[k][1]);
  }
  p.z.front() = 0.0;
  p.value.front() = 0.0;
  p.slope.front() = w.slope_left;
  p.z.back() = w.width;
  p.value.back() = 0.0;
  p.slope.back() = w.slope_right;
  return w;
}

double left_slope(const ReactionSpec& f, double sigma, double c, const ShootingConfig& cfg) {
  require_valid_height(f, sigma);
  const auto back = apex_shoot(f, sigma, c, ShotDirection::backward, cfg);
  const auto fwd = apex_shoot(f, sigma, c, ShotDirection::forward, cfg);
  if (!back.crosses() || !fwd.crosses()) {
    const SpeedWindow w = speed_window(f, sigma, cfg);
    throw OutOfWindowError("c = " + num(c) + " outside the compact-wave window", w.c_star_l,
                           w.c_star_r);
  }
  return back.slope;
}

double right_slope(const ReactionSpec& f, double sigma, double c, const ShootingConfig& cfg) {
  require_valid_height(f, sigma);
  const auto back = apex_shoot(f, sigma, c, ShotDirection::backward, cfg);
  const auto fwd = apex_shoot(f, sigma, c, ShotDirection::forward, cfg);
  if (!back.crosses() || !fwd.crosses()) {
    const SpeedWindow w = speed_window(f, sigma, cfg);
    throw OutOfWindowError("c = " + num(c) + " outside the compact-wave window", w.c_star_l,
                           w.c_star_r);
  }
  return fwd.slope;
}

double left_slope_or_zero(const ReactionSpec& f, double sigma, double c,
                          const ShootingConfig& cfg) {
  const auto back = apex_shoot(f, sigma, c, ShotDirection::backward, cfg);
  return back.crosses() ? back.slope : 0.0;
}

double right_slope_or_zero(const ReactionSpec& f, double sigma, double c,
                           const ShootingConfig& cfg) {
  const auto fwd = apex_shoot(f, sigma, c, ShotDirection::forward, cfg);
  return fwd.crosses() ? fwd.slope : 0.0;
}

}  // namespace freewave
