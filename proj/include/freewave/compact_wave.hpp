#pragma once

// Compactly supported waves of height sigma: phi'' + c phi' + f(phi) = 0 on
// [0, h], phi(0) = phi(h) = 0, phi > 0 inside, max phi = sigma. They are
// built by shooting from the apex state (sigma, 0) in both z directions.

#include "freewave/profile.hpp"
#include "freewave/reaction.hpp"
#include "freewave/shooting.hpp"

namespace freewave {

struct CompactWave {
  double c = 0.0;
  double sigma = 0.0;
  double width = 0.0;        // h_c
  double slope_left = 0.0;   // phi'(0) > 0
  double slope_right = 0.0;  // phi'(h_c) < 0
  double apex = 0.0;         // z0 in (0, h_c), phi(z0) = sigma
  // On [0, h_c]; uniform spacing on each side of the apex, which is a sample.
  Profile profile;
};

// Speeds for which a compact wave of height sigma exists: (c_star_l, c_star_r).
// L_sigma = c*_l(1) F(sigma) / F(1) with c*_l(1) the increasing-front speed of
// f, R_sigma = -L_sigma; c_star_l < L_sigma < 0 < R_sigma < c_star_r.
struct SpeedWindow {
  double c_star_l = 0.0;
  double c_star_r = 0.0;
  double L_sigma = 0.0;
  double R_sigma = 0.0;

  bool contains(double c) const { return c > c_star_l && c < c_star_r; }
};

// Shot from (sigma, 0). Requires f(sigma) > 0 (InvalidHeightError otherwise).
// backward: crosses_zero carries phi'(left end) > 0; forward: phi'(right end) < 0.
TrajectoryOutcome apex_shoot(const ReactionSpec& f, double sigma, double c, ShotDirection direction,
                             const ShootingConfig& cfg = {});

// Requires sigma in (0, 1), f(sigma) > 0 and F(sigma) > 0; for bistable f the
// last condition means sigma above the zero of F in (theta, 1).
SpeedWindow speed_window(const ReactionSpec& f, double sigma, const ShootingConfig& cfg = {});

// Throws OutOfWindowError (carrying the window) when c is outside it.
CompactWave compact_profile(const ReactionSpec& f, double sigma, double c,
                            const ShootingConfig& cfg = {});

double left_slope(const ReactionSpec& f, double sigma, double c, const ShootingConfig& cfg = {});
double right_slope(const ReactionSpec& f, double sigma, double c, const ShootingConfig& cfg = {});

// Boundary slopes extended by their limit 0 where the shot does not reach
// phi = 0 (left: c <= c*_l, right: c >= c*_r).
double left_slope_or_zero(const ReactionSpec& f, double sigma, double c,
                          const ShootingConfig& cfg = {});
double right_slope_or_zero(const ReactionSpec& f, double sigma, double c,
                           const ShootingConfig& cfg = {});

// Checks the admissibility of a height for compact waves.
void require_valid_height(const ReactionSpec& f, double sigma);

}  // namespace freewave
