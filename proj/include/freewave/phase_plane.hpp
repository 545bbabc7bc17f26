#pragma once

// Semi-waves on a half line and full-line fronts of phi'' + c phi' + f(phi) = 0.
//
// Decreasing semi-wave: phi on (-inf, 0], phi(-inf) = 1, phi(0) = 0, phi' < 0.
// It exists exactly for c < c*_f, where c*_f > 0 is the speed of the
// decreasing front from 1 to 0 (minimal speed for monostable f, unique speed
// for bistable f). Its boundary slope phi'(0; c) < 0 increases with c and
// tends to 0 as c -> c*_f.
//
// Increasing semi-wave: psi on [0, inf), psi(0) = 0, psi(inf) = 1. By the
// reflection psi(z) = phi(-z) it is the decreasing semi-wave at speed -c, so
// it exists exactly for c > c*_g := -c*_f < 0.

#include "freewave/profile.hpp"
#include "freewave/reaction.hpp"
#include "freewave/shooting.hpp"

namespace freewave {

struct SemiWave {
  double c = 0.0;
  // phi'(0): negative for the decreasing wave, positive for the increasing one.
  double slope0 = 0.0;
  // Decreasing: z in [-L, 0]; increasing: z in [0, L]. Uniformly spaced, with
  // the free boundary sample exactly at z = 0 with value 0.
  Profile profile;
  // L; the far end of the profile is within far_tol of 1.
  double domain_length = 0.0;
  bool increasing = false;
};

// Shot from the saddle (1, 0) along its unstable manifold into Phi < 0.
TrajectoryOutcome shoot_decreasing(const ReactionSpec& f, double c, const ShootingConfig& cfg = {});

// c*_f by bisection on the outcome of shoot_decreasing (crosses below c*_f).
double critical_speed_decreasing(const ReactionSpec& f, const ShootingConfig& cfg = {});

// phi'(0; c) < 0. Throws NoSemiWaveError when c >= c*_f.
double semiwave_slope(const ReactionSpec& f, double c, const ShootingConfig& cfg = {});

SemiWave semiwave_profile(const ReactionSpec& f, double c, double far_tol = 1e-8,
                          const ShootingConfig& cfg = {});

// psi'(0; c) = -semiwave_slope(g, -c) > 0. Throws NoSemiWaveError when c <= c*_g.
double semiwave_slope_increasing(const ReactionSpec& g, double c, const ShootingConfig& cfg = {});

// c*_g = -c*_f(g) < 0.
double critical_speed_increasing(const ReactionSpec& g, const ShootingConfig& cfg = {});

SemiWave semiwave_profile_increasing(const ReactionSpec& g, double c, double far_tol = 1e-8,
                                     const ShootingConfig& cfg = {});

// The decreasing full-line front at speed c (normally c*_f), sampled from the
// launch point until phi falls below `floor` or the shot is decided,
// z measured from the launch point.
Profile front_profile(const ReactionSpec& f, double c, double floor = 1e-6,
                      const ShootingConfig& cfg = {});

// Slope as a continuous function of c on the whole line: phi'(0; c) below
// c*_f, 0 at and above it (its limit value). Used to bracket matching roots
// right up to the critical speeds.
double semiwave_slope_or_zero(const ReactionSpec& f, double c, const ShootingConfig& cfg = {});
double semiwave_slope_increasing_or_zero(const ReactionSpec& g, double c,
                                         const ShootingConfig& cfg = {});

}  // namespace freewave
