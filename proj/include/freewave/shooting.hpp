#pragma once

// Shooting in the (phi, Phi) phase plane of phi'' + c phi' + f(phi) = 0,
// i.e. phi' = Phi, Phi' = -c Phi - f(phi).
//
// A shot starts from a given state and runs in z (forward or backward) until
// one of three things happens:
//   - phi reaches 0 while still moving towards it    -> crosses_zero
//   - phi stops moving towards 0 with phi > 0         -> stalls
//   - the state enters a small ball around the origin -> decided from the
//     linearisation at (0, 0) (see classify_near_origin)
// The last case is what makes the monostable critical speeds computable: a
// trajectory that spirals into a focus crosses zero after an arbitrarily long
// excursion with an exponentially small slope, and one that enters a node
// never crosses at all.

#include <string>

#include "freewave/ode.hpp"
#include "freewave/reaction.hpp"

namespace freewave {

enum class OutcomeTag { crosses_zero, stalls, converges_origin };

std::string to_string(OutcomeTag tag);

struct TrajectoryOutcome {
  OutcomeTag tag;
  // phi'(z) where phi = 0; set for crosses_zero only. Negative when the shot
  // runs forward in z, positive when it runs backward.
  double slope = 0.0;
  // z at which the outcome was decided (crossing point for crosses_zero).
  double z = 0.0;

  bool crosses() const { return tag == OutcomeTag::crosses_zero; }
};

struct ShootingConfig {
  ode::IntegratorConfig integrator{1e-12, 1e-14, 0.25, 2'000'000};
  // Launch distance from the saddle (1, 0) along its unstable direction.
  double launch_offset = 1e-6;
  // Radius of the ball around (0, 0) inside which the linearisation decides.
  double origin_radius = 1e-6;
  // Longest z-excursion of a single shot.
  double z_max = 1e4;
  // Bisection tolerance on critical speeds.
  double speed_tol = 1e-8;
  // Root tolerance for speeds defined by matching conditions.
  double root_tol = 1e-12;
  // Sample spacing of reconstructed profiles.
  double profile_spacing = 0.01;
};

enum class ShotDirection { backward = -1, forward = 1 };

// Outcome of the linear flow p' = q, q' = -c q - a p from (p0, q0), p0 >= 0,
// moving towards p = 0 (q0 <= 0 means approaching). Returns crosses_zero with
// the slope at the first zero of p and z set to the elapsed time, stalls when
// the unstable mode of a saddle carries p away again, converges_origin when p
// stays positive and decays.
TrajectoryOutcome classify_near_origin(double p0, double q0, double c, double a);

struct Shot {
  TrajectoryOutcome outcome;
  ode::Trajectory<2> path;
};

// Runs a shot from `start` at z = 0 in the given direction.
Shot shoot(const ReactionSpec& f, double c, const ode::State<2>& start, ShotDirection direction,
           const ShootingConfig& cfg);

// Re-runs the same shot without events up to z_end, recording the state at
// the given z values (ordered in the direction of the shot).
ode::Trajectory<2> resample_shot(const ReactionSpec& f, double c, const ode::State<2>& start,
                                 double z_end, std::span<const double> z_values,
                                 const ShootingConfig& cfg);

}  // namespace freewave
