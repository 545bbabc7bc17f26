#pragma once

// Front-fixing simulation of the two-species free-boundary problem
//
//   u_t = u_xx + f(u),  x < s(t);    v_t = v_xx + g(v),  x > s(t)
//   u = v = 0 at x = s(t),  s'(t) = -alpha u_x - beta v_x there.
//
// In the frame xi = x - s(t) the interface sits at xi = 0 and both equations
// gain the advection term s'(t) w_xi. A traveling wave of speed c is then a
// steady state with s' = c, which is what the simulator checks.
//
// Discretisation: N intervals of width dx = L / N on each side, explicit
// Euler in time, central second differences, advection upwinded by the sign
// of s', three-point one-sided differences for the interface slopes, and
// Dirichlet data u(-L) = v(L) = 1.

#include <vector>

#include "freewave/matching.hpp"
#include "freewave/reaction.hpp"

namespace freewave {

struct FrontFrameState {
  std::vector<double> u;  // xi_i = -L + i dx, i = 0..N; u.back() is the interface
  std::vector<double> v;  // xi_i = i dx, i = 0..N; v.front() is the interface
  double dx = 0.0;
  double s = 0.0;
  double speed = 0.0;  // s'(t) from the current profiles
  double t = 0.0;

  double length() const { return dx * static_cast<double>(u.size() - 1); }
};

struct SpeedSample {
  double t;
  double s;
  double speed;
};

struct SimReport {
  std::vector<SpeedSample> speed_history;
  // (s(T) - s(T/2)) / (T/2)
  double mean_speed = 0.0;
  // max over both species of the L-infinity change of the frame profile
  double profile_drift = 0.0;
  // most negative value seen (profiles are clipped at 0 when exported)
  double min_value = 0.0;
  double dt = 0.0;
  long steps = 0;
  FrontFrameState initial;
  FrontFrameState final_state;
};

// -alpha u_xi(0-) - beta v_xi(0+), second-order one-sided differences.
double interface_speed(const FrontFrameState& state, double alpha, double beta);

// Builds a state from samples. Boundary values are imposed; ConfigError on
// mismatched sizes or fewer than 3 intervals.
FrontFrameState make_state(std::vector<double> u, std::vector<double> v, double L,
                           double alpha, double beta);

// Profiles of an assembled wave on the grid, extended by 1 beyond their range.
FrontFrameState initial_state(const TwoSpeciesWave& wave, double L, int N);

// One explicit step. ConfigError when dt > dx^2 / 2.
FrontFrameState step(const FrontFrameState& state, double dt, const ReactionSpec& f,
                     const ReactionSpec& g, double alpha, double beta);
// Same, reusing the state's storage.
void step_in_place(FrontFrameState& state, double dt, const ReactionSpec& f,
                   const ReactionSpec& g, double alpha, double beta,
                   std::vector<double>& scratch_u, std::vector<double>& scratch_v);

// Runs from `start` to t = T. dt = 0 picks 0.25 dx^2; the step is then
// shrunk so an even number of steps lands exactly on T. `samples` speed
// records are kept, evenly spaced in steps.
SimReport simulate(const FrontFrameState& start, const ReactionSpec& f, const ReactionSpec& g,
                   double alpha, double beta, double T, double dt = 0.0, int samples = 400);

SimReport run(const TwoSpeciesWave& wave, const ReactionSpec& f, const ReactionSpec& g,
              double L, int N, double T, double dt = 0.0);

// Mirror xi -> -xi and swap the species: the simulation of (g, beta, v)
// on the left and (f, alpha, u) on the right.
FrontFrameState mirror(const FrontFrameState& state, double alpha, double beta);

}  // namespace freewave
