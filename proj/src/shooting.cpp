#include "freewave/shooting.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace freewave {

std::string to_string(OutcomeTag tag) {
  switch (tag) {
    case OutcomeTag::crosses_zero:
      return "crosses_zero";
    case OutcomeTag::stalls:
      return "stalls";
    case OutcomeTag::converges_origin:
      return "converges_origin";
  }
  return "?";
}

namespace {

// A crossing slope that underflows is still a crossing.
double nonzero_negative(double slope) {
  return slope < 0.0 ? slope : -std::numeric_limits<double>::denorm_min();
}

TrajectoryOutcome no_crossing(double lambda_max, double z) {
  return {lambda_max > 0.0 ? OutcomeTag::stalls : OutcomeTag::converges_origin, 0.0, z};
}

}  // namespace

TrajectoryOutcome classify_near_origin(double p0, double q0, double c, double a) {
  const double disc = c * c - 4.0 * a;
  if (disc < 0.0) {
    // p = R e^{-cs/2} sin(k s + angle)
    const double k = 0.5 * std::sqrt(-disc);
    const double b = (q0 + 0.5 * c * p0) / k;
    const double r = std::hypot(p0, b);
    const double angle = std::atan2(p0, b);
    const double s = (std::numbers::pi - angle) / k;
    return {OutcomeTag::crosses_zero, nonzero_negative(-r * k * std::exp(-0.5 * c * s)), s};
  }
  const double root = std::sqrt(disc);
  const double l1 = 0.5 * (-c + root);
  const double l2 = 0.5 * (-c - root);
  if (root > 1e-12 * (1.0 + std::abs(c))) {
    // p = A e^{l1 s} + B e^{l2 s}, l1 > l2
    const double amp1 = (q0 - l2 * p0) / root;
    const double amp2 = (l1 * p0 - q0) / root;
    if (amp1 < 0.0) {
      const double s = std::log(-amp2 / amp1) / root;
      const double m = amp2 * std::exp(l2 * s);
      return {OutcomeTag::crosses_zero, nonzero_negative(m * (l2 - l1)), s};
    }
    return no_crossing(l1, 0.0);
  }
  // Repeated root: p = (p0 + d s) e^{l s}
  const double l = -0.5 * c;
  const double d = q0 - l * p0;
  if (d < 0.0) {
    const double s = -p0 / d;
    return {OutcomeTag::crosses_zero, nonzero_negative(d * std::exp(l * s)), s};
  }
  return no_crossing(l, 0.0);
}

Shot shoot(const ReactionSpec& f, double c, const ode::State<2>& start, ShotDirection direction,
           const ShootingConfig& cfg) {
  const double d = static_cast<double>(direction);
  const double eta = cfg.origin_radius;
  auto rhs = [&f, c](const ode::State<2>& y, ode::State<2>& dy, double) {
    dy[0] = y[1];
    dy[1] = -c * y[1] - f(y[0]);
  };
  // Event 3 catches slow convergence to an interior equilibrium (theta, 0)
  // of a bistable f, which is a stall that never makes Phi change sign.
  auto near_interior_rest = [eta, &f](double, const ode::State<2>& y) {
    if (!(y[0] > 2.0 * eta && y[0] < 1.0 - 1e-3)) return 1.0;
    return std::hypot(y[1], f(y[0])) - eta;
  };
  const std::array<ode::EventSpec<2>, 4> events{{
      {[](double, const ode::State<2>& y) { return y[0]; }, ode::Crossing::falling, true},
      {[d](double, const ode::State<2>& y) { return d * y[1]; }, ode::Crossing::rising, true},
      {[eta](double, const ode::State<2>& y) { return std::hypot(y[0], y[1]) - eta; },
       ode::Crossing::falling, true},
      {near_interior_rest, ode::Crossing::falling, true},
  }};
  Shot shot{{OutcomeTag::stalls, 0.0, 0.0},
            ode::integrate<2>(rhs, start, 0.0, d * cfg.z_max, events, cfg.integrator)};
  const auto& path = shot.path;
  if (!path.stopped_by_event) {
    throw DivergenceError("shoot: outcome undecided after |z| = " + std::to_string(cfg.z_max),
                          path.final_time(), {path.final_state().begin(), path.final_state().end()});
  }
  const auto& hit = path.events.back();
  switch (hit.index) {
    case 0:
      shot.outcome = {OutcomeTag::crosses_zero, hit.y[1], hit.t};
      break;
    case 1:
    case 3:
      shot.outcome = {OutcomeTag::stalls, 0.0, hit.t};
      break;
    default: {
      const auto lin = classify_near_origin(hit.y[0], d * hit.y[1], d * c, f.derivative(0.0));
      shot.outcome = {lin.tag, d * lin.slope, hit.t + d * lin.z};
      break;
    }
  }
  return shot;
}

ode::Trajectory<2> resample_shot(const ReactionSpec& f, double c, const ode::State<2>& start,
                                 double z_end, std::span<const double> z_values,
                                 const ShootingConfig& cfg) {
  auto rhs = [&f, c](const ode::State<2>& y, ode::State<2>& dy, double) {
    dy[0] = y[1];
    dy[1] = -c * y[1] - f(y[0]);
  };
  return ode::integrate<2>(rhs, start, 0.0, z_end, {}, cfg.integrator, z_values);
}

}  // namespace freewave
