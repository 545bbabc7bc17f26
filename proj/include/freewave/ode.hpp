#pragma once

// Adaptive Dormand-Prince 5(4) integration with event location.
//
// Stepping and dense output come from Boost.Odeint; this layer adds the
// pieces odeint does not provide: sign-change events refined by bisection on
// the dense output, terminal events, step budgets and output at requested
// times.
// Integration backwards in time is handled by reparametrising t = t0 - tau so
// the stepper always runs forward.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "freewave/errors.hpp"

namespace freewave::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.5;
  long max_steps = 200000;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(max_step > 0.0) || max_steps < 1) {
      throw ConfigError("integrator config: tolerances and max_step must be positive, max_steps >= 1");
    }
  }
};

enum class Crossing { rising, falling, any };

template <std::size_t N>
struct EventSpec {
  std::function<double(double, const State<N>&)> monitor;
  Crossing direction = Crossing::any;
  bool terminal = true;
};

template <std::size_t N>
struct EventRecord {
  std::size_t index;  // position in the event list passed to integrate()
  double t;
  State<N> y;
};

template <std::size_t N>
struct Trajectory {
  std::vector<double> t;
  std::vector<State<N>> y;
  std::vector<EventRecord<N>> events;
  bool stopped_by_event = false;
  long steps = 0;

  const State<N>& final_state() const { return y.back(); }
  double final_time() const { return t.back(); }
};

namespace detail {

inline bool crossed(double before, double after, Crossing dir) {
  const bool rising = before < 0.0 && after >= 0.0;
  const bool falling = before > 0.0 && after <= 0.0;
  switch (dir) {
    case Crossing::rising:
      return rising;
    case Crossing::falling:
      return falling;
    case Crossing::any:
      return rising || falling;
  }
  return false;
}

template <std::size_t N>
bool all_finite(const State<N>& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

template <std::size_t N>
std::vector<double> to_vector(const State<N>& y) {
  return {y.begin(), y.end()};
}

}  // namespace detail

// Integrates y' = rhs(y, t) from t0 towards t1 (either direction).
// rhs has the odeint signature void(const State<N>& y, State<N>& dydt, double t).
// With an empty output_times the trajectory holds every accepted step point;
// otherwise it holds the dense-output state at exactly those times, which must
// be ordered in the direction of integration and lie between t0 and t1.
// Event times are located to within rel_tol * max(1, |t|); the state reported
// at an event comes from a fresh Dormand-Prince step off the last accepted
// point, not from the (lower order) interpolant.
template <std::size_t N, class Rhs>
Trajectory<N> integrate(Rhs&& rhs, const State<N>& y0, double t0, double t1,
                        std::span<const EventSpec<N>> events, const IntegratorConfig& cfg,
                        std::span<const double> output_times = {}) {
  namespace odeint = boost::numeric::odeint;
  cfg.validate();
  if (!detail::all_finite(y0) || !std::isfinite(t0) || !std::isfinite(t1)) {
    throw ConfigError("integrate: non-finite initial data");
  }

  const double sign = t1 >= t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);
  auto time_of = [&](double tau) { return t0 + sign * tau; };
  auto system = [&](const State<N>& y, State<N>& dy, double tau) {
    rhs(y, dy, time_of(tau));
    if (sign < 0.0) {
      for (auto& v : dy) v = -v;
    }
  };

  using Stepper = odeint::runge_kutta_dopri5<State<N>>;
  auto dense = odeint::make_dense_output(cfg.abs_tol, cfg.rel_tol, cfg.max_step, Stepper());

  const bool sampled = !output_times.empty();
  std::vector<double> out_tau;
  out_tau.reserve(output_times.size());
  for (double t : output_times) {
    const double tau = sign * (t - t0);
    if (!(tau >= 0.0 && tau <= span) || (!out_tau.empty() && tau < out_tau.back())) {
      throw ConfigError("integrate: output times must be ordered and inside [t0, t1]");
    }
    out_tau.push_back(tau);
  }

  Trajectory<N> out;
  std::size_t next_out = 0;
  if (!sampled) {
    out.t.push_back(t0);
    out.y.push_back(y0);
  } else {
    while (next_out < out_tau.size() && out_tau[next_out] == 0.0) {
      out.t.push_back(output_times[next_out++]);
      out.y.push_back(y0);
    }
  }
  if (span == 0.0) return out;

  std::vector<double> g_prev(events.size());
  for (std::size_t k = 0; k < events.size(); ++k) g_prev[k] = events[k].monitor(t0, y0);

  dense.initialize(y0, 0.0, std::min(cfg.max_step, span) * 1e-3);
  State<N> scratch{};

  auto emit_samples_until = [&](double tau_end) {
    while (next_out < out_tau.size() && out_tau[next_out] <= tau_end) {
      dense.calc_state(out_tau[next_out], scratch);
      out.t.push_back(output_times[next_out]);
      out.y.push_back(scratch);
      ++next_out;
    }
  };

  struct Hit {
    std::size_t index;
    double tau;
  };

  while (true) {
    if (out.steps >= cfg.max_steps) {
      throw DivergenceError("integrate: step budget of " + std::to_string(cfg.max_steps) +
                                " exhausted",
                            time_of(dense.current_time()), detail::to_vector(dense.current_state()));
    }
    const auto [tau_a, tau_b_raw] = dense.do_step(system);
    ++out.steps;
    const bool last = tau_b_raw >= span;
    const double tau_b = last ? span : tau_b_raw;
    State<N> y_b{};
    if (last) {
      dense.calc_state(tau_b, y_b);
    } else {
      y_b = dense.current_state();
    }
    if (!detail::all_finite(y_b)) {
      throw DivergenceError("integrate: state became non-finite", time_of(tau_a),
                            detail::to_vector(dense.previous_state()));
    }

    std::vector<Hit> hits;
    std::vector<double> g_new(events.size());
    for (std::size_t k = 0; k < events.size(); ++k) {
      g_new[k] = events[k].monitor(time_of(tau_b), y_b);
      if (!detail::crossed(g_prev[k], g_new[k], events[k].direction)) continue;
      // Bisection on the interpolant keeps the bracketing invariant.
      double lo = tau_a, hi = tau_b;
      const double g_lo = g_prev[k];
      for (int it = 0; it < 200; ++it) {
        if (hi - lo <= cfg.rel_tol * std::max(1.0, std::abs(time_of(hi))) * 1e-2) break;
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        dense.calc_state(mid, scratch);
        const double g_mid = events[k].monitor(time_of(mid), scratch);
        if (detail::crossed(g_lo, g_mid, events[k].direction)) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      hits.push_back({k, hi});
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
      return a.tau < b.tau || (a.tau == b.tau && a.index < b.index);
    });

    for (const Hit& hit : hits) {
      State<N> y_e = dense.previous_state();
      const double h = hit.tau - tau_a;
      if (h > 0.0) {
        Stepper fresh;
        fresh.do_step(system, dense.previous_state(), tau_a, y_e, h);
      }
      out.events.push_back({hit.index, time_of(hit.tau), y_e});
      if (events[hit.index].terminal) {
        if (sampled) {
          emit_samples_until(hit.tau);
        } else {
          out.t.push_back(time_of(hit.tau));
          out.y.push_back(y_e);
        }
        out.stopped_by_event = true;
        return out;
      }
    }
    g_prev = std::move(g_new);

    if (sampled) {
      emit_samples_until(tau_b);
    } else {
      out.t.push_back(time_of(tau_b));
      out.y.push_back(y_b);
    }
    if (last) return out;
  }
}

template <std::size_t N, class Rhs>
Trajectory<N> integrate(Rhs&& rhs, const State<N>& y0, double t0, double t1,
                        const IntegratorConfig& cfg) {
  return integrate<N>(std::forward<Rhs>(rhs), y0, t0, t1, std::span<const EventSpec<N>>{}, cfg);
}

}  // namespace freewave::ode
