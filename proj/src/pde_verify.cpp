#include "freewave/pde_verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "freewave/errors.hpp"
#include "freewave/profile.hpp"

namespace freewave {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void impose_boundary(FrontFrameState& st) {
  st.u.front() = 1.0;
  st.u.back() = 0.0;
  st.v.front() = 0.0;
  st.v.back() = 1.0;
}

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double min_of(const FrontFrameState& st) {
  return std::min(*std::min_element(st.u.begin(), st.u.end()),
                  *std::min_element(st.v.begin(), st.v.end()));
}

}  // namespace

double interface_speed(const FrontFrameState& st, double alpha, double beta) {
  const std::size_t n = st.u.size() - 1;
  const double u_xi = (3.0 * st.u[n] - 4.0 * st.u[n - 1] + st.u[n - 2]) / (2.0 * st.dx);
  const double v_xi = (-3.0 * st.v[0] + 4.0 * st.v[1] - st.v[2]) / (2.0 * st.dx);
  return -alpha * u_xi - beta * v_xi;
}

FrontFrameState make_state(std::vector<double> u, std::vector<double> v, double L, double alpha,
                           double beta) {
  if (u.size() != v.size() || u.size() < 4) {
    throw ConfigError("make_state: u and v need the same size and at least 3 intervals");
  }
  if (!(L > 0.0)) throw ConfigError("make_state: L must be positive");
  FrontFrameState st;
  st.u = std::move(u);
  st.v = std::move(v);
  st.dx = L / static_cast<double>(st.u.size() - 1);
  impose_boundary(st);
  st.speed = interface_speed(st, alpha, beta);
  return st;
}

FrontFrameState initial_state(const TwoSpeciesWave& wave, double L, int N) {
  if (N < 3) throw ConfigError("initial_state: N must be at least 3");
  const double dx = L / N;
  std::vector<double> u(N + 1), v(N + 1);
  const auto& pl = wave.left.profile;
  const auto& pr = wave.right.profile;
  for (int i = 0; i <= N; ++i) {
    const double xi_u = -L + i * dx;
    const double xi_v = i * dx;
    u[i] = xi_u < pl.z.front() ? 1.0 : interpolate(pl, xi_u);
    v[i] = xi_v > pr.z.back() ? 1.0 : interpolate(pr, xi_v);
  }
  return make_state(std::move(u), std::move(v), L, wave.alpha, wave.beta);
}

void step_in_place(FrontFrameState& st, double dt, const ReactionSpec& f, const ReactionSpec& g,
                   double alpha, double beta, std::vector<double>& nu, std::vector<double>& nv) {
  const double dx = st.dx;
  if (!(dt > 0.0) || dt > 0.5 * dx * dx) {
    throw ConfigError("step: dt = " + num(dt) + " violates 0 < dt <= dx^2/2 = " +
                      num(0.5 * dx * dx));
  }
  const std::size_t n = st.u.size() - 1;
  const double sp = st.speed;
  const double inv_dx2 = 1.0 / (dx * dx);
  const double inv_dx = 1.0 / dx;
  nu.resize(n + 1);
  nv.resize(n + 1);
  // Advection sp * w_xi carries information towards -xi when sp > 0.
  auto advect = [sp, inv_dx](const std::vector<double>& w, std::size_t i) {
    return sp > 0.0 ? sp * (w[i + 1] - w[i]) * inv_dx : sp * (w[i] - w[i - 1]) * inv_dx;
  };
  for (std::size_t i = 1; i < n; ++i) {
    const auto& u = st.u;
    nu[i] = u[i] + dt * ((u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_dx2 + advect(u, i) + f(u[i]));
    const auto& v = st.v;
    nv[i] = v[i] + dt * ((v[i + 1] - 2.0 * v[i] + v[i - 1]) * inv_dx2 + advect(v, i) + g(v[i]));
  }
  std::swap(st.u, nu);
  std::swap(st.v, nv);
  impose_boundary(st);
  st.s += dt * sp;
  st.t += dt;
  st.speed = interface_speed(st, alpha, beta);
  if (!std::isfinite(st.speed)) {
    throw DivergenceError("step: non-finite interface speed", st.t, {st.s});
  }
}

FrontFrameState step(const FrontFrameState& state, double dt, const ReactionSpec& f,
                     const ReactionSpec& g, double alpha, double beta) {
  FrontFrameState next = state;
  std::vector<double> su, sv;
  step_in_place(next, dt, f, g, alpha, beta, su, sv);
  return next;
}

SimReport simulate(const FrontFrameState& start, const ReactionSpec& f, const ReactionSpec& g,
                   double alpha, double beta, double T, double dt, int samples) {
  if (!(T > 0.0)) throw ConfigError("simulate: T must be positive");
  const double bound = 0.5 * start.dx * start.dx;
  if (dt == 0.0) dt = 0.25 * start.dx * start.dx;
  if (!(dt > 0.0) || dt > bound) {
    throw ConfigError("simulate: dt = " + num(dt) + " violates 0 < dt <= dx^2/2 = " + num(bound));
  }
  long steps = static_cast<long>(std::ceil(T / dt));
  steps += steps % 2;
  dt = T / static_cast<double>(steps);
  const long every = std::max(1L, steps / std::max(1, samples));

  SimReport rep;
  rep.dt = dt;
  rep.steps = steps;
  rep.initial = start;
  FrontFrameState st = start;
  st.t = 0.0;
  st.speed = interface_speed(st, alpha, beta);
  rep.min_value = min_of(st);
  rep.speed_history.push_back({st.t, st.s, st.speed});
  std::vector<double> su, sv;
  double s_half = 0.0;
  for (long k = 1; k <= steps; ++k) {
    step_in_place(st, dt, f, g, alpha, beta, su, sv);
    st.t = static_cast<double>(k) * dt;  // no drift from summing dt
    if (k == steps) st.t = T;
    if (k == steps / 2) s_half = st.s;
    if (k % every == 0 || k == steps) {
      rep.speed_history.push_back({st.t, st.s, st.speed});
      rep.min_value = std::min(rep.min_value, min_of(st));
    }
  }
  rep.mean_speed = (st.s - s_half) / (0.5 * T);
  rep.profile_drift = std::max(sup_distance(st.u, start.u), sup_distance(st.v, start.v));
  rep.final_state = std::move(st);
  return rep;
}

SimReport run(const TwoSpeciesWave& wave, const ReactionSpec& f, const ReactionSpec& g, double L,
              int N, double T, double dt) {
  return simulate(initial_state(wave, L, N), f, g, wave.alpha, wave.beta, T, dt);
}

FrontFrameState mirror(const FrontFrameState& state, double alpha, double beta) {
  std::vector<double> u(state.v.rbegin(), state.v.rend());
  std::vector<double> v(state.u.rbegin(), state.u.rend());
  FrontFrameState m = make_state(std::move(u), std::move(v), state.length(), beta, alpha);
  m.s = -state.s;
  m.t = state.t;
  return m;
}

}  // namespace freewave
