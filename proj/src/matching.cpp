#include "freewave/matching.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "freewave/errors.hpp"
#include "freewave/roots.hpp"

namespace freewave {

namespace {

// Below this |c| the sign of a speed is not resolved and sign laws are vacuous.
constexpr double kSignTol = 1e-8;

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be positive and finite, got " + num(v));
  }
}

int monotonicity(const std::vector<double>& v) {
  bool inc = true, dec = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    inc = inc && v[i] > v[i - 1];
    dec = dec && v[i] < v[i - 1];
  }
  if (v.size() < 2) return 0;
  return inc ? 1 : dec ? -1 : 0;
}

// Runs body(i) for i in [0, n) on up to `threads` workers. The first failure
// by index is rethrown, so the outcome does not depend on scheduling.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Only the parts of the case analysis that one side of the compact wave needs.
CaseAnalysis left_analysis(const ReactionSpec& f1, const ReactionSpec& f2, double alpha,
                           double sigma, const ShootingConfig& cfg) {
  CaseAnalysis a;
  a.window = speed_window(f2, sigma, cfg);
  a.hat_c1 = hat_c1(f1, alpha, cfg);
  a.tag.left_case = a.hat_c1 <= a.window.c_star_r ? LeftCase::case1 : LeftCase::case2;
  return a;
}

CaseAnalysis right_analysis(const ReactionSpec& f2, const ReactionSpec& f3, double gamma,
                            double sigma, const ShootingConfig& cfg) {
  CaseAnalysis a;
  a.window = speed_window(f2, sigma, cfg);
  a.hat_c3 = hat_c3(f3, gamma, cfg);
  a.tag.right_case = a.window.c_star_l <= a.hat_c3 ? RightCase::caseI : RightCase::caseII;
  return a;
}

}  // namespace

std::string to_string(LeftCase c) { return c == LeftCase::case1 ? "Case1" : "Case2"; }
std::string to_string(RightCase c) { return c == RightCase::caseI ? "CaseI" : "CaseII"; }

// ---- two species ----

double hat_c_f(const ReactionSpec& f, double alpha, const ShootingConfig& cfg) {
  require_positive(alpha, "alpha");
  const double c_star = critical_speed_decreasing(f, cfg);
  auto obj = [&](double c) { return alpha * semiwave_slope_or_zero(f, c, cfg) + c; };
  return find_root_monotone(obj, {0.0, c_star, cfg.root_tol});
}

double hat_c_g(const ReactionSpec& g, double beta, const ShootingConfig& cfg) {
  return -hat_c_f(g, beta, cfg);
}

double D_two(double c, double alpha, double beta, const ReactionSpec& f, const ReactionSpec& g,
             const ShootingConfig& cfg) {
  return alpha * semiwave_slope(f, c, cfg) + beta * semiwave_slope_increasing(g, c, cfg) + c;
}

double beta_of_c(const ReactionSpec& f, const ReactionSpec& g, double alpha, double c,
                 const ShootingConfig& cfg) {
  require_positive(alpha, "alpha");
  const double top = alpha * semiwave_slope(f, c, cfg) + c;
  if (!(top < 0.0)) {
    throw DomainError("beta_of_c: c = " + num(c) + " is not below hat_c_f (no positive beta)");
  }
  return -top / semiwave_slope_increasing(g, c, cfg);
}

double alpha_of_c(const ReactionSpec& f, const ReactionSpec& g, double beta, double c,
                  const ShootingConfig& cfg) {
  require_positive(beta, "beta");
  const double top = beta * semiwave_slope_increasing(g, c, cfg) + c;
  if (!(top > 0.0)) {
    throw DomainError("alpha_of_c: c = " + num(c) + " is not above hat_c_g (no positive alpha)");
  }
  return -top / semiwave_slope(f, c, cfg);
}

double tilde_beta(const ReactionSpec& f, const ReactionSpec& g, double alpha) {
  return alpha * std::sqrt(f.primitive(1.0) / g.primitive(1.0));
}

double tilde_alpha(const ReactionSpec& f, const ReactionSpec& g, double beta) {
  return beta * std::sqrt(g.primitive(1.0) / f.primitive(1.0));
}

TwoSpeciesWave solve_two_species(const ReactionSpec& f, const ReactionSpec& g, double alpha,
                                 double beta, const ShootingConfig& cfg, double far_tol) {
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  const double lo = critical_speed_increasing(g, cfg);
  const double hi = critical_speed_decreasing(f, cfg);
  // D extended by its limits: continuous on [c*_g, c*_f], negative at the
  // left end and positive at the right end.
  auto D = [&](double c) {
    return alpha * semiwave_slope_or_zero(f, c, cfg) +
           beta * semiwave_slope_increasing_or_zero(g, c, cfg) + c;
  };
  TwoSpeciesWave w;
  w.c = find_root_monotone(D, {lo, hi, cfg.root_tol});
  w.alpha = alpha;
  w.beta = beta;
  w.left = semiwave_profile(f, w.c, far_tol, cfg);
  w.right = semiwave_profile_increasing(g, w.c, far_tol, cfg);
  w.tilde_beta = tilde_beta(f, g, alpha);
  w.residual = alpha * w.left.slope0 + beta * w.right.slope0 + w.c;
  w.sign_law_holds = std::abs(w.c) <= kSignTol || (w.c > 0.0) == (beta < w.tilde_beta);
  return w;
}

// ---- three species ----

double hat_c1(const ReactionSpec& f1, double alpha, const ShootingConfig& cfg) {
  return hat_c_f(f1, alpha, cfg);
}

double hat_c3(const ReactionSpec& f3, double gamma, const ShootingConfig& cfg) {
  return hat_c_g(f3, gamma, cfg);
}

CaseAnalysis case_classify(const ReactionSpec& f1, const ReactionSpec& f2, const ReactionSpec& f3,
                           double alpha, double gamma, double sigma, const ShootingConfig& cfg) {
  require_positive(alpha, "alpha");
  require_positive(gamma, "gamma");
  CaseAnalysis a;
  a.window = speed_window(f2, sigma, cfg);
  a.hat_c1 = hat_c1(f1, alpha, cfg);
  a.hat_c3 = hat_c3(f3, gamma, cfg);
  a.tag.left_case = a.hat_c1 <= a.window.c_star_r ? LeftCase::case1 : LeftCase::case2;
  a.tag.right_case = a.window.c_star_l <= a.hat_c3 ? RightCase::caseI : RightCase::caseII;
  a.c_minus = std::max(a.hat_c3, a.window.c_star_l);
  a.c_plus = std::min(a.hat_c1, a.window.c_star_r);
  if (!(a.c_minus < a.c_plus)) {
    throw InfeasibleError("empty admissible speed interval (" + num(a.c_minus) + ", " +
                          num(a.c_plus) + ")");
  }
  return a;
}

double tilde_beta_l(const ReactionSpec& f1, const ReactionSpec& f2, double alpha, double sigma) {
  return alpha * std::sqrt(f1.primitive(1.0)) / std::sqrt(f2.primitive(sigma));
}

double tilde_beta_r(const ReactionSpec& f2, const ReactionSpec& f3, double gamma, double sigma) {
  return gamma * std::sqrt(f3.primitive(1.0)) / std::sqrt(f2.primitive(sigma));
}

double beta_l_of_c(const ReactionSpec& f1, const ReactionSpec& f2, double alpha, double sigma,
                   double c, const ShootingConfig& cfg) {
  require_positive(alpha, "alpha");
  const double top = alpha * semiwave_slope(f1, c, cfg) + c;
  if (!(top < 0.0)) {
    throw DomainError("beta_l_of_c: c = " + num(c) + " is not below hat_c1");
  }
  return -top / left_slope(f2, sigma, c, cfg);
}

double beta_r_of_c(const ReactionSpec& f2, const ReactionSpec& f3, double gamma, double sigma,
                   double c, const ShootingConfig& cfg) {
  require_positive(gamma, "gamma");
  const double top = gamma * semiwave_slope_increasing(f3, c, cfg) + c;
  if (!(top > 0.0)) {
    throw DomainError("beta_r_of_c: c = " + num(c) + " is not above hat_c3");
  }
  return -top / right_slope(f2, sigma, c, cfg);
}

double beta0_l(const ReactionSpec& f1, const ReactionSpec& f2, double alpha, double sigma,
               const CaseAnalysis& a, const ShootingConfig& cfg) {
  if (a.tag.left_case != LeftCase::case2) {
    throw CaseError("beta0_l is defined in Case 2 only (hat_c1 = " + num(a.hat_c1) +
                    " <= c*_r = " + num(a.window.c_star_r) + ")");
  }
  const double c = a.window.c_star_r;
  // Only the left half of the compact wave matters here; it still exists at c*_r.
  return -(alpha * semiwave_slope(f1, c, cfg) + c) / left_slope_or_zero(f2, sigma, c, cfg);
}

double beta0_l(const ReactionSpec& f1, const ReactionSpec& f2, double alpha, double sigma,
               const ShootingConfig& cfg) {
  return beta0_l(f1, f2, alpha, sigma, left_analysis(f1, f2, alpha, sigma, cfg), cfg);
}

double beta0_r(const ReactionSpec& f2, const ReactionSpec& f3, double gamma, double sigma,
               const CaseAnalysis& a, const ShootingConfig& cfg) {
  if (a.tag.right_case != RightCase::caseII) {
    throw CaseError("beta0_r is defined in Case II only (c*_l = " + num(a.window.c_star_l) +
                    " <= hat_c3 = " + num(a.hat_c3) + ")");
  }
  const double c = a.window.c_star_l;
  return -(gamma * semiwave_slope_increasing(f3, c, cfg) + c) /
         right_slope_or_zero(f2, sigma, c, cfg);
}

double beta0_r(const ReactionSpec& f2, const ReactionSpec& f3, double gamma, double sigma,
               const ShootingConfig& cfg) {
  return beta0_r(f2, f3, gamma, sigma, right_analysis(f2, f3, gamma, sigma, cfg), cfg);
}

double C_l(const ReactionSpec& f1, const ReactionSpec& f2, double alpha, double sigma,
           double beta_l, const CaseAnalysis& a, const ShootingConfig& cfg) {
  if (!(beta_l > 0.0)) throw NoRootError("C_l: beta_l must be positive, got " + num(beta_l));
  auto D = [&](double c) {
    return alpha * semiwave_slope_or_zero(f1, c, cfg) +
           beta_l * left_slope_or_zero(f2, sigma, c, cfg) + c;
  };
  const double lo = a.window.c_star_l;
  const double hi = std::min(a.hat_c1, a.window.c_star_r);
  if (D(hi) < 0.0) {
    throw NoRootError("C_l: no speed for beta_l = " + num(beta_l) +
                      " (Case 2 needs beta_l >= beta0_l)");
  }
  return find_root_monotone(D, {lo, hi, cfg.root_tol});
}

double C_l(const ReactionSpec& f1, const ReactionSpec& f2, double alpha, double sigma,
           double beta_l, const ShootingConfig& cfg) {
  return C_l(f1, f2, alpha, sigma, beta_l, left_analysis(f1, f2, alpha, sigma, cfg), cfg);
}

double C_r(const ReactionSpec& f2, const ReactionSpec& f3, double gamma, double sigma,
           double beta_r, const CaseAnalysis& a, const ShootingConfig& cfg) {
  if (!(beta_r > 0.0)) throw NoRootError("C_r: beta_r must be positive, got " + num(beta_r));
  auto D = [&](double c) {
    return beta_r * right_slope_or_zero(f2, sigma, c, cfg) +
           gamma * semiwave_slope_increasing_or_zero(f3, c, cfg) + c;
  };
  const double lo = std::max(a.hat_c3, a.window.c_star_l);
  const double hi = a.window.c_star_r;
  if (D(lo) > 0.0) {
    throw NoRootError("C_r: no speed for beta_r = " + num(beta_r) +
                      " (Case II needs beta_r >= beta0_r)");
  }
  return find_root_monotone(D, {lo, hi, cfg.root_tol});
}

double C_r(const ReactionSpec& f2, const ReactionSpec& f3, double gamma, double sigma,
           double beta_r, const ShootingConfig& cfg) {
  return C_r(f2, f3, gamma, sigma, beta_r, right_analysis(f2, f3, gamma, sigma, cfg), cfg);
}

ThreeSpeciesWave solve_three_species(const ReactionSpec& f1, const ReactionSpec& f2,
                                     const ReactionSpec& f3, double alpha, double gamma,
                                     double sigma, double c, const ShootingConfig& cfg,
                                     double far_tol) {
  const auto a = case_classify(f1, f2, f3, alpha, gamma, sigma, cfg);
  if (!(c > a.c_minus && c < a.c_plus)) {
    throw OutOfIntervalError("c = " + num(c) + " outside the admissible interval (" +
                                 num(a.c_minus) + ", " + num(a.c_plus) + ")",
                             a.c_minus, a.c_plus);
  }
  ThreeSpeciesWave w;
  w.c = c;
  w.alpha = alpha;
  w.gamma = gamma;
  w.sigma = sigma;
  w.case_tag = a.tag;
  w.c_minus = a.c_minus;
  w.c_plus = a.c_plus;
  w.left = semiwave_profile(f1, c, far_tol, cfg);
  w.middle = compact_profile(f2, sigma, c, cfg);
  w.right = semiwave_profile_increasing(f3, c, far_tol, cfg);
  w.beta_l = -(alpha * w.left.slope0 + c) / w.middle.slope_left;
  w.beta_r = -(gamma * w.right.slope0 + c) / w.middle.slope_right;
  w.tilde_beta_l = tilde_beta_l(f1, f2, alpha, sigma);
  w.tilde_beta_r = tilde_beta_r(f2, f3, gamma, sigma);
  w.residual_l = alpha * w.left.slope0 + w.beta_l * w.middle.slope_left + c;
  w.residual_r = w.beta_r * w.middle.slope_right + gamma * w.right.slope0 + c;
  const bool pos = c > 0.0;
  w.sign_law_holds = std::abs(c) <= kSignTol ||
                     (pos == (w.beta_l < w.tilde_beta_l) && pos == (w.beta_r > w.tilde_beta_r));
  return w;
}

// ---- dispersion ----

std::string to_string(DispersionKind kind) {
  switch (kind) {
    case DispersionKind::two_beta:
      return "two_beta";
    case DispersionKind::two_alpha:
      return "two_alpha";
    case DispersionKind::three:
      return "three";
  }
  return "?";
}

DispersionKind parse_dispersion_kind(const std::string& text) {
  if (text == "two_beta") return DispersionKind::two_beta;
  if (text == "two_alpha") return DispersionKind::two_alpha;
  if (text == "three") return DispersionKind::three;
  throw SchemaError("unknown dispersion kind '" + text + "' (two_beta, two_alpha, three)");
}

DispersionCurve dispersion_curve(DispersionKind kind, const DispersionParams& p,
                                 const std::vector<double>& grid, const ShootingConfig& cfg,
                                 unsigned threads) {
  const std::size_t need = kind == DispersionKind::three ? 3 : 2;
  if (p.reactions.size() != need) {
    throw SchemaError(to_string(kind) + " dispersion needs " + std::to_string(need) +
                      " reactions, got " + std::to_string(p.reactions.size()));
  }
  const auto& r = p.reactions;
  DispersionCurve curve;
  curve.kind = kind;
  curve.c = grid;
  CaseAnalysis analysis;
  switch (kind) {
    case DispersionKind::two_beta:
      curve.columns = {"beta"};
      curve.lo = critical_speed_increasing(r[1], cfg);
      curve.hi = hat_c_f(r[0], p.alpha, cfg);
      break;
    case DispersionKind::two_alpha:
      curve.columns = {"alpha"};
      curve.lo = hat_c_g(r[1], p.beta, cfg);
      curve.hi = critical_speed_decreasing(r[0], cfg);
      break;
    case DispersionKind::three:
      curve.columns = {"beta_l", "beta_r"};
      analysis = case_classify(r[0], r[1], r[2], p.alpha, p.gamma, p.sigma, cfg);
      curve.lo = analysis.c_minus;
      curve.hi = analysis.c_plus;
      break;
  }
  for (double c : grid) {
    if (!(c > curve.lo && c < curve.hi)) {
      throw DomainError("grid point c = " + num(c) + " outside the admissible interval (" +
                        num(curve.lo) + ", " + num(curve.hi) + ")");
    }
  }
  curve.values.assign(curve.columns.size(), std::vector<double>(grid.size()));
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    const double c = grid[i];
    switch (kind) {
      case DispersionKind::two_beta:
        curve.values[0][i] = beta_of_c(r[0], r[1], p.alpha, c, cfg);
        break;
      case DispersionKind::two_alpha:
        curve.values[0][i] = alpha_of_c(r[0], r[1], p.beta, c, cfg);
        break;
      case DispersionKind::three:
        curve.values[0][i] = beta_l_of_c(r[0], r[1], p.alpha, p.sigma, c, cfg);
        curve.values[1][i] = beta_r_of_c(r[1], r[2], p.gamma, p.sigma, c, cfg);
        break;
    }
  });
  for (const auto& col : curve.values) curve.monotonicity.push_back(monotonicity(col));
  return curve;
}

}  // namespace freewave
