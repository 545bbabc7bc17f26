#pragma once

// Free-boundary matching. A wave of the two-species problem is a decreasing
// semi-wave phi (reaction f, left of the boundary) and an increasing one psi
// (reaction g, right of it) whose speed obeys
//
//   D(c; beta) = alpha phi'(0; c) + beta psi'(0; c) + c = 0.
//
// The three-species problem puts a compact wave phi2 of height sigma between
// phi1 and phi3 and imposes one such condition at each end:
//
//   D_l = alpha phi1'(0) + beta_l phi2'(0) + c = 0
//   D_r = beta_r phi2'(h_c) + gamma phi3'(0) + c = 0.
//
// Every D is increasing in c and affine in its coefficient, so coefficients
// are solved by division and speeds by bracketed root finding.

#include <string>
#include <vector>

#include "freewave/compact_wave.hpp"
#include "freewave/phase_plane.hpp"
#include "freewave/reaction.hpp"

namespace freewave {

struct TwoSpeciesWave {
  double c = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  SemiWave left;   // decreasing, f
  SemiWave right;  // increasing, g
  double tilde_beta = 0.0;
  // alpha phi'(0) + beta psi'(0) + c
  double residual = 0.0;
  // c > 0 <=> beta < tilde_beta (vacuous when |c| is below the root tolerance)
  bool sign_law_holds = false;
};

enum class LeftCase { case1, case2 };
enum class RightCase { caseI, caseII };

std::string to_string(LeftCase c);
std::string to_string(RightCase c);

struct CaseTag {
  LeftCase left_case = LeftCase::case1;
  RightCase right_case = RightCase::caseI;

  friend bool operator==(const CaseTag&, const CaseTag&) = default;
};

// Everything the three-species solves need that depends only on
// (f1, f2, f3, alpha, gamma, sigma).
struct CaseAnalysis {
  CaseTag tag;
  double hat_c1 = 0.0;
  double hat_c3 = 0.0;
  SpeedWindow window;
  double c_minus = 0.0;  // max(hat_c3, c*_l)
  double c_plus = 0.0;   // min(hat_c1, c*_r)
};

struct ThreeSpeciesWave {
  double c = 0.0;
  double alpha = 0.0;
  double gamma = 0.0;
  double beta_l = 0.0;
  double beta_r = 0.0;
  double sigma = 0.0;
  SemiWave left;       // decreasing, f1
  CompactWave middle;  // f2
  SemiWave right;      // increasing, f3
  CaseTag case_tag;
  double c_minus = 0.0;
  double c_plus = 0.0;
  double tilde_beta_l = 0.0;
  double tilde_beta_r = 0.0;
  double residual_l = 0.0;
  double residual_r = 0.0;
  // c > 0 <=> beta_l < tilde_beta_l <=> beta_r > tilde_beta_r
  bool sign_law_holds = false;
};

// ---- two species ----

// Root of alpha phi'(0; c) + c in (0, c*_f).
double hat_c_f(const ReactionSpec& f, double alpha, const ShootingConfig& cfg = {});
// Root of beta psi'(0; c) + c in (c*_g, 0); equals -hat_c_f(g, beta).
double hat_c_g(const ReactionSpec& g, double beta, const ShootingConfig& cfg = {});

// Throws a DomainError (NoSemiWaveError) outside (c*_g, c*_f).
double D_two(double c, double alpha, double beta, const ReactionSpec& f, const ReactionSpec& g,
             const ShootingConfig& cfg = {});

// beta(c) = -(alpha phi'(0;c) + c) / psi'(0;c) on (c*_g, hat_c_f).
double beta_of_c(const ReactionSpec& f, const ReactionSpec& g, double alpha, double c,
                 const ShootingConfig& cfg = {});
// alpha(c) = -(beta psi'(0;c) + c) / phi'(0;c) on (hat_c_g, c*_f).
double alpha_of_c(const ReactionSpec& f, const ReactionSpec& g, double beta, double c,
                  const ShootingConfig& cfg = {});

// alpha sqrt(F(1) / G(1)) and beta sqrt(G(1) / F(1)).
double tilde_beta(const ReactionSpec& f, const ReactionSpec& g, double alpha);
double tilde_alpha(const ReactionSpec& f, const ReactionSpec& g, double beta);

TwoSpeciesWave solve_two_species(const ReactionSpec& f, const ReactionSpec& g, double alpha,
                                 double beta, const ShootingConfig& cfg = {},
                                 double far_tol = 1e-8);

// ---- three species ----

double hat_c1(const ReactionSpec& f1, double alpha, const ShootingConfig& cfg = {});
double hat_c3(const ReactionSpec& f3, double gamma, const ShootingConfig& cfg = {});

// Throws InfeasibleError when the admissible interval is empty.
CaseAnalysis case_classify(const ReactionSpec& f1, const ReactionSpec& f2, const ReactionSpec& f3,
                           double alpha, double gamma, double sigma,
                           const ShootingConfig& cfg = {});

// alpha sqrt(F1(1)) / sqrt(F2(sigma)) and gamma sqrt(F3(1)) / sqrt(F2(sigma)).
double tilde_beta_l(const ReactionSpec& f1, const ReactionSpec& f2, double alpha, double sigma);
double tilde_beta_r(const ReactionSpec& f2, const ReactionSpec& f3, double gamma, double sigma);

// beta_l(c) = -(alpha phi1'(0;c) + c) / phi2'(0;c). Defined wherever it is
// positive: c in the compact window and below hat_c1 (DomainError otherwise).
double beta_l_of_c(const ReactionSpec& f1, const ReactionSpec& f2, double alpha, double sigma,
                   double c, const ShootingConfig& cfg = {});
// beta_r(c) = -(gamma phi3'(0;c) + c) / phi2'(h_c;c), for c in the window above hat_c3.
double beta_r_of_c(const ReactionSpec& f2, const ReactionSpec& f3, double gamma, double sigma,
                   double c, const ShootingConfig& cfg = {});

// beta_l at c = c*_r (Case 2 only) and beta_r at c = c*_l (Case II only);
// CaseError otherwise.
double beta0_l(const ReactionSpec& f1, const ReactionSpec& f2, double alpha, double sigma,
               const ShootingConfig& cfg = {});
double beta0_l(const ReactionSpec& f1, const ReactionSpec& f2, double alpha, double sigma,
               const CaseAnalysis& analysis, const ShootingConfig& cfg = {});
double beta0_r(const ReactionSpec& f2, const ReactionSpec& f3, double gamma, double sigma,
               const ShootingConfig& cfg = {});
double beta0_r(const ReactionSpec& f2, const ReactionSpec& f3, double gamma, double sigma,
               const CaseAnalysis& analysis, const ShootingConfig& cfg = {});

// Speed c with D_l(c; beta_l) = 0, searched on (c*_l, min(hat_c1, c*_r)).
// NoRootError when beta_l <= 0 or (Case 2) beta_l < beta0_l.
double C_l(const ReactionSpec& f1, const ReactionSpec& f2, double alpha, double sigma,
           double beta_l, const ShootingConfig& cfg = {});
double C_l(const ReactionSpec& f1, const ReactionSpec& f2, double alpha, double sigma,
           double beta_l, const CaseAnalysis& analysis, const ShootingConfig& cfg = {});
// Speed c with D_r(c; beta_r) = 0, searched on (max(hat_c3, c*_l), c*_r).
double C_r(const ReactionSpec& f2, const ReactionSpec& f3, double gamma, double sigma,
           double beta_r, const ShootingConfig& cfg = {});
double C_r(const ReactionSpec& f2, const ReactionSpec& f3, double gamma, double sigma,
           double beta_r, const CaseAnalysis& analysis, const ShootingConfig& cfg = {});

// OutOfIntervalError when c is outside (c_minus, c_plus).
ThreeSpeciesWave solve_three_species(const ReactionSpec& f1, const ReactionSpec& f2,
                                     const ReactionSpec& f3, double alpha, double gamma,
                                     double sigma, double c, const ShootingConfig& cfg = {},
                                     double far_tol = 1e-8);

// ---- dispersion ----

enum class DispersionKind { two_beta, two_alpha, three };

std::string to_string(DispersionKind kind);
DispersionKind parse_dispersion_kind(const std::string& text);

// two_beta: reactions {f, g}, alpha. two_alpha: {f, g}, beta.
// three: {f1, f2, f3}, alpha, gamma, sigma.
struct DispersionParams {
  std::vector<ReactionSpec> reactions;
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double sigma = 0.5;
};

struct DispersionCurve {
  DispersionKind kind = DispersionKind::two_beta;
  std::vector<std::string> columns;          // coefficient names
  std::vector<double> c;                     // grid
  std::vector<std::vector<double>> values;   // values[column][i]
  double lo = 0.0;                           // admissible open interval
  double hi = 0.0;
  // +1 strictly increasing, -1 strictly decreasing, 0 neither; per column.
  std::vector<int> monotonicity;
};

// Grid points must lie strictly inside the admissible interval (DomainError
// naming the first offending point). Grid points are evaluated concurrently
// on up to `threads` workers (0: hardware concurrency); results do not
// depend on the thread count.
DispersionCurve dispersion_curve(DispersionKind kind, const DispersionParams& params,
                                 const std::vector<double>& grid, const ShootingConfig& cfg = {},
                                 unsigned threads = 0);

}  // namespace freewave
