#pragma once

// Bracketed scalar root finding.

#include <cmath>
#include <cstdint>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "freewave/errors.hpp"

namespace freewave {

struct RootBracket {
  double lo;
  double hi;
  double tol = 1e-12;
};

// Root of a continuous function with a sign change on [lo, hi]. Uses
// TOMS 748 (inverse cubic interpolation safeguarded by bisection); the
// returned point lies in a final bracket of width <= tol.
template <class F>
double find_root_monotone(F&& obj, const RootBracket& b) {
  if (!(b.lo < b.hi) || !(b.tol > 0.0)) {
    throw BracketError("find_root_monotone: need lo < hi and tol > 0", b.lo, b.hi);
  }
  const double f_lo = obj(b.lo);
  const double f_hi = obj(b.hi);
  if (f_lo == 0.0) return b.lo;
  if (f_hi == 0.0) return b.hi;
  if (!std::isfinite(f_lo) || !std::isfinite(f_hi) || (f_lo > 0.0) == (f_hi > 0.0)) {
    throw BracketError("find_root_monotone: objective has the same sign at both ends (" +
                           std::to_string(f_lo) + ", " + std::to_string(f_hi) + ")",
                       b.lo, b.hi);
  }
  const double tol = b.tol;
  auto done = [tol](double a, double c) { return std::abs(c - a) <= tol; };
  std::uintmax_t max_iter = 400;
  const auto [a, c] =
      boost::math::tools::toms748_solve(obj, b.lo, b.hi, f_lo, f_hi, done, max_iter);
  if (!done(a, c)) {
    throw BracketError("find_root_monotone: no convergence in 400 iterations", a, c);
  }
  return 0.5 * (a + c);
}

// Boundary of a predicate that holds at lo and fails at hi (or the reverse):
// plain bisection down to a bracket of width tol. Returns the midpoint of the
// final bracket.
template <class Pred>
double bisect_predicate(Pred&& holds, double lo, double hi, double tol) {
  const bool at_lo = holds(lo);
  const bool at_hi = holds(hi);
  if (at_lo == at_hi) {
    throw BracketError("bisect_predicate: predicate has the same value at both ends", lo, hi);
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (holds(mid) == at_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace freewave
