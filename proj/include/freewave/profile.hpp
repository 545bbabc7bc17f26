#pragma once

#include <vector>

namespace freewave {

class ReactionSpec;

// A sampled wave profile: positions in increasing order, the profile value
// and its first derivative at each position.
struct Profile {
  std::vector<double> z;
  std::vector<double> value;
  std::vector<double> slope;

  std::size_t size() const { return z.size(); }
  bool empty() const { return z.empty(); }
};

// Cubic Hermite interpolation from (value, slope) samples. Outside the sampled
// range the nearest end value is returned.
double interpolate(const Profile& p, double z);

// Max over interior samples of |phi'' + c phi' + f(phi)|, with phi'' taken as
// a five-point (fourth order, non-uniform) derivative of the slope samples.
// Samples within two points of either end are skipped.
double max_residual(const Profile& p, const ReactionSpec& f, double c);

// Finite-difference weights (Fornberg) for the m-th derivative at x0 from
// the given nodes.
std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int m);

}  // namespace freewave
