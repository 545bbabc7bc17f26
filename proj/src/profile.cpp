#include "freewave/profile.hpp"

#include <algorithm>
#include <cmath>

#include "freewave/errors.hpp"
#include "freewave/reaction.hpp"

namespace freewave {

double interpolate(const Profile& p, double z) {
  if (p.empty()) throw DomainError("interpolate: empty profile");
  if (z <= p.z.front()) return p.value.front();
  if (z >= p.z.back()) return p.value.back();
  const auto it = std::upper_bound(p.z.begin(), p.z.end(), z);
  const std::size_t i = static_cast<std::size_t>(it - p.z.begin()) - 1;
  const double h = p.z[i + 1] - p.z[i];
  const double s = (z - p.z[i]) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * p.value[i] + h10 * h * p.slope[i] + h01 * p.value[i + 1] + h11 * h * p.slope[i + 1];
}

std::vector<double> fd_weights(double x0, const std::vector<double>& x, int m) {
  const int n = static_cast<int>(x.size()) - 1;
  std::vector<std::vector<double>> c(static_cast<std::size_t>(n + 1),
                                     std::vector<double>(static_cast<std::size_t>(m + 1), 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) w[i] = c[i][m];
  return w;
}

double max_residual(const Profile& p, const ReactionSpec& f, double c) {
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < p.size(); ++i) {
    std::vector<double> nodes(p.z.begin() + (i - 2), p.z.begin() + (i + 3));
    const auto w = fd_weights(p.z[i], nodes, 1);
    double second = 0.0;
    for (std::size_t k = 0; k < 5; ++k) second += w[k] * p.slope[i - 2 + k];
    worst = std::max(worst, std::abs(second + c * p.slope[i] + f(p.value[i])));
  }
  return worst;
}

}  // namespace freewave
