#include "sumkit/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace sumkit {

FitResult fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit_loglog: need >= 2 matching samples");
  std::size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (xs[i] <= 0 || ys[i] <= 0)
      throw std::invalid_argument("fit_loglog: samples must be positive");
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  double dn = static_cast<double>(n);
  double denom = dn * sxx - sx * sx;
  FitResult r;
  r.slope = (dn * sxy - sx * sy) / denom;
  r.intercept = (sy - r.slope * sx) / dn;
  double ss_res = 0, ss_tot = 0, mean = sy / dn;
  for (std::size_t i = 0; i < n; ++i) {
    double pred = r.intercept + r.slope * lx[i];
    ss_res += (ly[i] - pred) * (ly[i] - pred);
    ss_tot += (ly[i] - mean) * (ly[i] - mean);
  }
  r.r2 = ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return r;
}

}  // namespace sumkit
