#pragma once

#include <vector>

#include "sumkit/types.hpp"

namespace sumkit {

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least-squares line through (log x, log y); slope is the fitted exponent.
FitResult fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace sumkit
