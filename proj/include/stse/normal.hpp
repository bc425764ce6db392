// normal.hpp
// Standard normal distribution kernels.

#pragma once

namespace stse {

// Phi(x) = erfc(-x / sqrt(2)) / 2. std::erfc is accurate to a few ulp over the
// whole real line, so the absolute error stays below 1e-15; the tails saturate
// to 0 and 1 instead of overflowing.
double std_normal_cdf(double x);

double std_normal_pdf(double x);

// Inverse of std_normal_cdf. Acklam's rational approximation (relative error
// 1.15e-9) followed by two Halley steps against std_normal_cdf, which brings
// |Phi(result) - p| to the 1e-16 level. Throws OutOfDomain unless 0 < p < 1.
double std_normal_quantile(double p);

} // namespace stse
