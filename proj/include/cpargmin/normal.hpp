#pragma once

namespace cpargmin {

// Standard normal distribution function.
double normal_cdf(double z);

// Standard normal quantile; throws OutOfDomain unless 0 < p < 1.
// For a normal law with standard deviation sigma the quantile is sigma * z.
double inverse_normal_cdf(double p);

}  // namespace cpargmin
