#include "cpargmin/normal.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>

#include "cpargmin/error.hpp"

namespace cpargmin {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::OutOfDomain, "normal quantile needs 0 < p < 1");
  if (p == 0.5) return 0.0;
  return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
}

}  // namespace cpargmin
