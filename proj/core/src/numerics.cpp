#include "mcvd/numerics.hpp"

#include <limits>
#include <stdexcept>

namespace mcvd::num {

namespace {

constexpr double kAcklamA[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kAcklamB[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
constexpr double kAcklamC[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
constexpr double kAcklamD[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};

double acklam_estimate(double p) {
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((kAcklamC[0] * q + kAcklamC[1]) * q + kAcklamC[2]) * q +
              kAcklamC[3]) *
                 q +
             kAcklamC[4]) *
                q +
            kAcklamC[5]) /
           ((((kAcklamD[0] * q + kAcklamD[1]) * q + kAcklamD[2]) * q +
             kAcklamD[3]) *
                q +
            1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((kAcklamC[0] * q + kAcklamC[1]) * q + kAcklamC[2]) * q +
               kAcklamC[3]) *
                  q +
              kAcklamC[4]) *
                 q +
             kAcklamC[5]) /
           ((((kAcklamD[0] * q + kAcklamD[1]) * q + kAcklamD[2]) * q +
             kAcklamD[3]) *
                q +
            1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((kAcklamA[0] * r + kAcklamA[1]) * r + kAcklamA[2]) * r +
            kAcklamA[3]) *
               r +
           kAcklamA[4]) *
              r +
          kAcklamA[5]) *
         q /
         (((((kAcklamB[0] * r + kAcklamB[1]) * r + kAcklamB[2]) * r +
            kAcklamB[3]) *
               r +
           kAcklamB[4]) *
              r +
          1.0);
}

}  // namespace

double probit(double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::invalid_argument("probit: p must lie in (0, 1)");
  double x = acklam_estimate(p);
  // Halley refinement against the exact cdf
  const double cdf = 0.5 * std::erfc(-x / std::sqrt(2.0));
  const double e = cdf - p;
  const double u = e * std::sqrt(2.0 * 3.14159265358979323846) *
                   std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

}  // namespace mcvd::num
