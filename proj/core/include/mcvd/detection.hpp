#pragma once

#include <vector>

#include "mcvd/link.hpp"

namespace mcvd {

// exact Gaussian tail Q(x) = P(Z > x)
double q_exact(double x);

// exponential-polynomial tail approximation used by the closed-form area,
// Q(x) ~ exp(-0.3842 x^2 - 0.7640 x - 0.6964) for x >= 0, reflected below
double q_approx(double x);

// inverse of q_exact on (0, 1)
double q_inv(double p);

// threshold test performance; throws DegenerateStats on zero variance
double pd(double eta, const HypothesisStats& st);  // P(decide 1 | bit 1)
double pf(double eta, const HypothesisStats& st);  // P(decide 1 | bit 0)

struct RocCurve {
  std::vector<double> pf;
  std::vector<double> pd;
  std::vector<double> threshold;  // descending, pf and pd nondecreasing
};

RocCurve roc(const HypothesisStats& st, int n_points = 201);

// trapezoid area under the curve, closed to (0,0) and (1,1)
double area_under(const RocCurve& curve);

enum class QKind { exact, approx };

// P(Y1 > Y0) for independent Gaussians, integrated over thresholds from 0
// (counts cannot be negative, mass below zero is deliberately dropped) up to
// mu1 + 10 sigma1. Absolute accuracy around 1e-8 or better.
double auc_numeric(const HypothesisStats& st, QKind kind = QKind::exact,
                   double tol = 1e-10);

// coefficients of the three-term closed form matching auc_numeric with the
// approximate tail; d multiplies the second erfc (zero drops it), e shifts
// the first
struct AucCoefficients {
  double a[3];
  double b[3];
  double c[3];
  double d[3];
  double e[3];
};

AucCoefficients auc_coefficients(const HypothesisStats& st);

// closed-form evaluation of the same truncated integral with the
// approximate tail, clamped to [0, 1]
double auc_closed_form(const HypothesisStats& st);

// Mann-Whitney statistic, ties counted half; throws SingleClass when either
// sample set is empty
double auc_empirical(std::vector<double> class0, std::vector<double> class1);

}  // namespace mcvd
