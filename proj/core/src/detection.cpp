#include "mcvd/detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mcvd/errors.hpp"
#include "mcvd/numerics.hpp"

namespace mcvd {

namespace {

constexpr double kAlpha = 0.3842;
constexpr double kBeta = 0.7640;
constexpr double kGamma = 0.6964;

void check_stats(const HypothesisStats& st) {
  if (!(st.var0 > 0.0) || !(st.var1 > 0.0))
    throw DegenerateStats("hypothesis variances must be positive");
}

double gauss_pdf(double x, double mu, double sd) {
  const double z = (x - mu) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * 3.14159265358979323846));
}

}  // namespace

double q_exact(double x) { return 0.5 * num::erfc_capped(x / std::sqrt(2.0)); }

double q_approx(double x) {
  if (x >= 0.0) return std::exp(-kAlpha * x * x - kBeta * x - kGamma);
  return 1.0 - std::exp(-kAlpha * x * x + kBeta * x - kGamma);
}

double q_inv(double p) { return -num::probit(p); }

double pd(double eta, const HypothesisStats& st) {
  check_stats(st);
  return q_exact((eta - st.mu1) / std::sqrt(st.var1));
}

double pf(double eta, const HypothesisStats& st) {
  check_stats(st);
  return q_exact((eta - st.mu0) / std::sqrt(st.var0));
}

RocCurve roc(const HypothesisStats& st, int n_points) {
  check_stats(st);
  if (n_points < 2) throw std::invalid_argument("roc needs at least two points");
  const double lo = 1e-6;
  const double hi = 1.0 - 1e-6;
  const double s0 = std::sqrt(st.var0);
  RocCurve curve;
  curve.pf.reserve(static_cast<std::size_t>(n_points));
  curve.pd.reserve(static_cast<std::size_t>(n_points));
  curve.threshold.reserve(static_cast<std::size_t>(n_points));
  for (int k = 0; k < n_points; ++k) {
    const double target = lo + (hi - lo) * static_cast<double>(k) /
                                   static_cast<double>(n_points - 1);
    const double eta = st.mu0 + s0 * q_inv(target);
    curve.threshold.push_back(eta);
    curve.pf.push_back(pf(eta, st));
    curve.pd.push_back(pd(eta, st));
  }
  return curve;
}

double area_under(const RocCurve& curve) {
  if (curve.pf.empty()) return 0.0;
  double area = 0.0;
  double px = 0.0, py = 0.0;  // start at (0, 0)
  for (std::size_t k = 0; k < curve.pf.size(); ++k) {
    area += 0.5 * (curve.pf[k] - px) * (curve.pd[k] + py);
    px = curve.pf[k];
    py = curve.pd[k];
  }
  area += 0.5 * (1.0 - px) * (1.0 + py);
  return area;
}

double auc_numeric(const HypothesisStats& st, QKind kind, double tol) {
  check_stats(st);
  const double s0 = std::sqrt(st.var0);
  const double s1 = std::sqrt(st.var1);
  const double top = st.mu1 + 10.0 * s1;
  auto tail = kind == QKind::exact ? q_exact : q_approx;
  auto integrand = [&](double eta) {
    return tail((eta - st.mu1) / s1) * gauss_pdf(eta, st.mu0, s0);
  };
  // integrable structure lives around both means, anchor segments there
  std::vector<double> knots = {0.0,
                               st.mu0 - 8.0 * s0, st.mu0 - 4.0 * s0, st.mu0,
                               st.mu0 + 4.0 * s0, st.mu0 + 8.0 * s0,
                               st.mu1 - 8.0 * s1, st.mu1 - 4.0 * s1, st.mu1,
                               st.mu1 + 4.0 * s1, st.mu1 + 8.0 * s1,
                               top};
  for (auto& k : knots) k = std::clamp(k, 0.0, top);
  std::sort(knots.begin(), knots.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    if (knots[k + 1] - knots[k] <= 0.0) continue;
    const double seg_tol =
        std::max(tol * (knots[k + 1] - knots[k]) / top, 1e-16);
    total += num::adaptive_simpson(integrand, knots[k], knots[k + 1], seg_tol);
  }
  return total;
}

AucCoefficients auc_coefficients(const HypothesisStats& st) {
  check_stats(st);
  const double s1 = std::sqrt(st.var1);
  const double mu0 = st.mu0, mu1 = st.mu1;
  AucCoefficients co;
  co.a[0] = 1.0 / (2.0 * st.var0);
  co.b[0] = -mu0 * co.a[0];
  co.c[0] = mu0 * mu0 * co.a[0];
  co.a[1] = kAlpha / st.var1 + co.a[0];
  co.b[1] = -(kAlpha * mu1 + 0.5 * kBeta * s1) / st.var1 + co.b[0];
  co.c[1] = (kAlpha * mu1 + kBeta * s1) * mu1 / st.var1 + co.c[0] + kGamma;
  co.a[2] = co.a[1];
  co.b[2] = -(kAlpha * mu1 - 0.5 * kBeta * s1) / st.var1 + co.b[0];
  co.c[2] = (kAlpha * mu1 - kBeta * s1) * mu1 / st.var1 + co.c[0] + kGamma;
  co.d[0] = 1.0;
  co.d[1] = 1.0;
  co.d[2] = 0.0;  // third term has no finite upper erfc
  co.e[0] = 0.0;
  co.e[1] = 0.0;
  co.e[2] = std::sqrt(co.a[2]) * mu1;
  return co;
}

double auc_closed_form(const HypothesisStats& st) {
  const AucCoefficients co = auc_coefficients(st);
  const double s0 = std::sqrt(st.var0);
  const double mu1 = st.mu1;
  double total = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double sign = (k == 1) ? -1.0 : 1.0;
    const double root = std::sqrt(co.a[k]);
    const double shift = co.b[k] / root;
    const double expo = (co.b[k] * co.b[k] - co.a[k] * co.c[k]) / co.a[k];
    const double upper =
        co.d[k] != 0.0 ? num::erfc_capped(root * mu1 + shift) : 0.0;
    total += sign / root * std::exp(expo) *
             (num::erfc_capped(co.e[k] + shift) - upper);
  }
  total /= 2.0 * std::sqrt(2.0) * s0;
  return std::clamp(total, 0.0, 1.0);
}

double auc_empirical(std::vector<double> class0, std::vector<double> class1) {
  if (class0.empty() || class1.empty())
    throw SingleClass("empirical AUC needs samples under both hypotheses");
  std::sort(class0.begin(), class0.end());
  const double n0 = static_cast<double>(class0.size());
  double rank_sum = 0.0;
  for (const double y : class1) {
    const auto lo = std::lower_bound(class0.begin(), class0.end(), y);
    const auto hi = std::upper_bound(lo, class0.end(), y);
    const double below = static_cast<double>(lo - class0.begin());
    const double tied = static_cast<double>(hi - lo);
    rank_sum += below + 0.5 * tied;
  }
  return rank_sum / (n0 * static_cast<double>(class1.size()));
}

}  // namespace mcvd
