#include "betafreq/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace betafreq::specfun {

namespace {

void require_shape(double alpha, double beta, const char* fn) {
  if (!(alpha > 0.0) || !std::isfinite(alpha) || !(beta > 0.0) ||
      !std::isfinite(beta)) {
    throw std::domain_error(std::string(fn) +
                            ": shape parameters must be positive and finite");
  }
}

// Continued fraction for I_x(a,b) (modified Lentz). Valid and rapidly
// convergent for x < (a+1)/(a+b+2).
double beta_cf(double x, double a, double b) {
  constexpr double tiny = 1e-300;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 1000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= eps) return h;
  }
  throw convergence_error("reg_inc_beta: continued fraction did not converge",
                          x, x);
}

// log of the beta density at x, shapes (a,b).
double ln_beta_pdf(double x, double a, double b) {
  return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - ln_beta(a, b);
}

// Rational approximation to the standard normal quantile (Acklam). Only used
// to seed the Newton iteration, so ~1e-9 accuracy is ample.
double normal_quantile_approx(double u) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double plow = 0.02425;
  if (u < plow) {
    const double q = std::sqrt(-2.0 * std::log(u));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (u > 1.0 - plow) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - u));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
             c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = u - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
          a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("ln_gamma: argument must be positive and finite");
  }
#if defined(__GLIBC__) || defined(__APPLE__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double ln_beta(double alpha, double beta) {
  require_shape(alpha, beta, "ln_beta");
  return ln_gamma(alpha) + ln_gamma(beta) - ln_gamma(alpha + beta);
}

double reg_inc_beta(double x, double alpha, double beta) {
  require_shape(alpha, beta, "reg_inc_beta");
  if (!(x >= 0.0) || !(x <= 1.0)) {
    throw std::domain_error("reg_inc_beta: x must lie in [0,1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double front = std::exp(alpha * std::log(x) +
                                beta * std::log1p(-x) - ln_beta(alpha, beta));
  if (x < (alpha + 1.0) / (alpha + beta + 2.0)) {
    return front * beta_cf(x, alpha, beta) / alpha;
  }
  return 1.0 - front * beta_cf(1.0 - x, beta, alpha) / beta;
}

double beta_quantile(double u, double alpha, double beta,
                     ToleranceConfig tol) {
  require_shape(alpha, beta, "beta_quantile");
  if (!(u > 0.0) || !(u < 1.0)) {
    throw std::domain_error("beta_quantile: u must lie in the open (0,1)");
  }
  if (!(tol.abs_tol > 0.0) || tol.max_iter < 1) {
    throw std::domain_error("beta_quantile: invalid ToleranceConfig");
  }

  // Moment-matched normal start, clamped into the bracket.
  const double mean = alpha / (alpha + beta);
  const double sd = std::sqrt(alpha * beta /
                              ((alpha + beta) * (alpha + beta) *
                               (alpha + beta + 1.0)));
  double lo = 0.0;
  double hi = 1.0;
  double x = mean + sd * normal_quantile_approx(u);
  if (!(x > lo) || !(x < hi)) x = mean;

  for (int it = 0; it < tol.max_iter; ++it) {
    const double f = reg_inc_beta(x, alpha, beta) - u;
    if (std::fabs(f) <= tol.abs_tol) return x;
    if (f > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    const double pdf = std::exp(ln_beta_pdf(x, alpha, beta));
    double next = x - f / pdf;
    if (!std::isfinite(next) || next <= lo || next >= hi) {
      next = 0.5 * (lo + hi);
    }
    if (next == x) break;  // bracket collapsed to machine resolution
    x = next;
  }
  throw convergence_error(
      "beta_quantile: iteration budget exhausted before reaching abs_tol", lo,
      hi);
}

}  // namespace betafreq::specfun
