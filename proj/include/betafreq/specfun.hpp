#ifndef BETAFREQ_SPECFUN_HPP
#define BETAFREQ_SPECFUN_HPP

#include <stdexcept>

namespace betafreq::specfun {

/// Stopping rule for the quantile root finder.
struct ToleranceConfig {
  double abs_tol = 1e-12;  ///< bound on |I_x(a,b) - u| at the returned root
  int max_iter = 200;
};

/// Thrown when the quantile iteration exhausts its budget. Carries the last
/// bracket so callers can diagnose or restart.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& msg, double lo, double hi)
      : std::runtime_error(msg), lo_(lo), hi_(hi) {}
  double bracket_lo() const noexcept { return lo_; }
  double bracket_hi() const noexcept { return hi_; }

 private:
  double lo_, hi_;
};

/// ln Gamma(x) for x > 0.
double ln_gamma(double x);

/// ln Be(a,b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a+b).
double ln_beta(double alpha, double beta);

/// Regularized incomplete beta function I_x(a,b), x in [0,1].
/// Continued-fraction evaluation with the symmetry switch at
/// x > (a+1)/(a+b+2); I_0 = 0 and I_1 = 1 exactly.
double reg_inc_beta(double x, double alpha, double beta);

/// Inverse of reg_inc_beta in x: returns x in (0,1) with
/// |I_x(a,b) - u| <= tol.abs_tol. Newton iteration bracketed by bisection.
/// Undefined at u = 0 and u = 1.
double beta_quantile(double u, double alpha, double beta,
                     ToleranceConfig tol = {});

}  // namespace betafreq::specfun

#endif
