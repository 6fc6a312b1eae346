#ifndef BETAFREQ_DISTRIBUTIONS_HPP
#define BETAFREQ_DISTRIBUTIONS_HPP

#include <cstdint>
#include <vector>

#include "betafreq/rng.hpp"

namespace betafreq {

/// Shape pair (alpha, beta) of the Beta law of the annual affectedness
/// proportion. Both shapes are strictly positive.
class BetaParams {
 public:
  BetaParams(double alpha, double beta);
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

 private:
  double alpha_, beta_;
};

/// Contract count plus mixing Beta law: the compound law of the annual
/// affected-contract count.
class BetaBinomialParams {
 public:
  BetaBinomialParams(std::int64_t m, BetaParams params);
  std::int64_t m() const noexcept { return m_; }
  const BetaParams& params() const noexcept { return params_; }

 private:
  std::int64_t m_;
  BetaParams params_;
};

struct Moments {
  double mean;
  double variance;
};

struct ConditionalMoments {
  double mean;            // M*p
  double variance;        // M*p*(1-p)
  double phat_var_bound;  // 1/(4M), upper bound on Var(A/M | p)
};

/// Beta density at x in the open interval (0,1), evaluated in log space.
double beta_pdf(double x, const BetaParams& p);

/// mean = a/(a+b); variance = ab/((a+b)^2 (a+b+1)).
Moments beta_moments(const BetaParams& p);

/// P(A = k) for A ~ BetaBinomial(M, a, b), log-space evaluation; exact zero
/// outside the support {0,...,M}.
double beta_binomial_pmf(std::int64_t k, const BetaBinomialParams& bb);

/// mean = M a/(a+b); variance = M ab (a+b+M) / ((a+b)^2 (a+b+1)).
Moments beta_binomial_moments(const BetaBinomialParams& bb);

/// Conditional-on-proportion moments of the affected count, plus the
/// 1/(4M) bound on the variance of the empirical proportion.
ConditionalMoments binomial_conditional_moments(std::int64_t m, double p);

/// `count` independent Beta(a,b) variates, deterministic in (seed, stream).
std::vector<double> sample_beta(const BetaParams& p, RngSeed seed,
                                std::size_t count);

/// `count` independent BetaBinomial draws: a fresh proportion per replicate,
/// then an exact Binomial(M, p) count. Deterministic in (seed, stream).
std::vector<std::int64_t> sample_beta_binomial(const BetaBinomialParams& bb,
                                               RngSeed seed,
                                               std::size_t count);

/// Single Beta(a,b) variate drawn from `rng` (Marsaglia-Tsang gamma ratio;
/// valid for all a,b > 0).
double beta_variate(Philox& rng, const BetaParams& p);

/// Single exact Binomial(m, p) variate drawn from `rng`.
std::int64_t binomial_variate(Philox& rng, std::int64_t m, double p);

}  // namespace betafreq

#endif
