#include "betafreq/estimation.hpp"

#include <cmath>

namespace betafreq {

ProportionSample empirical_proportions(
    std::span<const PortfolioYear> history) {
  if (history.empty()) {
    throw estimation_error(estimation_error::kind::empty_input,
                           "empirical_proportions: history is empty");
  }
  ProportionSample sample;
  sample.proportions.reserve(history.size());
  for (const auto& row : history) {
    if (row.contracts < 1) {
      throw estimation_error(
          estimation_error::kind::invalid_row,
          "empirical_proportions: contracts must be >= 1 (year " + row.year +
              ")");
    }
    if (row.affected < 0 || row.affected > row.contracts) {
      throw estimation_error(
          estimation_error::kind::invalid_row,
          "empirical_proportions: affected must lie in [0, contracts] (year " +
              row.year + ")");
    }
    sample.proportions.push_back(static_cast<double>(row.affected) /
                                 static_cast<double>(row.contracts));
  }

  const std::size_t n = sample.proportions.size();
  double sum = 0.0;
  for (double p : sample.proportions) sum += p;
  sample.mean = sum / static_cast<double>(n);
  if (n >= 2) {
    double ss = 0.0;
    for (double p : sample.proportions) {
      const double d = p - sample.mean;
      ss += d * d;
    }
    sample.variance = ss / static_cast<double>(n - 1);
  }
  return sample;
}

BetaParams fit_beta_mom(const ProportionSample& sample) {
  if (sample.n() < 2 || !sample.variance.has_value()) {
    throw estimation_error(
        estimation_error::kind::degenerate_sample,
        "fit_beta_mom: need n >= 2 observations with a sample variance");
  }
  const double mu = sample.mean;
  const double s2 = *sample.variance;
  if (!(mu > 0.0) || !(mu < 1.0)) {
    throw estimation_error(
        estimation_error::kind::boundary_mean,
        "fit_beta_mom: sample mean must lie strictly inside (0,1)");
  }
  if (s2 == 0.0) {
    throw estimation_error(
        estimation_error::kind::degenerate_sample,
        "fit_beta_mom: sample variance is zero (constant proportions)");
  }
  if (!(s2 < mu * (1.0 - mu))) {
    throw estimation_error(
        estimation_error::kind::infeasible_moments,
        "fit_beta_mom: sample variance must be below mean*(1-mean); no Beta "
        "law has these moments");
  }
  const double alpha = mu * (mu - mu * mu - s2) / s2;
  const double beta = alpha * (1.0 - mu) / mu;
  return BetaParams(alpha, beta);
}

}  // namespace betafreq
