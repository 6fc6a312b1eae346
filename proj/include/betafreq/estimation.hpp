#ifndef BETAFREQ_ESTIMATION_HPP
#define BETAFREQ_ESTIMATION_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "betafreq/distributions.hpp"

namespace betafreq {

/// One observation year of a tariff: contracts in force and contracts hit by
/// at least one claim.
struct PortfolioYear {
  std::string year;        // calendar-year label
  std::int64_t contracts;  // >= 1
  std::int64_t affected;   // 0 <= affected <= contracts
};

/// Empirical affectedness proportions in input order, with their summary
/// moments. The variance (divisor n-1) is populated only for n >= 2.
struct ProportionSample {
  std::vector<double> proportions;
  double mean = 0.0;
  std::optional<double> variance;

  std::size_t n() const noexcept { return proportions.size(); }
};

class estimation_error : public std::runtime_error {
 public:
  enum class kind {
    empty_input,
    invalid_row,
    degenerate_sample,
    infeasible_moments,
    boundary_mean,
  };

  estimation_error(kind k, const std::string& msg)
      : std::runtime_error(msg), kind_(k) {}
  kind error_kind() const noexcept { return kind_; }

 private:
  kind kind_;
};

/// proportions[i] = affected_i / contracts_i, plus mean and (n >= 2) the
/// n-1 variance. Rows are validated; full precision throughout.
ProportionSample empirical_proportions(std::span<const PortfolioYear> history);

/// Method-of-moments Beta fit:
///   alpha = mean (mean - mean^2 - var) / var,  beta = alpha (1-mean)/mean.
/// Requires n >= 2, mean in (0,1) and 0 < var < mean (1-mean); each
/// violation raises estimation_error naming the failed precondition.
BetaParams fit_beta_mom(const ProportionSample& sample);

}  // namespace betafreq

#endif
