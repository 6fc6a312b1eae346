#ifndef BETAFREQ_GOF_HPP
#define BETAFREQ_GOF_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "betafreq/estimation.hpp"
#include "betafreq/rng.hpp"

namespace betafreq {

/// Q-Q construction for one sample against one Beta law: order statistics,
/// theoretical quantiles at k/(n+1), their Pearson correlation rho and the
/// statistic T_n = -ln(1 - rho).
struct QQResult {
  std::vector<double> sorted_obs;  // nondecreasing
  std::vector<double> quantiles;   // strictly increasing, same length
  double rho = 0.0;
  double tn = 0.0;                 // +infinity when rho == 1
  bool tn_is_infinite = false;
};

struct McSummary {
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

enum class McMode {
  re_estimate,   // refit parameters from each simulated sample
  fixed_params,  // score every replicate against the original fit
};

struct McTestResult {
  double tn_observed = 0.0;
  bool tn_observed_infinite = false;
  std::size_t replicates = 0;
  RngSeed seed;
  double p_value = 1.0;
  McSummary tn_simulated_summary;
  std::size_t redraws = 0;  // simulated samples rejected for infeasible moments
  McMode mode = McMode::re_estimate;
};

class gof_error : public std::runtime_error {
 public:
  enum class kind { undefined_correlation, simulation };
  gof_error(kind k, const std::string& msg)
      : std::runtime_error(msg), kind_(k) {}
  kind error_kind() const noexcept { return kind_; }

 private:
  kind kind_;
};

/// T_n = -ln(1 - rho); +infinity at rho = 1.
double tn_from_rho(double rho);

/// Plotting-position quantiles Q(k/(n+1); a, b) for k = 1..n.
std::vector<double> qq_quantiles(const BetaParams& p, std::size_t n);

/// Sorts the sample, pairs it with qq_quantiles(p, n) and computes rho and
/// T_n. Requires n >= 3 and a non-constant sample.
QQResult compute_tn(const ProportionSample& sample, const BetaParams& p);

struct McOptions {
  McMode mode = McMode::re_estimate;
  unsigned threads = 1;  // 0 = hardware concurrency
};

/// Seeded Monte-Carlo significance test. Fits the sample, simulates
/// `replicates` Beta samples of the same size (replicate r on substream
/// seed.stream + r, so any thread partition yields bit-identical results),
/// recomputes T_n per replicate, and returns the lower-tail p-value
///   (1 + #{T_r <= T_obs}) / (replicates + 1).
/// Small T_n signals poor fit; large p-values indicate an acceptable fit.
/// Simulated samples with infeasible moments are redrawn and counted.
McTestResult mc_test(const ProportionSample& sample, std::size_t replicates,
                     RngSeed seed, const McOptions& options = {});

}  // namespace betafreq

#endif
