#include "betafreq/gof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "betafreq/distributions.hpp"
#include "betafreq/specfun.hpp"

namespace betafreq {

namespace {

// Pearson correlation of two equal-length sequences. Returns exactly +/-1
// when the Cauchy-Schwarz bound is met, so affinely dependent inputs are
// classified deterministically.
double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw gof_error(gof_error::kind::undefined_correlation,
                    "correlation undefined: a sequence is constant");
  }
  if (sxy * sxy >= sxx * syy) return sxy > 0.0 ? 1.0 : -1.0;
  return sxy / (std::sqrt(sxx) * std::sqrt(syy));
}

struct FittedMoments {
  double mean, variance;
  bool feasible;
};

FittedMoments sample_moments(const std::vector<double>& x) {
  const std::size_t n = x.size();
  double mu = 0.0;
  for (double v : x) mu += v;
  mu /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : x) {
    const double d = v - mu;
    ss += d * d;
  }
  const double s2 = ss / static_cast<double>(n - 1);
  const bool feasible = mu > 0.0 && mu < 1.0 && s2 > 0.0 && s2 < mu * (1.0 - mu);
  return {mu, s2, feasible};
}

}  // namespace

double tn_from_rho(double rho) {
  if (rho >= 1.0) return std::numeric_limits<double>::infinity();
  return -std::log1p(-rho);
}

std::vector<double> qq_quantiles(const BetaParams& p, std::size_t n) {
  if (n < 1) throw std::domain_error("qq_quantiles: n must be >= 1");
  std::vector<double> q(n);
  const double denom = static_cast<double>(n) + 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    q[k - 1] = specfun::beta_quantile(static_cast<double>(k) / denom,
                                      p.alpha(), p.beta());
  }
  return q;
}

QQResult compute_tn(const ProportionSample& sample, const BetaParams& p) {
  const std::size_t n = sample.n();
  if (n < 3) throw std::domain_error("compute_tn: need n >= 3 observations");
  for (double v : sample.proportions) {
    if (!std::isfinite(v)) {
      throw std::domain_error("compute_tn: proportions must be finite");
    }
  }
  QQResult res;
  res.sorted_obs = sample.proportions;
  std::sort(res.sorted_obs.begin(), res.sorted_obs.end());
  res.quantiles = qq_quantiles(p, n);
  res.rho = pearson(res.sorted_obs, res.quantiles);
  res.tn = tn_from_rho(res.rho);
  res.tn_is_infinite = std::isinf(res.tn);
  return res;
}

namespace {

// Quartile summary by linear interpolation between order statistics.
McSummary summarize(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto at = [&v](double prob) {
    const double h = prob * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    if (v[lo] == v[hi]) return v[lo];
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  return {v.front(), at(0.25), at(0.5), at(0.75), v.back()};
}

}  // namespace

McTestResult mc_test(const ProportionSample& sample, std::size_t replicates,
                     RngSeed seed, const McOptions& options) {
  if (replicates < 100) {
    throw std::domain_error("mc_test: need at least 100 replicates");
  }
  const std::size_t n = sample.n();
  const BetaParams fitted = fit_beta_mom(sample);  // propagates estimation errors
  const QQResult observed = compute_tn(sample, fitted);

  const std::size_t redraw_cap = 10 * replicates;
  std::vector<double> tn_sim(replicates);
  std::vector<std::size_t> redraws_per(replicates, 0);

  // Replicate r draws from substream seed.stream + r; the assignment, not
  // the execution order, determines every draw, so any thread count gives a
  // bit-identical result.
  const auto run_replicate = [&](std::size_t r, std::vector<double>& buf) {
    Philox rng({seed.seed, seed.stream + r});
    FittedMoments moms{};
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) buf[i] = beta_variate(rng, fitted);
      moms = sample_moments(buf);
      if (moms.feasible) break;
      if (++redraws_per[r - 1] > redraw_cap) {
        throw gof_error(gof_error::kind::simulation,
                        "mc_test: replicate redraw limit exceeded");
      }
    }
    double alpha = fitted.alpha();
    double beta = fitted.beta();
    if (options.mode == McMode::re_estimate) {
      const double mu = moms.mean;
      alpha = mu * (mu - mu * mu - moms.variance) / moms.variance;
      beta = alpha * (1.0 - mu) / mu;
    }
    std::sort(buf.begin(), buf.end());
    const std::vector<double> q = qq_quantiles(BetaParams(alpha, beta), n);
    tn_sim[r - 1] = tn_from_rho(pearson(buf, q));
  };

  unsigned threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, replicates));

  if (threads <= 1) {
    std::vector<double> buf(n);
    for (std::size_t r = 1; r <= replicates; ++r) run_replicate(r, buf);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          std::vector<double> buf(n);
          for (std::size_t r = 1 + t; r <= replicates; r += threads) {
            run_replicate(r, buf);
          }
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  std::size_t total_redraws = 0;
  for (std::size_t c : redraws_per) total_redraws += c;
  if (total_redraws > redraw_cap) {
    throw gof_error(gof_error::kind::simulation,
                    "mc_test: total redraw limit exceeded");
  }

  std::size_t count_le = 0;
  for (double t : tn_sim) {
    if (t <= observed.tn) ++count_le;
  }

  McTestResult res;
  res.tn_observed = observed.tn;
  res.tn_observed_infinite = observed.tn_is_infinite;
  res.replicates = replicates;
  res.seed = seed;
  res.p_value = static_cast<double>(1 + count_le) /
                static_cast<double>(replicates + 1);
  res.tn_simulated_summary = summarize(std::move(tn_sim));
  res.redraws = total_redraws;
  res.mode = options.mode;
  return res;
}

}  // namespace betafreq
