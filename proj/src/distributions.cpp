#include "betafreq/distributions.hpp"

#include <cmath>
#include <stdexcept>

#include "betafreq/specfun.hpp"

namespace betafreq {

using specfun::ln_beta;
using specfun::ln_gamma;

BetaParams::BetaParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0) || !std::isfinite(alpha) || !(beta > 0.0) ||
      !std::isfinite(beta)) {
    throw std::domain_error("BetaParams: shapes must be positive and finite");
  }
}

BetaBinomialParams::BetaBinomialParams(std::int64_t m, BetaParams params)
    : m_(m), params_(params) {
  if (m < 1) {
    throw std::domain_error("BetaBinomialParams: contract count must be >= 1");
  }
}

double beta_pdf(double x, const BetaParams& p) {
  if (!(x > 0.0) || !(x < 1.0)) {
    throw std::domain_error("beta_pdf: x must lie in the open (0,1)");
  }
  return std::exp((p.alpha() - 1.0) * std::log(x) +
                  (p.beta() - 1.0) * std::log1p(-x) -
                  ln_beta(p.alpha(), p.beta()));
}

Moments beta_moments(const BetaParams& p) {
  const double s = p.alpha() + p.beta();
  return {p.alpha() / s, p.alpha() * p.beta() / (s * s * (s + 1.0))};
}

namespace {

// ln C(m,k) for 0 <= k <= m.
double ln_choose(std::int64_t m, std::int64_t k) {
  return ln_gamma(static_cast<double>(m) + 1.0) -
         ln_gamma(static_cast<double>(k) + 1.0) -
         ln_gamma(static_cast<double>(m - k) + 1.0);
}

}  // namespace

double beta_binomial_pmf(std::int64_t k, const BetaBinomialParams& bb) {
  if (k < 0 || k > bb.m()) return 0.0;
  const double a = bb.params().alpha();
  const double b = bb.params().beta();
  const double m = static_cast<double>(bb.m());
  const double kk = static_cast<double>(k);
  return std::exp(ln_choose(bb.m(), k) + ln_beta(kk + a, m - kk + b) -
                  ln_beta(a, b));
}

Moments beta_binomial_moments(const BetaBinomialParams& bb) {
  const double a = bb.params().alpha();
  const double b = bb.params().beta();
  const double m = static_cast<double>(bb.m());
  const double s = a + b;
  return {m * a / s, m * a * b * (s + m) / (s * s * (s + 1.0))};
}

ConditionalMoments binomial_conditional_moments(std::int64_t m, double p) {
  if (m < 1) {
    throw std::domain_error("binomial_conditional_moments: m must be >= 1");
  }
  if (!(p >= 0.0) || !(p <= 1.0)) {
    throw std::domain_error(
        "binomial_conditional_moments: p must lie in [0,1]");
  }
  const double md = static_cast<double>(m);
  return {md * p, md * p * (1.0 - p), 1.0 / (4.0 * md)};
}

namespace {

// Marsaglia-Tsang (2000) squeeze method, shape >= 1.
double gamma_variate_ge1(Philox& rng, double shape) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.next_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double gamma_variate(Philox& rng, double shape) {
  if (shape >= 1.0) return gamma_variate_ge1(rng, shape);
  // Boost for shape < 1: G(a) = G(a+1) * U^{1/a}.
  const double g = gamma_variate_ge1(rng, shape + 1.0);
  return g * std::pow(rng.next_open(), 1.0 / shape);
}

}  // namespace

double beta_variate(Philox& rng, const BetaParams& p) {
  for (;;) {
    const double ga = gamma_variate(rng, p.alpha());
    const double gb = gamma_variate(rng, p.beta());
    const double x = ga / (ga + gb);
    if (x > 0.0 && x < 1.0) return x;
    // Underflow pushed the ratio onto the boundary; redraw.
  }
}

std::int64_t binomial_variate(Philox& rng, std::int64_t m, double p) {
  if (m < 1) throw std::domain_error("binomial_variate: m must be >= 1");
  if (!(p >= 0.0) || !(p <= 1.0)) {
    throw std::domain_error("binomial_variate: p must lie in [0,1]");
  }
  if (p == 0.0) return 0;
  if (p == 1.0) return m;

  // Inversion enumerated outward from the mode. Any fixed enumeration order
  // of exact pmf values inverts the distribution exactly; starting at the
  // mode keeps the expected number of terms O(sd) and avoids the underflow
  // of (1-p)^m that a k=0 start would hit for large m.
  const double md = static_cast<double>(m);
  std::int64_t mode = static_cast<std::int64_t>((md + 1.0) * p);
  if (mode > m) mode = m;
  const double ln_p = std::log(p);
  const double ln_q = std::log1p(-p);
  const double pmf_mode =
      std::exp(ln_choose(m, mode) + static_cast<double>(mode) * ln_p +
               static_cast<double>(m - mode) * ln_q);
  const double ratio = p / (1.0 - p);

  double u = rng.next_unit();
  std::int64_t up = mode, dn = mode - 1;
  double pmf_up = pmf_mode;
  double pmf_dn =
      dn >= 0 ? pmf_mode * (static_cast<double>(mode) / (md - mode + 1.0)) /
                    ratio
              : 0.0;
  while (up <= m || dn >= 0) {
    if (up <= m && (dn < 0 || pmf_up >= pmf_dn)) {
      u -= pmf_up;
      if (u < 0.0) return up;
      pmf_up *= ((md - static_cast<double>(up)) /
                 (static_cast<double>(up) + 1.0)) *
                ratio;
      ++up;
    } else {
      u -= pmf_dn;
      if (u < 0.0) return dn;
      pmf_dn *= (static_cast<double>(dn) / (md - static_cast<double>(dn) + 1.0)) /
                ratio;
      --dn;
    }
  }
  return mode;  // u exceeded total mass by rounding slack
}

std::vector<double> sample_beta(const BetaParams& p, RngSeed seed,
                                std::size_t count) {
  if (count < 1) throw std::domain_error("sample_beta: count must be >= 1");
  Philox rng(seed);
  std::vector<double> out(count);
  for (auto& x : out) x = beta_variate(rng, p);
  return out;
}

std::vector<std::int64_t> sample_beta_binomial(const BetaBinomialParams& bb,
                                               RngSeed seed,
                                               std::size_t count) {
  if (count < 1) {
    throw std::domain_error("sample_beta_binomial: count must be >= 1");
  }
  Philox rng(seed);
  std::vector<std::int64_t> out(count);
  for (auto& k : out) {
    const double p = beta_variate(rng, bb.params());
    k = binomial_variate(rng, bb.m(), p);
  }
  return out;
}

}  // namespace betafreq
