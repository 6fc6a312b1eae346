#ifndef BETAFREQ_PORTFOLIO_HPP
#define BETAFREQ_PORTFOLIO_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "betafreq/estimation.hpp"
#include "betafreq/gof.hpp"

namespace betafreq {

/// Observation history of one tariff, rows in file order.
struct TariffHistory {
  std::string tariff_id;
  std::vector<PortfolioYear> years;
};

/// Full per-tariff analysis. Display fields are half-up roundings of the
/// full-precision values (percent scale, 2 decimals) and are never fed back
/// into any computation; the shape parameters are displayed rounded up to
/// integers.
struct TariffReport {
  std::string tariff_id;
  std::vector<PortfolioYear> years;
  ProportionSample sample;
  double alpha = 0.0;
  double beta = 0.0;
  QQResult qq;
  McTestResult mc;

  std::vector<std::string> proportions_pct_display;
  std::string mean_pct_display;
  std::string sd_pct_display;
  long long alpha_display = 0;
  long long beta_display = 0;
};

class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

enum class Locale { plain, de };

/// Reads the portfolio CSV (header `year,tariff,contracts,affected`) and
/// groups rows into one history per tariff, tariffs ordered by first
/// appearance. Locale::de additionally accepts dot thousands separators in
/// the integer columns ("8.805").
std::vector<TariffHistory> parse_portfolio_csv(std::istream& in,
                                               Locale locale = Locale::plain);

/// Canonical form: plain integers, tariffs grouped in first-appearance
/// order. parse followed by serialize is the identity on canonical files.
std::string serialize_portfolio_csv(const std::vector<TariffHistory>& hs);

/// Rounds half-up at two decimals on the percent scale and formats with a
/// trailing "%" suppressed ("3.92").
std::string format_percent_display(double fraction);

struct AnalyzeOptions {
  std::size_t replicates = 10000;
  RngSeed seed;
  McMode mode = McMode::re_estimate;
  unsigned threads = 1;  // 0 = hardware concurrency
};

/// Full pipeline for one tariff: proportions, moment fit, Q-Q statistic and
/// Monte-Carlo test. Errors are annotated with the tariff id.
TariffReport analyze_tariff(const TariffHistory& history,
                            const AnalyzeOptions& options);

/// Fit-only variant (no Monte-Carlo work, qq/mc fields left empty).
TariffReport fit_tariff(const TariffHistory& history);

/// Stream index reserved for a tariff by its position in file order; the
/// tariff's Monte-Carlo replicates occupy the 2^32 substreams above it.
RngSeed tariff_stream(RngSeed base, std::size_t tariff_index);

/// Report document (stable schema) for a set of per-tariff results.
/// `mc_included` distinguishes gof reports from fit-only reports.
std::string report_to_json(const std::vector<TariffReport>& reports,
                           bool mc_included);

}  // namespace betafreq

#endif
