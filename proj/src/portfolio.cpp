#include "betafreq/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace betafreq {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

std::int64_t parse_count(const std::string& raw, Locale locale,
                         std::size_t line, const char* column) {
  std::string digits;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    if (c >= '0' && c <= '9') {
      digits += c;
    } else if (c == '.' && locale == Locale::de && i > 0 &&
               i + 1 < raw.size()) {
      continue;  // thousands separator
    } else {
      throw parse_error(line, std::string(column) +
                                  " must be a nonnegative integer, got '" +
                                  raw + "'");
    }
  }
  if (digits.empty()) {
    throw parse_error(line, std::string(column) + " is empty");
  }
  if (digits.size() > 18) {
    throw parse_error(line, std::string(column) + " is out of range");
  }
  return std::stoll(digits);
}

}  // namespace

std::vector<TariffHistory> parse_portfolio_csv(std::istream& in,
                                               Locale locale) {
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line)) {
    throw parse_error(1, "missing header");
  }
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  {
    const auto header = split_fields(line);
    const std::vector<std::string> expected = {"year", "tariff", "contracts",
                                               "affected"};
    if (std::vector<std::string>(header.begin(), header.end()) != expected) {
      throw parse_error(1,
                        "header must be 'year,tariff,contracts,affected'");
    }
  }

  std::vector<TariffHistory> histories;
  std::map<std::string, std::size_t> index_of;
  std::set<std::pair<std::string, std::string>> seen;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 4) {
      throw parse_error(lineno, "expected 4 fields, got " +
                                    std::to_string(fields.size()));
    }
    const std::string& year = fields[0];
    const std::string& tariff = fields[1];
    if (year.empty()) throw parse_error(lineno, "year is empty");
    if (tariff.empty()) throw parse_error(lineno, "tariff is empty");
    const std::int64_t contracts =
        parse_count(fields[2], locale, lineno, "contracts");
    const std::int64_t affected =
        parse_count(fields[3], locale, lineno, "affected");
    if (contracts < 1) {
      throw parse_error(lineno, "contracts must be >= 1");
    }
    if (affected > contracts) {
      throw parse_error(lineno, "affected (" + std::to_string(affected) +
                                    ") exceeds contracts (" +
                                    std::to_string(contracts) + ")");
    }
    if (!seen.insert({tariff, year}).second) {
      throw parse_error(lineno,
                        "duplicate (tariff, year) = (" + tariff + ", " + year +
                            ")");
    }
    auto it = index_of.find(tariff);
    if (it == index_of.end()) {
      it = index_of.emplace(tariff, histories.size()).first;
      histories.push_back(TariffHistory{tariff, {}});
    }
    histories[it->second].years.push_back(
        PortfolioYear{year, contracts, affected});
  }
  return histories;
}

std::string serialize_portfolio_csv(const std::vector<TariffHistory>& hs) {
  std::string out = "year,tariff,contracts,affected\n";
  for (const auto& h : hs) {
    for (const auto& y : h.years) {
      out += y.year;
      out += ',';
      out += h.tariff_id;
      out += ',';
      out += std::to_string(y.contracts);
      out += ',';
      out += std::to_string(y.affected);
      out += '\n';
    }
  }
  return out;
}

std::string format_percent_display(double fraction) {
  const double pct = fraction * 100.0;
  const double rounded = std::floor(pct * 100.0 + 0.5) / 100.0;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", rounded);
  return buf;
}

namespace {

long long round_shape_display(double value) {
  return static_cast<long long>(std::ceil(value));
}

void fill_display_fields(TariffReport& report) {
  report.proportions_pct_display.clear();
  for (double p : report.sample.proportions) {
    report.proportions_pct_display.push_back(format_percent_display(p));
  }
  report.mean_pct_display = format_percent_display(report.sample.mean);
  report.sd_pct_display = format_percent_display(
      report.sample.variance ? std::sqrt(*report.sample.variance) : 0.0);
  report.alpha_display = round_shape_display(report.alpha);
  report.beta_display = round_shape_display(report.beta);
}

}  // namespace

RngSeed tariff_stream(RngSeed base, std::size_t tariff_index) {
  return {base.seed,
          base.stream + (static_cast<std::uint64_t>(tariff_index) << 32)};
}

TariffReport fit_tariff(const TariffHistory& history) {
  TariffReport report;
  report.tariff_id = history.tariff_id;
  report.years = history.years;
  try {
    report.sample = empirical_proportions(history.years);
    const BetaParams fitted = fit_beta_mom(report.sample);
    report.alpha = fitted.alpha();
    report.beta = fitted.beta();
  } catch (const std::exception& e) {
    throw std::runtime_error("tariff " + history.tariff_id + ": " + e.what());
  }
  fill_display_fields(report);
  return report;
}

TariffReport analyze_tariff(const TariffHistory& history,
                            const AnalyzeOptions& options) {
  TariffReport report = fit_tariff(history);
  try {
    const BetaParams fitted(report.alpha, report.beta);
    report.qq = compute_tn(report.sample, fitted);
    report.mc = mc_test(report.sample, options.replicates, options.seed,
                        {options.mode, options.threads});
  } catch (const std::exception& e) {
    throw std::runtime_error("tariff " + history.tariff_id + ": " + e.what());
  }
  return report;
}

std::string report_to_json(const std::vector<TariffReport>& reports,
                           bool mc_included) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["schema"] = mc_included ? "betafreq-gof-report/1" : "betafreq-fit-report/1";
  if (mc_included) {
    doc["procedure_note"] =
        "Lower-tail Monte-Carlo p-value (1 + #{T_sim <= T_obs}) / (N + 1); "
        "replicate parameters are re-estimated from each simulated sample "
        "unless mode is fixed-params. Published reference values for this "
        "statistic depend on the (unreported) replicate count, seed and "
        "bootstrap variant, so they are reproducible only up to Monte-Carlo "
        "and procedure tolerance.";
  }
  doc["tariffs"] = json::array();
  for (const auto& r : reports) {
    json t;
    t["tariff"] = r.tariff_id;
    t["inputs"] = json::array();
    for (const auto& y : r.years) {
      t["inputs"].push_back(json{{"year", y.year},
                                 {"contracts", y.contracts},
                                 {"affected", y.affected}});
    }
    t["proportions"] = r.sample.proportions;
    t["mean"] = r.sample.mean;
    if (r.sample.variance) {
      t["sd"] = std::sqrt(*r.sample.variance);
    } else {
      t["sd"] = nullptr;
    }
    t["alpha"] = r.alpha;
    t["beta"] = r.beta;
    t["display"] = json{{"proportions_pct", r.proportions_pct_display},
                        {"mean_pct", r.mean_pct_display},
                        {"sd_pct", r.sd_pct_display},
                        {"alpha", r.alpha_display},
                        {"beta", r.beta_display}};
    if (mc_included) {
      t["rho"] = r.qq.rho;
      if (r.qq.tn_is_infinite) {
        t["tn"] = "infinity";
      } else {
        t["tn"] = r.qq.tn;
      }
      t["p_value"] = r.mc.p_value;
      t["replicates"] = r.mc.replicates;
      t["seed"] = json{{"seed", r.mc.seed.seed}, {"stream", r.mc.seed.stream}};
      t["redraws"] = r.mc.redraws;
      t["mode"] = r.mc.mode == McMode::re_estimate ? "re-estimate"
                                                   : "fixed-params";
      t["tn_simulated_summary"] =
          json{{"min", r.mc.tn_simulated_summary.min},
               {"q1", r.mc.tn_simulated_summary.q1},
               {"median", r.mc.tn_simulated_summary.median},
               {"q3", r.mc.tn_simulated_summary.q3},
               {"max", r.mc.tn_simulated_summary.max}};
    }
    doc["tariffs"].push_back(std::move(t));
  }
  return doc.dump(2) + "\n";
}

}  // namespace betafreq
