#include "procova/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "procova/error.hpp"

namespace procova {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& message) { throw Error(ErrorKind::Schema, message); }

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

double parse_cell(const std::string& raw, std::size_t line, const std::string& column) {
  const std::string cell = trim(raw);
  const auto where = [&] { return "line " + std::to_string(line) + ", column '" + column + "'"; };
  if (cell.empty()) schema_error("empty value at " + where());
  double value = 0.0;
  const auto* begin = cell.data();
  const auto* end = cell.data() + cell.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) schema_error("'" + cell + "' is not a number at " + where());
  if (!std::isfinite(value)) schema_error("non-finite value '" + cell + "' at " + where());
  return value;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) schema_error("cannot open '" + path + "'");
  return in;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table load_table(std::istream& in, const char* what) {
  auto records = parse_csv(in);
  if (records.empty()) schema_error(std::string(what) + " CSV has no header row");
  Table t;
  t.header = std::move(records.front());
  for (auto& h : t.header) h = trim(h);
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != t.header.size()) {
      schema_error(std::string(what) + " CSV line " + std::to_string(r + 1) + " has " +
                   std::to_string(records[r].size()) + " fields, header has " +
                   std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(records[r]));
  }
  return t;
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ",") + n;
  return out;
}

json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round_significant(x);
}

}  // namespace

std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  char ch = 0;
  const auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  const auto end_record = [&] {
    end_field();
    // Skip blank lines.
    if (!(record.size() == 1 && record.front().empty())) records.push_back(std::move(record));
    record.clear();
  };
  while (in.get(ch)) {
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field += '"';
        } else {
          in_quotes = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (!field_started || trim(field).empty()) {
          field.clear();
          in_quotes = true;
          field_started = true;
        } else {
          field += ch;
        }
        break;
      case ',': end_field(); break;
      case '\r':
        if (in.peek() == '\n') in.get(ch);
        end_record();
        break;
      case '\n': end_record(); break;
      default:
        field += ch;
        field_started = true;
    }
  }
  if (in_quotes) schema_error("unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) end_record();
  // Strip a UTF-8 byte-order mark.
  if (!records.empty() && !records.front().empty() &&
      records.front().front().rfind("\xEF\xBB\xBF", 0) == 0) {
    records.front().front().erase(0, 3);
  }
  return records;
}

TrialDataset parse_trial_csv(std::istream& in) {
  const Table t = load_table(in, "trial");
  if (t.header.size() < 2 || t.header[0] != "y" || t.header[1] != "a") {
    schema_error("trial CSV header must start with columns 'y,a' (got '" + join(t.header) + "')");
  }
  std::vector<std::string> names{kInterceptName};
  std::set<std::string> seen;
  for (std::size_t c = 2; c < t.header.size(); ++c) {
    const auto& name = t.header[c];
    if (name.empty()) schema_error("trial CSV column " + std::to_string(c + 1) + " has no name");
    if (name == "y" || name == "a" || name == kInterceptName || !seen.insert(name).second) {
      schema_error("trial CSV column '" + name + "' is duplicated or reserved");
    }
    names.push_back(name);
  }
  if (t.rows.empty()) throw Error(ErrorKind::EmptyData, "trial CSV has no data rows");

  const auto n = static_cast<Eigen::Index>(t.rows.size());
  const auto q = static_cast<Eigen::Index>(names.size());
  TrialDataset d;
  d.covariate_names = names;
  d.covariates.resize(n, q);
  d.treatment.resize(n);
  d.outcome.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = t.rows[static_cast<std::size_t>(i)];
    const auto line = static_cast<std::size_t>(i) + 2;
    d.outcome(i) = parse_cell(row[0], line, "y");
    const double a = parse_cell(row[1], line, "a");
    if (a != 0.0 && a != 1.0) {
      schema_error("treatment must be 0 or 1 at line " + std::to_string(line) + ", column 'a' (got '" +
                   trim(row[1]) + "')");
    }
    d.treatment(i) = a;
    d.covariates(i, 0) = 1.0;
    for (Eigen::Index j = 1; j < q; ++j) {
      d.covariates(i, j) = parse_cell(row[static_cast<std::size_t>(j) + 1], line,
                                      names[static_cast<std::size_t>(j)]);
    }
  }
  return d;
}

TrialDataset read_trial_csv(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_trial_csv(in);
}

HistoricalDataset parse_historical_csv(std::istream& in,
                                       const std::vector<std::string>& trial_covariates) {
  const Table t = load_table(in, "historical");
  std::vector<std::size_t> keep;
  std::vector<std::string> kept_names;
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    if (t.header[c] == "a") continue;  // historical treatment is 0 by definition
    keep.push_back(c);
    kept_names.push_back(t.header[c]);
  }
  if (kept_names.empty() || kept_names.front() != "y") {
    schema_error("historical CSV header must start with column 'y' (got '" + join(t.header) + "')");
  }
  std::vector<std::string> names{kInterceptName};
  names.insert(names.end(), kept_names.begin() + 1, kept_names.end());
  std::vector<std::string> expected = trial_covariates;
  if (expected.empty() || expected.front() != kInterceptName) {
    expected.insert(expected.begin(), kInterceptName);
  }
  if (names != expected) {
    schema_error("historical covariates '" + join({names.begin() + 1, names.end()}) +
                 "' do not match trial covariates '" + join({expected.begin() + 1, expected.end()}) +
                 "'");
  }
  if (t.rows.empty()) throw Error(ErrorKind::EmptyData, "historical CSV has no data rows");

  const auto n = static_cast<Eigen::Index>(t.rows.size());
  const auto q = static_cast<Eigen::Index>(names.size());
  HistoricalDataset d;
  d.covariate_names = names;
  d.covariates.resize(n, q);
  d.outcome.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = t.rows[static_cast<std::size_t>(i)];
    const auto line = static_cast<std::size_t>(i) + 2;
    d.outcome(i) = parse_cell(row[keep[0]], line, "y");
    d.covariates(i, 0) = 1.0;
    for (Eigen::Index j = 1; j < q; ++j) {
      d.covariates(i, j) =
          parse_cell(row[keep[static_cast<std::size_t>(j)]], line, names[static_cast<std::size_t>(j)]);
    }
  }
  return d;
}

HistoricalDataset read_historical_csv(const std::string& path,
                                      const std::vector<std::string>& trial_covariates) {
  auto in = open_or_throw(path);
  return parse_historical_csv(in, trial_covariates);
}

double round_significant(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific, digits - 1);
  double out = 0.0;
  std::from_chars(buf, res.ptr, out);
  return out;
}

std::string format_number(double x) {
  if (!std::isfinite(x)) return "";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, round_significant(x));
  return std::string(buf, res.ptr);
}

std::string fit_report_json(const ProcovaFit& fit, const std::vector<InferenceResult>& rows) {
  json doc;
  doc["model"] = std::string(to_string(fit.spec.variant));
  doc["n"] = fit.n_trial;
  doc["n_hist"] = fit.n_hist;
  doc["kappa"] = number(fit.kappa_hat);
  doc["df"] = rows.empty() ? 0L : rows.front().df;
  doc["level"] = number(rows.empty() ? kDefaultLevel : rows.front().level);
  json coefficients = json::array();
  for (const auto& r : rows) {
    json c;
    c["label"] = r.coefficient_label;
    c["estimate"] = number(r.estimate);
    c["se_fix"] = number(r.se_fix);
    c["se_est"] = number(r.se_est);
    c["ci_fix"] = json::array({number(r.ci_fix.lo), number(r.ci_fix.hi)});
    c["ci_est"] = json::array({number(r.ci_est.lo), number(r.ci_est.hi)});
    c["df"] = r.df;
    c["variance_ratio"] = number(variance_ratio(fit, r.contrast));
    coefficients.push_back(std::move(c));
  }
  doc["coefficients"] = std::move(coefficients);
  json theta = json::array();
  for (Eigen::Index j = 0; j < fit.theta_hat.size(); ++j) theta.push_back(number(fit.theta_hat(j)));
  doc["theta"] = std::move(theta);
  return doc.dump(2) + "\n";
}

std::string fit_report_csv(const ProcovaFit& fit, const std::vector<InferenceResult>& rows) {
  std::ostringstream out;
  out << "coefficient,estimate,se_fix,se_est,ci_fix_lo,ci_fix_hi,ci_est_lo,ci_est_hi,df,variance_ratio\n";
  for (const auto& r : rows) {
    out << r.coefficient_label << ',' << format_number(r.estimate) << ',' << format_number(r.se_fix)
        << ',' << format_number(r.se_est) << ',' << format_number(r.ci_fix.lo) << ','
        << format_number(r.ci_fix.hi) << ',' << format_number(r.ci_est.lo) << ','
        << format_number(r.ci_est.hi) << ',' << r.df << ','
        << format_number(variance_ratio(fit, r.contrast)) << '\n';
  }
  return out.str();
}

std::string metrics_json(const ReplicationMetrics& m) {
  const auto& cfg = m.config;
  const auto shift = shift_parameters(cfg.shift_pattern);
  json doc;
  doc["scenario"] = cfg.label();
  doc["outcome_model"] = std::string(1, to_char(cfg.outcome_model));
  doc["shift_pattern"] = cfg.shift_pattern;
  doc["b"] = number(shift.b);
  doc["c"] = number(shift.c);
  doc["n"] = cfg.n_trial;
  doc["n_hist"] = cfg.n_hist;
  doc["replications"] = cfg.replications;
  doc["replications_completed"] = m.replications_completed;
  doc["replications_failed"] = m.replications_failed;
  doc["seed"] = cfg.seed;
  doc["model"] = std::string(to_string(cfg.spec.variant));
  doc["level"] = number(cfg.level);
  doc["rng"] = m.rng_algorithm;
  doc["true_ate"] = number(true_targets(cfg.outcome_model));
  json coefficients = json::array();
  for (const auto& c : m.coefficients) {
    json row;
    row["label"] = c.label;
    row["target"] = number(c.target);
    row["coverage_fix"] = number(c.coverage_fix);
    row["coverage_est"] = number(c.coverage_est);
    row["mean_variance_ratio"] = number(c.mean_variance_ratio);
    row["min_variance_ratio"] = number(c.min_variance_ratio);
    row["mean_estimate"] = number(c.mean_estimate);
    row["sd_estimate"] = number(c.sd_estimate);
    row["mean_se_fix"] = number(c.mean_se_fix);
    row["mean_se_est"] = number(c.mean_se_est);
    coefficients.push_back(std::move(row));
  }
  doc["coefficients"] = std::move(coefficients);
  return doc.dump(2) + "\n";
}

std::string metrics_csv(const ReplicationMetrics& m) {
  const auto& cfg = m.config;
  std::ostringstream out;
  out << "scenario,model,n,n_hist,coefficient,estimator,target,coverage,mean_se,mean_estimate,"
         "sd_estimate,mean_variance_ratio,replications_completed,replications_failed\n";
  for (const auto& c : m.coefficients) {
    for (const bool est : {false, true}) {
      out << cfg.label() << ',' << to_string(cfg.spec.variant) << ',' << cfg.n_trial << ','
          << cfg.n_hist << ',' << c.label << ',' << (est ? "est" : "fix") << ','
          << format_number(c.target) << ',' << format_number(est ? c.coverage_est : c.coverage_fix)
          << ',' << format_number(est ? c.mean_se_est : c.mean_se_fix) << ','
          << format_number(c.mean_estimate) << ',' << format_number(c.sd_estimate) << ','
          << format_number(c.mean_variance_ratio) << ',' << m.replications_completed << ','
          << m.replications_failed << '\n';
    }
  }
  return out.str();
}

std::string canonical_json(const std::string& text) { return json::parse(text).dump(2) + "\n"; }

}  // namespace procova
