#pragma once

#include <istream>
#include <string>
#include <vector>

#include "procova/data.hpp"
#include "procova/estimation.hpp"
#include "procova/inference.hpp"
#include "procova/simulation.hpp"

namespace procova {

/// RFC-4180 records (quoted fields, doubled quotes, LF or CRLF endings).
std::vector<std::vector<std::string>> parse_csv(std::istream& in);

/// Trial CSV: header `y,a,<covariates...>`; the intercept is prepended.
/// Throws Schema with the offending line/column in the message.
TrialDataset parse_trial_csv(std::istream& in);
TrialDataset read_trial_csv(const std::string& path);

/// Historical CSV: header `y,<covariates...>` with the trial's covariate
/// names in the same order. A column named `a` is skipped unread.
HistoricalDataset parse_historical_csv(std::istream& in,
                                       const std::vector<std::string>& trial_covariates);
HistoricalDataset read_historical_csv(const std::string& path,
                                      const std::vector<std::string>& trial_covariates);

/// Rounds to 12 significant digits; every number written by the report
/// writers goes through this.
double round_significant(double x, int digits = 12);
/// Shortest round-trip text of round_significant(x).
std::string format_number(double x);

std::string fit_report_json(const ProcovaFit& fit, const std::vector<InferenceResult>& rows);
std::string fit_report_csv(const ProcovaFit& fit, const std::vector<InferenceResult>& rows);

std::string metrics_json(const ReplicationMetrics& metrics);
/// One row per coefficient and estimator.
std::string metrics_csv(const ReplicationMetrics& metrics);

/// Parses and re-serializes a JSON document in the report's canonical form.
std::string canonical_json(const std::string& text);

}  // namespace procova
