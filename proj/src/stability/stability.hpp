#pragma once

#include <string>
#include <vector>

#include "ingest/crash_record.hpp"
#include "probit/estimate.hpp"

namespace crashspat {

struct LrTestResult {
    double chi2 = 0.0;
    int df = 0;
    double confidence = 0.0; // chi-square CDF at chi2
    bool reject_null = false;
    // A negative statistic contradicts the likelihood ordering the test
    // assumes. It is reported as-is, flagged, never clamped.
    bool anomaly = false;
};

// Parameter transfer test: twice the log-likelihood drop from evaluating a
// foreign parameter vector on this data. df is the transferred model's
// estimated parameter count.
LrTestResult lr_transfer_test(double ll_own, double ll_transferred, int df,
                              double level = 0.90);

// Pooled-versus-separate test: twice the gap between the pooled fit and the
// sum of per-district fits; df is the parameter-count difference.
LrTestResult lr_pooled_test(double ll_full, const std::vector<double>& ll_districts, int df,
                            double level = 0.95);

struct TransferCell {
    int target_district = 0; // data provider (row)
    int source_district = 0; // parameter provider (column)
    double ll_own = 0.0;
    double ll_transferred = 0.0;
    LrTestResult test;
};

// Off-diagonal grid of transfer tests: each fitted model is evaluated,
// without re-estimation, on every other district's records. Row-major over
// (target, source), diagonal omitted.
std::vector<TransferCell> transfer_matrix(const std::vector<std::vector<CrashRecord>>& datasets,
                                          const std::vector<EstimationResult>& fits,
                                          double level = 0.90);

// "12.34(5) [67.8%]": statistic, degrees of freedom, confidence. The
// confidence prints as ">99.9%" past that point and "anomaly" when negative.
std::string format_lr_cell(const LrTestResult& result);

} // namespace crashspat
