#include "stability/stability.hpp"

#include <cmath>
#include <cstdio>

#include "core/error.hpp"
#include "core/special_functions.hpp"

namespace crashspat {

namespace {

LrTestResult make_result(double chi2, int df, double level) {
    require(df > 0, ErrorCode::Domain, "degrees of freedom must be positive");
    LrTestResult out;
    out.chi2 = chi2;
    out.df = df;
    if (chi2 < 0.0) {
        out.anomaly = true;
        out.confidence = 0.0;
        out.reject_null = false;
        return out;
    }
    out.confidence = num::chi_square_cdf(chi2, df);
    out.reject_null = out.confidence >= level;
    return out;
}

} // namespace

LrTestResult lr_transfer_test(double ll_own, double ll_transferred, int df, double level) {
    return make_result(-2.0 * (ll_transferred - ll_own), df, level);
}

LrTestResult lr_pooled_test(double ll_full, const std::vector<double>& ll_districts, int df,
                            double level) {
    require(!ll_districts.empty(), ErrorCode::InvalidArgument, "no district likelihoods");
    double sum = 0.0;
    for (double ll : ll_districts) sum += ll;
    return make_result(-2.0 * (ll_full - sum), df, level);
}

std::vector<TransferCell> transfer_matrix(const std::vector<std::vector<CrashRecord>>& datasets,
                                          const std::vector<EstimationResult>& fits,
                                          double level) {
    require(datasets.size() == fits.size(), ErrorCode::InvalidArgument,
            "datasets and fits must pair up");
    std::vector<TransferCell> cells;
    const int m = static_cast<int>(fits.size());
    for (int target = 0; target < m; ++target) {
        for (int source = 0; source < m; ++source) {
            if (target == source) continue;
            TransferCell cell;
            cell.target_district = target;
            cell.source_district = source;
            cell.ll_own = fits[static_cast<std::size_t>(target)].ll;
            cell.ll_transferred = evaluate_loglik(
                datasets[static_cast<std::size_t>(target)],
                fits[static_cast<std::size_t>(source)].spec,
                fits[static_cast<std::size_t>(source)].estimates);
            cell.test = lr_transfer_test(cell.ll_own, cell.ll_transferred,
                                         fits[static_cast<std::size_t>(source)].k, level);
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

std::string format_lr_cell(const LrTestResult& result) {
    char buf[64];
    if (result.anomaly) {
        std::snprintf(buf, sizeof(buf), "%.2f(%d) [anomaly]", result.chi2, result.df);
        return buf;
    }
    if (result.confidence > 0.999) {
        std::snprintf(buf, sizeof(buf), "%.2f(%d) [>99.9%%]", result.chi2, result.df);
        return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.2f(%d) [%.1f%%]", result.chi2, result.df,
                  100.0 * result.confidence);
    return buf;
}

} // namespace crashspat
