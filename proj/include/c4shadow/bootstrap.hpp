#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "c4shadow/shadows.hpp"

namespace c4s {

// Statistic recomputed on each resampled counts table. Must accept the same
// setting strata (possibly with different per-outcome tallies) as the
// original table.
using CountsEstimator = std::function<double(const CountsTable&)>;

struct BootstrapSummary {
    double point = 0;       // estimator on the full data, never on resamples
    int n_resamples = 0;
    double level = 0;
    double mean = 0;
    double median = 0;
    double iqr_low = 0;
    double iqr_high = 0;
    double ci_low = 0;
    double ci_high = 0;
    std::vector<double> resamples;  // kept for paired comparisons
};

// Linear-interpolation quantile (the common statistical-package default).
// `sorted` must be ascending and non-empty; q in [0, 1].
double sorted_quantile(const std::vector<double>& sorted, double q);

// Stratified percentile bootstrap: each measurement setting is resampled
// with replacement over its own raw shots (accepted outcomes and rejected
// alike), keeping per-setting raw totals fixed.
BootstrapSummary bootstrap_summary(const ShotStore& store, const CountsEstimator& estimator,
                                   int n_resamples = 5000, double level = 0.95,
                                   std::uint64_t seed = 0);

// Fraction of index-paired resamples where |a - truth| is strictly smaller
// than |b - truth|. Both summaries must retain equally many resamples.
double prob_better(const BootstrapSummary& a, const BootstrapSummary& b, double truth);

struct SweepPoint {
    std::int64_t raw_shots = 0;       // prefix length over the raw record stream
    std::int64_t accepted_shots = 0;  // accepted records within that prefix
    BootstrapSummary summary;
};

// Bootstrap the estimator on growing prefixes of the raw record stream:
// every `increment` raw shots, plus the full stream if it is not a multiple.
std::vector<SweepPoint> shot_sweep(const ShotStore& store, const CountsEstimator& estimator,
                                   std::int64_t increment, int n_resamples = 5000,
                                   double level = 0.95, std::uint64_t seed = 0);

void sweep_csv(const std::vector<SweepPoint>& points, std::ostream& out);

}  // namespace c4s
