#include "c4shadow/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "c4shadow/util.hpp"

namespace c4s {

double sorted_quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) throw EstimationError("quantile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("quantile level must lie in [0, 1]");
    double pos = q * static_cast<double>(sorted.size() - 1);
    auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

namespace {

// One stratified resample: redraw each setting's raw shots with replacement
// from its own empirical five-way split (four accepted outcomes + rejected).
void resample_counts(const CountsTable& base, CountsTable& out, Rng& rng) {
    out = base;
    for (std::size_t s = 0; s < base.size(); ++s) {
        const SettingCounts& src = base[s];
        SettingCounts& dst = out[s];
        dst.outcomes = {0, 0, 0, 0};
        dst.rejected = 0;
        std::int64_t n_raw = src.total();
        std::array<std::int64_t, 4> cum{};
        std::int64_t running = 0;
        for (int o = 0; o < 4; ++o) {
            running += src.outcomes[o];
            cum[o] = running;
        }
        if (n_raw > 0xFFFFFFFFll) throw CapacityError("stratum too large to resample");
        for (std::int64_t t = 0; t < n_raw; ++t) {
            auto r = static_cast<std::int64_t>(rng.below(static_cast<std::uint32_t>(n_raw)));
            if (r < cum[0])
                ++dst.outcomes[0];
            else if (r < cum[1])
                ++dst.outcomes[1];
            else if (r < cum[2])
                ++dst.outcomes[2];
            else if (r < cum[3])
                ++dst.outcomes[3];
            else
                ++dst.rejected;
        }
    }
}

BootstrapSummary summarize_resamples(double point, std::vector<double> resamples, double level) {
    BootstrapSummary s;
    s.point = point;
    s.n_resamples = static_cast<int>(resamples.size());
    s.level = level;
    double sum = 0;
    for (double v : resamples) sum += v;
    s.mean = sum / static_cast<double>(resamples.size());
    std::vector<double> sorted = resamples;
    std::sort(sorted.begin(), sorted.end());
    s.median = sorted_quantile(sorted, 0.5);
    s.iqr_low = sorted_quantile(sorted, 0.25);
    s.iqr_high = sorted_quantile(sorted, 0.75);
    double tail = 0.5 * (1.0 - level);
    s.ci_low = sorted_quantile(sorted, tail);
    s.ci_high = sorted_quantile(sorted, 1.0 - tail);
    s.resamples = std::move(resamples);
    return s;
}

}  // namespace

BootstrapSummary bootstrap_summary(const ShotStore& store, const CountsEstimator& estimator,
                                   int n_resamples, double level, std::uint64_t seed) {
    if (store.records.empty()) throw EstimationError("bootstrap needs at least one shot record");
    if (n_resamples < 100) throw ConfigError("too few bootstrap resamples to form intervals");
    if (!(level > 0.0 && level < 1.0)) throw ConfigError("confidence level must lie in (0, 1)");
    if (!estimator) throw ConfigError("bootstrap estimator is empty");

    CountsTable base = counts_from_store(store);
    double point = estimator(base);

    Rng rng(seed, 0xB005);
    CountsTable work;
    std::vector<double> resamples;
    resamples.reserve(static_cast<std::size_t>(n_resamples));
    for (int b = 0; b < n_resamples; ++b) {
        resample_counts(base, work, rng);
        try {
            resamples.push_back(estimator(work));
        } catch (const Error& e) {
            throw EstimationError("estimator failed on resample " + std::to_string(b) + ": " +
                                  e.what());
        }
    }
    return summarize_resamples(point, std::move(resamples), level);
}

double prob_better(const BootstrapSummary& a, const BootstrapSummary& b, double truth) {
    if (a.resamples.empty() || b.resamples.empty())
        throw EstimationError("paired comparison needs retained resamples");
    if (a.resamples.size() != b.resamples.size())
        throw EstimationError("paired comparison needs equally many resamples");
    std::int64_t wins = 0;
    for (std::size_t i = 0; i < a.resamples.size(); ++i)
        if (std::abs(a.resamples[i] - truth) < std::abs(b.resamples[i] - truth)) ++wins;
    return static_cast<double>(wins) / static_cast<double>(a.resamples.size());
}

std::vector<SweepPoint> shot_sweep(const ShotStore& store, const CountsEstimator& estimator,
                                   std::int64_t increment, int n_resamples, double level,
                                   std::uint64_t seed) {
    if (increment < 1) throw ConfigError("sweep increment must be positive");
    auto n = static_cast<std::int64_t>(store.records.size());
    if (n == 0) throw EstimationError("sweep needs at least one shot record");

    std::vector<std::int64_t> stops;
    for (std::int64_t m = increment; m <= n; m += increment) stops.push_back(m);
    if (stops.empty() || stops.back() != n) stops.push_back(n);

    std::vector<SweepPoint> points;
    points.reserve(stops.size());
    for (std::size_t k = 0; k < stops.size(); ++k) {
        ShotStore prefix;
        prefix.records.assign(store.records.begin(), store.records.begin() + stops[k]);
        std::int64_t accepted = 0;
        for (const auto& r : prefix.records)
            if (r.accepted) ++accepted;
        std::uint64_t sub_seed = mix64(seed + 0x9E3779B97F4A7C15ULL * (k + 1));
        SweepPoint p;
        p.raw_shots = stops[k];
        p.accepted_shots = accepted;
        p.summary = bootstrap_summary(prefix, estimator, n_resamples, level, sub_seed);
        points.push_back(std::move(p));
    }
    return points;
}

void sweep_csv(const std::vector<SweepPoint>& points, std::ostream& out) {
    out << "raw_shots,accepted_shots,estimate,median,iqr_low,iqr_high,ci_low,ci_high\n";
    for (const auto& p : points) {
        out << p.raw_shots << ',' << p.accepted_shots << ',' << g12(p.summary.point) << ','
            << g12(p.summary.median) << ',' << g12(p.summary.iqr_low) << ','
            << g12(p.summary.iqr_high) << ',' << g12(p.summary.ci_low) << ','
            << g12(p.summary.ci_high) << '\n';
    }
}

}  // namespace c4s
