// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include "geostab/brands/lexicon.hpp"
#include "geostab/ingest/filters.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace geostab {

struct SeriesKey {
    std::string campaign;
    std::string engine;
    int prompt_index = 1;
    std::string brand;

    std::string str() const;
};

// Binary detection indicators for one brand: one per run (subsampling) or one
// per collection day (rolling windows). Series that never detect are excluded
// at construction. Daily series also carry their collection days so calendar
// gaps stay visible.
struct BrandSeries {
    SeriesKey key;
    std::vector<uint8_t> observations;
    std::vector<Date> days; // empty for run series; else parallel to observations

    size_t size() const { return observations.size(); }
};

// Standard error of an n-run estimate: population standard deviation of the
// means of `resamples` uniform subsets of size n drawn without replacement.
// n == N returns 0 without sampling; n < 1 or n > N throws.
double subsample_se(const BrandSeries& series, size_t n, size_t resamples, uint64_t seed);

// Population standard deviation of all consecutive d-length window means.
// Deterministic; d > length throws; d == length gives 0. Windows slide over
// observations: missing collection days compress the series.
double rolling_window_se(const BrandSeries& series, size_t d);

// Strict-calendar variant: windows are d consecutive calendar days and only
// windows with an observation on every day count. Returns nullopt when no
// complete window exists.
std::optional<double> rolling_window_se_calendar(const BrandSeries& series, size_t d);

// 95% CI half-width, z = 1.96.
double ci_half_width(double se);

struct CurvePoint {
    int x = 0;            // sample size n or window length d
    double mean_se = 0.0; // across contributing series/groups
    double ci_half_width = 0.0;
    size_t series_count = 0;
};

struct ConvergenceCurve {
    std::string mode; // "brand", "source_coverage", or "window"
    std::vector<CurvePoint> points;
    size_t resamples = 0;
    uint64_t seed = 0;
    // first x with mean SE below each threshold; absent when never reached
    std::map<double, int> thresholds;
};

enum class RunCurveMode { BrandDetection, SourceCoverage };

// Per-brand run series from a simultaneous dataset: groups with at least
// `reference_runs` runs contribute (the earliest `reference_runs` runs), one
// series per lexicon brand detected at least once.
std::vector<BrandSeries> build_brand_run_series(const FilteredDataset& dataset,
                                                const std::map<std::string, BrandLexicon>& lexicons,
                                                size_t reference_runs);

// Per-brand daily series from a temporal dataset: one observation per
// collection day (earliest record of the day), gaps compressed.
std::vector<BrandSeries> build_brand_daily_series(const FilteredDataset& dataset,
                                                  const std::map<std::string, BrandLexicon>& lexicons);

// Run-count convergence (subsampling without replacement). Brand mode averages
// per-brand detection-rate SE; source-coverage mode averages the SE of the
// Jaccard between an n-run domain union and the reference-run union.
ConvergenceCurve run_convergence_curve(const FilteredDataset& dataset,
                                       const std::map<std::string, BrandLexicon>& lexicons,
                                       RunCurveMode mode, size_t reference_runs, size_t resamples,
                                       uint64_t master_seed);

// Observation-window convergence over per-brand daily series. strict_calendar
// switches to gap-free calendar windows.
ConvergenceCurve window_convergence_curve(const FilteredDataset& dataset,
                                          const std::map<std::string, BrandLexicon>& lexicons,
                                          size_t max_window, bool strict_calendar = false);

} // namespace geostab
