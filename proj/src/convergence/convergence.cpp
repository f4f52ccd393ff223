// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "geostab/convergence/convergence.hpp"

#include "geostab/brands/detect.hpp"
#include "geostab/convergence/rng.hpp"
#include "geostab/metrics/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace geostab {

namespace {

constexpr double kZ95 = 1.96;

double population_sd(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(values.size()));
}

struct Group {
    std::string campaign;
    std::string engine;
    int prompt_index = 1;
    std::vector<size_t> record_indices; // dataset order = time order

    std::string str() const {
        return campaign + "|" + engine + "|" + std::to_string(prompt_index);
    }
};

std::vector<Group> group_by_prompt(const FilteredDataset& dataset) {
    std::map<std::tuple<std::string, std::string, int>, Group> groups;
    for (size_t i = 0; i < dataset.records.size(); ++i) {
        const auto& r = dataset.records[i];
        auto key = std::make_tuple(r.prompt.campaign.name, r.engine.label(), r.prompt.index);
        auto& g = groups[key];
        if (g.record_indices.empty()) {
            g.campaign = r.prompt.campaign.name;
            g.engine = r.engine.label();
            g.prompt_index = r.prompt.index;
        }
        g.record_indices.push_back(i);
    }
    std::vector<Group> out;
    out.reserve(groups.size());
    for (auto& [key, g] : groups) out.push_back(std::move(g));
    return out;
}

void add_threshold_crossings(ConvergenceCurve& curve, std::initializer_list<double> thresholds) {
    for (double thr : thresholds) {
        for (const auto& pt : curve.points) {
            if (pt.mean_se < thr) {
                curve.thresholds[thr] = pt.x;
                break;
            }
        }
    }
}

} // namespace

std::string SeriesKey::str() const {
    return campaign + "|" + engine + "|" + std::to_string(prompt_index) + "|" + brand;
}

double subsample_se(const BrandSeries& series, size_t n, size_t resamples, uint64_t seed) {
    const size_t total = series.size();
    if (n < 1 || n > total) throw std::invalid_argument("subsample_se: n out of range");
    if (resamples < 1) throw std::invalid_argument("subsample_se: resamples must be >= 1");
    if (n == total) return 0.0; // the full sample has a single possible mean

    SplitMix64 rng(seed);
    std::vector<double> means;
    means.reserve(resamples);
    for (size_t r = 0; r < resamples; ++r) {
        auto picks = sample_without_replacement(total, n, rng);
        size_t hits = 0;
        for (size_t idx : picks) hits += series.observations[idx];
        means.push_back(static_cast<double>(hits) / static_cast<double>(n));
    }
    return population_sd(means);
}

double rolling_window_se(const BrandSeries& series, size_t d) {
    const size_t len = series.size();
    if (d < 1 || d > len) throw std::invalid_argument("rolling_window_se: window out of range");
    std::vector<double> prefix(len + 1, 0.0);
    for (size_t i = 0; i < len; ++i) prefix[i + 1] = prefix[i] + series.observations[i];
    std::vector<double> means;
    means.reserve(len - d + 1);
    for (size_t i = 0; i + d <= len; ++i)
        means.push_back((prefix[i + d] - prefix[i]) / static_cast<double>(d));
    return population_sd(means);
}

std::optional<double> rolling_window_se_calendar(const BrandSeries& series, size_t d) {
    if (d < 1) throw std::invalid_argument("rolling_window_se_calendar: window out of range");
    if (series.days.size() != series.size())
        throw std::invalid_argument("rolling_window_se_calendar: series carries no day stamps");
    std::vector<double> means;
    // a complete window is d consecutive observations spanning exactly d days
    for (size_t i = 0; i + d <= series.size(); ++i) {
        if (series.days[i + d - 1] - series.days[i] != std::chrono::days{static_cast<long>(d - 1)})
            continue;
        double sum = 0.0;
        for (size_t j = i; j < i + d; ++j) sum += series.observations[j];
        means.push_back(sum / static_cast<double>(d));
    }
    if (means.empty()) return std::nullopt;
    return population_sd(means);
}

double ci_half_width(double se) {
    if (se < 0.0) throw std::invalid_argument("ci_half_width: negative SE");
    return kZ95 * se;
}

std::vector<BrandSeries> build_brand_run_series(const FilteredDataset& dataset,
                                                const std::map<std::string, BrandLexicon>& lexicons,
                                                size_t reference_runs) {
    std::vector<BrandSeries> series;
    for (const auto& group : group_by_prompt(dataset)) {
        auto lex = lexicons.find(group.campaign);
        if (lex == lexicons.end()) continue;
        if (group.record_indices.size() < reference_runs) continue;

        std::vector<ItemSet> detected;
        detected.reserve(reference_runs);
        for (size_t i = 0; i < reference_runs; ++i) {
            const auto& record = dataset.records[group.record_indices[i]];
            detected.push_back(detect_brands(record.answer_text, lex->second).brands_set());
        }
        for (const auto& [canonical, patterns] : lex->second.brands()) {
            BrandSeries s;
            s.key = SeriesKey{group.campaign, group.engine, group.prompt_index, canonical};
            s.observations.resize(reference_runs);
            bool any = false;
            for (size_t i = 0; i < reference_runs; ++i) {
                s.observations[i] = detected[i].contains(canonical) ? 1 : 0;
                any |= s.observations[i] != 0;
            }
            if (any) series.push_back(std::move(s));
        }
    }
    return series;
}

std::vector<BrandSeries> build_brand_daily_series(const FilteredDataset& dataset,
                                                  const std::map<std::string, BrandLexicon>& lexicons) {
    std::vector<BrandSeries> series;
    for (const auto& group : group_by_prompt(dataset)) {
        auto lex = lexicons.find(group.campaign);
        if (lex == lexicons.end()) continue;

        // one record per collection day, earliest timestamp
        std::map<Date, size_t> by_day;
        for (size_t i : group.record_indices) {
            const auto& r = dataset.records[i];
            Date day = to_date(r.timestamp);
            auto it = by_day.find(day);
            if (it == by_day.end() || r.timestamp < dataset.records[it->second].timestamp)
                by_day[day] = i;
        }
        std::vector<ItemSet> detected;
        std::vector<Date> days;
        detected.reserve(by_day.size());
        for (const auto& [day, idx] : by_day) {
            detected.push_back(detect_brands(dataset.records[idx].answer_text, lex->second).brands_set());
            days.push_back(day);
        }

        for (const auto& [canonical, patterns] : lex->second.brands()) {
            BrandSeries s;
            s.key = SeriesKey{group.campaign, group.engine, group.prompt_index, canonical};
            s.observations.resize(detected.size());
            s.days = days;
            bool any = false;
            for (size_t i = 0; i < detected.size(); ++i) {
                s.observations[i] = detected[i].contains(canonical) ? 1 : 0;
                any |= s.observations[i] != 0;
            }
            if (any) series.push_back(std::move(s));
        }
    }
    return series;
}

namespace {

// SE of the coverage Jaccard (n-run union vs the reference union) for one
// group. Domains are interned; a stamp vector tracks subset-union membership.
double coverage_se(const std::vector<std::vector<int>>& run_domains, size_t full_union,
                   size_t n, size_t resamples, uint64_t seed) {
    const size_t total = run_domains.size();
    if (n == total) return 0.0;
    SplitMix64 rng(seed);
    std::vector<int> stamp(full_union, -1);
    std::vector<double> coverages;
    coverages.reserve(resamples);
    for (size_t r = 0; r < resamples; ++r) {
        auto picks = sample_without_replacement(total, n, rng);
        size_t union_size = 0;
        for (size_t run : picks) {
            for (int dom : run_domains[run]) {
                if (stamp[dom] != static_cast<int>(r)) {
                    stamp[dom] = static_cast<int>(r);
                    ++union_size;
                }
            }
        }
        coverages.push_back(static_cast<double>(union_size) / static_cast<double>(full_union));
    }
    return population_sd(coverages);
}

} // namespace

ConvergenceCurve run_convergence_curve(const FilteredDataset& dataset,
                                       const std::map<std::string, BrandLexicon>& lexicons,
                                       RunCurveMode mode, size_t reference_runs, size_t resamples,
                                       uint64_t master_seed) {
    ConvergenceCurve curve;
    curve.resamples = resamples;
    curve.seed = master_seed;

    if (mode == RunCurveMode::BrandDetection) {
        curve.mode = "brand";
        auto series = build_brand_run_series(dataset, lexicons, reference_runs);
        if (series.empty()) throw std::runtime_error("no qualifying per-brand series");
        for (size_t n = 1; n <= reference_runs; ++n) {
            double sum = 0.0;
            for (const auto& s : series) {
                uint64_t seed = derive_seed(master_seed, s.key.str() + "|n=" + std::to_string(n));
                sum += subsample_se(s, n, resamples, seed);
            }
            double mean_se = sum / static_cast<double>(series.size());
            curve.points.push_back({static_cast<int>(n), mean_se, ci_half_width(mean_se), series.size()});
        }
        add_threshold_crossings(curve, {0.10, 0.08});
        return curve;
    }

    curve.mode = "source_coverage";
    struct CoverageGroup {
        std::string key;
        std::vector<std::vector<int>> run_domains;
        size_t full_union = 0;
    };
    std::vector<CoverageGroup> groups;
    for (const auto& group : group_by_prompt(dataset)) {
        if (group.record_indices.size() < reference_runs) continue;
        CoverageGroup cg;
        cg.key = group.str();
        std::unordered_map<std::string, int> ids;
        for (size_t i = 0; i < reference_runs; ++i) {
            const auto& record = dataset.records[group.record_indices[i]];
            RankedList ranked = source_ranked(record);
            std::vector<int> domains;
            for (const auto& item : ranked.items()) {
                auto [it, inserted] = ids.emplace(item, static_cast<int>(ids.size()));
                domains.push_back(it->second);
            }
            cg.run_domains.push_back(std::move(domains));
        }
        cg.full_union = ids.size();
        if (cg.full_union > 0) groups.push_back(std::move(cg));
    }
    if (groups.empty()) throw std::runtime_error("no qualifying groups for source coverage");

    for (size_t n = 1; n <= reference_runs; ++n) {
        double sum = 0.0;
        for (const auto& g : groups) {
            uint64_t seed = derive_seed(master_seed, g.key + "|n=" + std::to_string(n));
            sum += coverage_se(g.run_domains, g.full_union, n, resamples, seed);
        }
        double mean_se = sum / static_cast<double>(groups.size());
        curve.points.push_back({static_cast<int>(n), mean_se, ci_half_width(mean_se), groups.size()});
    }
    add_threshold_crossings(curve, {0.10, 0.08});
    return curve;
}

ConvergenceCurve window_convergence_curve(const FilteredDataset& dataset,
                                          const std::map<std::string, BrandLexicon>& lexicons,
                                          size_t max_window, bool strict_calendar) {
    auto series = build_brand_daily_series(dataset, lexicons);
    if (series.empty()) throw std::runtime_error("no qualifying per-brand daily series");

    ConvergenceCurve curve;
    curve.mode = strict_calendar ? "window_calendar" : "window";
    for (size_t d = 1; d <= max_window; ++d) {
        double sum = 0.0;
        size_t count = 0;
        for (const auto& s : series) {
            if (s.size() < d) continue;
            if (strict_calendar) {
                auto se = rolling_window_se_calendar(s, d);
                if (!se) continue; // no gap-free window of this length
                sum += *se;
            } else {
                sum += rolling_window_se(s, d);
            }
            ++count;
        }
        if (count == 0) break; // no series long enough
        double mean_se = sum / static_cast<double>(count);
        curve.points.push_back({static_cast<int>(d), mean_se, ci_half_width(mean_se), count});
    }
    add_threshold_crossings(curve, {0.10, 0.05, 0.02});
    return curve;
}

} // namespace geostab
