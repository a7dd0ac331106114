#pragma once

#include <array>
#include <string>
#include <vector>

#include "qga/fitness.hpp"

namespace qga {

// Observed values of the three criteria within one data range.
struct CriterionSamples {
    std::vector<double> g;
    std::vector<double> p;
    std::vector<double> s;
};

enum class RadiusVariant { direct, inverse };

struct RadiusConfig {
    double xi_g = 0.33;
    double xi_p = 0.33;
    double xi_s = 0.34;
    RadiusVariant variant = RadiusVariant::direct;
};

enum class WeightMethod { equal, spread, radius };
enum class SColumn { raw, normalized };

// Scope of log rows feeding a weight computation.
struct DataRange {
    enum class Kind { per_query, per_population, all_populations };
    Kind kind = Kind::all_populations;
    int population_no = 0;
    int query_no = 0;

    static DataRange all() { return {Kind::all_populations, 0, 0}; }
    static DataRange population(int pop) { return {Kind::per_population, pop, 0}; }
    static DataRange query(int pop, int query) { return {Kind::per_query, pop, query}; }

    std::string to_string() const;
    static DataRange parse(const std::string& text);
};

WeightVector equal_weights();

// Relative-spread deltas: delta_k = 1 - min/max per criterion. Requires
// positive maxima.
std::array<double, 3> relative_spread_deltas(const CriterionSamples& samples);

// Weights proportional to the relative spread of each criterion; all-zero
// spread falls back to equal weights.
WeightVector relative_spread_weights(const CriterionSamples& samples);

// R*_k: the largest observed value of criterion k whose relative deviation
// from the criterion minimum stays within xi_k. Minima of 0 are clamped to
// 1e-6 (reported through *warning when given).
std::array<double, 3> radius_constrained_maxima(const CriterionSamples& samples,
                                                const RadiusConfig& cfg,
                                                std::string* warning = nullptr);

// direct: w_k = R*_k / sum R*; inverse: w_k = (1/R*_k) / sum(1/R*).
WeightVector radius_weights_from_radii(const std::array<double, 3>& rstar, RadiusVariant variant);

WeightVector radius_weights(const CriterionSamples& samples, const RadiusConfig& cfg,
                            std::string* warning = nullptr);

// The (g, p, s) columns of exactly the rows in range; the s column is either
// the raw cosine or the population-normalized one. Throws on an empty
// selection.
CriterionSamples collect_samples(const std::vector<ResultRecord>& records, const DataRange& range,
                                 SColumn s_column = SColumn::raw);

WeightVector weights_for_range(const std::vector<ResultRecord>& records, const DataRange& range,
                               WeightMethod method, const RadiusConfig& cfg,
                               SColumn s_column = SColumn::raw, std::string* warning = nullptr);

}  // namespace qga
