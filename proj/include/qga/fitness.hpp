#pragma once

#include <string>
#include <vector>

#include "qga/corpus.hpp"
#include "qga/search.hpp"

namespace qga {

struct WeightVector {
    double w_g = 0.0;
    double w_p = 0.0;
    double w_s = 0.0;

    bool valid(double tol = 1e-9) const;
};

// One row of the experiment log: one document under one query of one
// population, with raw and normalized criteria.
struct ResultRecord {
    int population_no = 0;
    int query_no = 0;
    std::string doc_id;
    double g_raw = 0.0;  // sum of positions across the population's lists
    double g = 0.0;      // normalized rank criterion, [0,1]
    double p_raw = 0.0;  // number of lists containing the doc
    double p = 0.0;      // normalized universality criterion, [0,1]
    double s_raw = 0.0;  // cosine to the search pattern, [0,1]
    double s = 0.0;      // min-max normalized s_raw over the population
};

// Per-population min/max of the raw criteria.
struct NormalizationContext {
    double g_min = 0.0, g_max = 0.0;
    double p_min = 0.0, p_max = 0.0;
};

// Sum of the document's positions over the population's result lists; lists
// where it is absent contribute nothing. Throws if it appears in none.
double rank_raw(const std::string& doc_id, const std::vector<ResultList>& population_results);

// Number of the population's lists containing the document.
double universality_raw(const std::string& doc_id,
                        const std::vector<ResultList>& population_results);

// 1 at g_min, 0 at g_max, linear between; degenerate span yields 0.5.
double normalize_rank(double g_raw, const NormalizationContext& ctx);

// 0 at p_min, 1 at p_max; degenerate span yields 0.5.
double normalize_universality(double p_raw, const NormalizationContext& ctx);

// Cosine of two sparse vectors; 0 when either is empty or zero-norm.
double semantic_similarity(const TermVector& result_vec, const TermVector& pattern_vec);

// w_g*g + w_p*p + w_s*s
double result_fitness(double g, double p, double s, const WeightVector& w);

// Mean result fitness over one query's records. Throws on an empty list;
// the runner assigns 0 to queries with no results instead of calling this.
double query_fitness(const std::vector<ResultRecord>& records, const WeightVector& w);

// Mean of the per-query fitness values.
double population_fitness(const std::vector<double>& per_query);

}  // namespace qga
