#include "qga/fitness.hpp"

#include <cmath>
#include <stdexcept>

namespace qga {

bool WeightVector::valid(double tol) const {
    if (w_g < 0.0 || w_p < 0.0 || w_s < 0.0) return false;
    return std::abs(w_g + w_p + w_s - 1.0) <= tol;
}

double rank_raw(const std::string& doc_id, const std::vector<ResultList>& population_results) {
    double sum = 0.0;
    bool found = false;
    for (const auto& list : population_results) {
        for (const auto& r : list) {
            if (r.doc_id == doc_id) {
                sum += r.position;
                found = true;
                break;
            }
        }
    }
    if (!found) throw std::invalid_argument("document not in population results");
    return sum;
}

double universality_raw(const std::string& doc_id,
                        const std::vector<ResultList>& population_results) {
    int count = 0;
    for (const auto& list : population_results) {
        for (const auto& r : list) {
            if (r.doc_id == doc_id) {
                ++count;
                break;
            }
        }
    }
    if (count == 0) throw std::invalid_argument("document not in population results");
    return static_cast<double>(count);
}

double normalize_rank(double g_raw, const NormalizationContext& ctx) {
    if (g_raw < ctx.g_min || g_raw > ctx.g_max) {
        throw std::invalid_argument("raw rank value outside normalization bounds");
    }
    if (ctx.g_min == ctx.g_max) return 0.5;
    return 1.0 - (g_raw - ctx.g_min) / (ctx.g_max - ctx.g_min);
}

double normalize_universality(double p_raw, const NormalizationContext& ctx) {
    if (p_raw < ctx.p_min || p_raw > ctx.p_max) {
        throw std::invalid_argument("raw universality value outside normalization bounds");
    }
    if (ctx.p_min == ctx.p_max) return 0.5;
    return (p_raw - ctx.p_min) / (ctx.p_max - ctx.p_min);
}

double semantic_similarity(const TermVector& result_vec, const TermVector& pattern_vec) {
    double dot = 0.0, norm_a = 0.0, norm_b = 0.0;
    for (const auto& [term, w] : result_vec) {
        norm_a += w * w;
        const auto it = pattern_vec.find(term);
        if (it != pattern_vec.end()) dot += w * it->second;
    }
    for (const auto& [term, w] : pattern_vec) norm_b += w * w;
    if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
    return dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
}

double result_fitness(double g, double p, double s, const WeightVector& w) {
    return w.w_g * g + w.w_p * p + w.w_s * s;
}

double query_fitness(const std::vector<ResultRecord>& records, const WeightVector& w) {
    if (records.empty()) throw std::invalid_argument("query returned no results");
    double sum = 0.0;
    for (const auto& r : records) sum += result_fitness(r.g, r.p, r.s_raw, w);
    return sum / static_cast<double>(records.size());
}

double population_fitness(const std::vector<double>& per_query) {
    if (per_query.empty()) throw std::invalid_argument("population has no queries");
    double sum = 0.0;
    for (double v : per_query) sum += v;
    return sum / static_cast<double>(per_query.size());
}

}  // namespace qga
