#include "qga/weights.hpp"

#include <algorithm>
#include <stdexcept>

namespace qga {

namespace {

constexpr double kMinClamp = 1e-6;

std::pair<double, double> min_max(const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return {*lo, *hi};
}

void check_samples(const CriterionSamples& s) {
    if (s.g.empty() || s.g.size() != s.p.size() || s.g.size() != s.s.size()) {
        throw std::invalid_argument("criterion samples must be non-empty and of equal length");
    }
}

}  // namespace

std::string DataRange::to_string() const {
    switch (kind) {
        case Kind::all_populations:
            return "all";
        case Kind::per_population:
            return "population:" + std::to_string(population_no);
        case Kind::per_query:
            return "query:" + std::to_string(population_no) + ":" + std::to_string(query_no);
    }
    return "all";
}

DataRange DataRange::parse(const std::string& text) {
    if (text == "all") return all();
    if (text.rfind("population:", 0) == 0) {
        return population(std::stoi(text.substr(11)));
    }
    if (text.rfind("query:", 0) == 0) {
        const auto rest = text.substr(6);
        const auto colon = rest.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("range query: expects query:<population>:<query>");
        }
        return query(std::stoi(rest.substr(0, colon)), std::stoi(rest.substr(colon + 1)));
    }
    throw std::invalid_argument("unknown data range: " + text);
}

WeightVector equal_weights() { return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}; }

std::array<double, 3> relative_spread_deltas(const CriterionSamples& samples) {
    check_samples(samples);
    std::array<double, 3> deltas{};
    const std::vector<double>* cols[3] = {&samples.g, &samples.p, &samples.s};
    for (int k = 0; k < 3; ++k) {
        const auto [lo, hi] = min_max(*cols[k]);
        if (hi <= 0.0) throw std::invalid_argument("method 1 requires positive criterion maxima");
        deltas[k] = 1.0 - lo / hi;
    }
    return deltas;
}

WeightVector relative_spread_weights(const CriterionSamples& samples) {
    const auto d = relative_spread_deltas(samples);
    const double total = d[0] + d[1] + d[2];
    if (total == 0.0) return equal_weights();
    return {d[0] / total, d[1] / total, d[2] / total};
}

std::array<double, 3> radius_constrained_maxima(const CriterionSamples& samples,
                                                const RadiusConfig& cfg, std::string* warning) {
    check_samples(samples);
    if (cfg.xi_g <= 0.0 || cfg.xi_p <= 0.0 || cfg.xi_s <= 0.0) {
        throw std::invalid_argument("radius thresholds must be positive");
    }
    const std::vector<double>* cols[3] = {&samples.g, &samples.p, &samples.s};
    const double xi[3] = {cfg.xi_g, cfg.xi_p, cfg.xi_s};
    const char* names[3] = {"g", "p", "s"};
    std::array<double, 3> rstar{};
    for (int k = 0; k < 3; ++k) {
        auto [lo, hi] = min_max(*cols[k]);
        (void)hi;
        if (lo <= 0.0) {
            if (warning) {
                *warning += std::string(warning->empty() ? "" : "; ") + "criterion " + names[k] +
                            " minimum clamped to 1e-6";
            }
            lo = kMinClamp;
        }
        // the minimum itself always qualifies, so rstar >= lo > 0
        double best = lo;
        for (double v : *cols[k]) {
            if (v > best && (v - lo) / lo <= xi[k]) best = v;
        }
        rstar[k] = best;
    }
    return rstar;
}

WeightVector radius_weights_from_radii(const std::array<double, 3>& rstar, RadiusVariant variant) {
    for (double r : rstar) {
        if (r <= 0.0) throw std::invalid_argument("radius values must be positive");
    }
    if (variant == RadiusVariant::direct) {
        const double total = rstar[0] + rstar[1] + rstar[2];
        return {rstar[0] / total, rstar[1] / total, rstar[2] / total};
    }
    const double inv[3] = {1.0 / rstar[0], 1.0 / rstar[1], 1.0 / rstar[2]};
    const double total = inv[0] + inv[1] + inv[2];
    return {inv[0] / total, inv[1] / total, inv[2] / total};
}

WeightVector radius_weights(const CriterionSamples& samples, const RadiusConfig& cfg,
                            std::string* warning) {
    return radius_weights_from_radii(radius_constrained_maxima(samples, cfg, warning),
                                     cfg.variant);
}

CriterionSamples collect_samples(const std::vector<ResultRecord>& records, const DataRange& range,
                                 SColumn s_column) {
    CriterionSamples out;
    for (const auto& r : records) {
        if (range.kind != DataRange::Kind::all_populations &&
            r.population_no != range.population_no) {
            continue;
        }
        if (range.kind == DataRange::Kind::per_query && r.query_no != range.query_no) continue;
        out.g.push_back(r.g);
        out.p.push_back(r.p);
        out.s.push_back(s_column == SColumn::raw ? r.s_raw : r.s);
    }
    if (out.g.empty()) throw std::invalid_argument("empty data range");
    return out;
}

WeightVector weights_for_range(const std::vector<ResultRecord>& records, const DataRange& range,
                               WeightMethod method, const RadiusConfig& cfg, SColumn s_column,
                               std::string* warning) {
    if (method == WeightMethod::equal) return equal_weights();
    const auto samples = collect_samples(records, range, s_column);
    if (method == WeightMethod::spread) return relative_spread_weights(samples);
    return radius_weights(samples, cfg, warning);
}

}  // namespace qga
