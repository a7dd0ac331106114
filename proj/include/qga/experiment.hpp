#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qga/corpus.hpp"
#include "qga/fitness.hpp"
#include "qga/genetics.hpp"
#include "qga/search.hpp"
#include "qga/weights.hpp"

namespace qga {

struct ExperimentConfig {
    std::string pattern_file;
    std::string corpus_file;
    std::string stopwords_file;

    int queries_per_population = 5;   // N
    int terms_per_query = 8;          // M
    int max_results = 20;             // R_q
    double mutation_probability = 0.1;
    int generations = 200;            // N_Q
    std::uint64_t seed = 0;

    bool stop_enabled = false;
    double stop_epsilon = 1e-3;
    int stop_window = 5;

    int crossover_points = 0;  // 1, 2, or 0 = uniformly random per mating

    RadiusConfig radius;
    SColumn s_column = SColumn::raw;

    // equal | spread | radius; weights used by selection during evolution
    WeightMethod selection_weights = WeightMethod::equal;

    void validate() const;

    // Flat `key = value` lines, `#` comments.
    static ExperimentConfig load(const std::string& path);
};

// Engine-reported fitness of one logged population, equal weights.
struct PopulationSummary {
    int population_no = 0;
    std::vector<double> query_fitness;
    double fitness = 0.0;
};

struct ResultLog {
    std::vector<ResultRecord> records;
    std::vector<PopulationSummary> summaries;
    // genome audit trail: per generation, per member, the ordered term list
    std::vector<std::vector<std::vector<std::string>>> genome_terms;
    std::map<std::string, std::string> config_echo;
    std::uint64_t seed = 0;
};

struct CurvePoint {
    int population_no = 0;
    double w_equ = 0.0;
    double w_dis = 0.0;
    double w_rad = 0.0;
};

enum class CurveMode { per_query, per_population, all_populations };

CurveMode parse_curve_mode(const std::string& text);

// Full GA run: evaluate, log, breed, select, for `generations` populations
// (or until stability when enabled). Replayable from the seed.
ResultLog run_experiment(const ExperimentConfig& cfg, const SearchPattern& pattern,
                         const Corpus& corpus);

// Loads pattern/corpus/stopwords from the files named in the config.
ResultLog run_experiment(const ExperimentConfig& cfg);

// Per population: W_equ / W_dis / W_rad, the fitness under equal, method-1
// and method-2 weights computed over the range the mode designates.
std::vector<CurvePoint> compute_curves(const ResultLog& log, const RadiusConfig& radius_cfg,
                                       CurveMode mode = CurveMode::per_population,
                                       SColumn s_column = SColumn::raw);

// Log CSV: population_no,query_no,doc_id,g_raw,g,p_raw,p,s_raw,s
void write_log(const ResultLog& log, std::ostream& out);
void write_log(const ResultLog& log, const std::string& path);
std::string log_to_string(const ResultLog& log);

// Accepts ',', ';' or tab delimiters and tolerates comma decimal separators
// with non-comma delimiters. Malformed rows raise errors naming line and
// column.
ResultLog read_log(std::istream& in);
ResultLog read_log_file(const std::string& path);

void write_curves(const std::vector<CurvePoint>& curves, std::ostream& out);
std::string curves_to_string(const std::vector<CurvePoint>& curves);

// One row: method,variant,range,w_g,w_p,w_s,xi_g,xi_p,xi_s
std::string weight_report_row(WeightMethod method, const RadiusConfig& cfg,
                              const DataRange& range, const WeightVector& w);
std::string weight_report_header();

}  // namespace qga
