#include "qga/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace qga {

namespace {

std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_number(std::string field, std::size_t line_no, std::size_t col) {
    // tolerate comma decimal separators
    std::replace(field.begin(), field.end(), ',', '.');
    try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used != field.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("log line " + std::to_string(line_no) + ", column " +
                                 std::to_string(col) + ": bad number '" + field + "'");
    }
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == delim) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

WeightMethod parse_method(const std::string& s) {
    if (s == "equal") return WeightMethod::equal;
    if (s == "spread") return WeightMethod::spread;
    if (s == "radius") return WeightMethod::radius;
    throw std::invalid_argument("unknown weight method: " + s);
}

const char* method_name(WeightMethod m) {
    switch (m) {
        case WeightMethod::equal:
            return "equal";
        case WeightMethod::spread:
            return "spread";
        case WeightMethod::radius:
            return "radius";
    }
    return "equal";
}

}  // namespace

void ExperimentConfig::validate() const {
    if (queries_per_population < 2) throw std::invalid_argument("queries_per_population must be >= 2");
    if (terms_per_query < 1) throw std::invalid_argument("terms_per_query must be >= 1");
    if (max_results < 1) throw std::invalid_argument("max_results must be >= 1");
    if (mutation_probability < 0.0 || mutation_probability > 1.0) {
        throw std::invalid_argument("mutation_probability must be in [0,1]");
    }
    if (generations < 1) throw std::invalid_argument("generations must be >= 1");
    if (crossover_points != 0 && crossover_points != 1 && crossover_points != 2) {
        throw std::invalid_argument("crossover_points must be 1, 2 or random");
    }
    if (stop_window < 1) throw std::invalid_argument("stop_window must be >= 1");
    if (stop_epsilon < 0.0) throw std::invalid_argument("stop_epsilon must be >= 0");
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string();
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "pattern_file") cfg.pattern_file = value;
            else if (key == "corpus_file") cfg.corpus_file = value;
            else if (key == "stopwords_file") cfg.stopwords_file = value;
            else if (key == "queries_per_population") cfg.queries_per_population = std::stoi(value);
            else if (key == "terms_per_query") cfg.terms_per_query = std::stoi(value);
            else if (key == "max_results") cfg.max_results = std::stoi(value);
            else if (key == "mutation_probability") cfg.mutation_probability = std::stod(value);
            else if (key == "generations") cfg.generations = std::stoi(value);
            else if (key == "seed") cfg.seed = std::stoull(value);
            else if (key == "stop_enabled") cfg.stop_enabled = (value == "true" || value == "1");
            else if (key == "stop_epsilon") cfg.stop_epsilon = std::stod(value);
            else if (key == "stop_window") cfg.stop_window = std::stoi(value);
            else if (key == "crossover_points") cfg.crossover_points = value == "random" ? 0 : std::stoi(value);
            else if (key == "xi_g") cfg.radius.xi_g = std::stod(value);
            else if (key == "xi_p") cfg.radius.xi_p = std::stod(value);
            else if (key == "xi_s") cfg.radius.xi_s = std::stod(value);
            else if (key == "radius_variant")
                cfg.radius.variant = value == "inverse" ? RadiusVariant::inverse : RadiusVariant::direct;
            else if (key == "s_column")
                cfg.s_column = value == "normalized" ? SColumn::normalized : SColumn::raw;
            else if (key == "selection_weights") cfg.selection_weights = parse_method(value);
            else throw std::runtime_error("unknown key: " + key);
        } catch (const std::runtime_error&) {
            throw;
        } catch (const std::exception&) {
            throw std::runtime_error("config line " + std::to_string(line_no) + ": bad value for " + key);
        }
    }
    return cfg;
}

CurveMode parse_curve_mode(const std::string& text) {
    if (text == "per-query") return CurveMode::per_query;
    if (text == "per-population") return CurveMode::per_population;
    if (text == "all-populations") return CurveMode::all_populations;
    throw std::invalid_argument("unknown curve mode: " + text);
}

namespace {

struct Evaluation {
    std::vector<ResultRecord> records;  // grouped by query, rank order
    std::vector<double> query_fitness;  // one per genome; no results -> 0
    double fitness = 0.0;
};

// Execute each genome, score every (query, result) pair, normalize over the
// whole scope. Two-phase: gather raw, then normalize.
Evaluation evaluate_genomes(const std::vector<QueryGenome>& genomes, const SearchBackend& backend,
                            const Corpus& corpus,
                            const std::unordered_map<std::string, std::size_t>& doc_index,
                            const std::vector<std::string>& pattern_terms, int population_no,
                            int max_results, const WeightVector& selection_w) {
    Evaluation ev;
    std::vector<ResultList> lists;
    lists.reserve(genomes.size());
    for (const auto& g : genomes) lists.push_back(backend.execute(g, max_results));

    NormalizationContext ctx;
    bool first = true;
    struct Raw {
        double g_raw, p_raw, s_raw;
    };
    std::vector<std::vector<Raw>> raw(lists.size());
    for (std::size_t q = 0; q < lists.size(); ++q) {
        if (lists[q].empty()) continue;
        // term sets of this query's result texts; idf scope for the cosine criterion
        std::vector<std::unordered_set<std::string>> sets;
        sets.reserve(lists[q].size());
        for (const auto& r : lists[q]) sets.push_back(corpus.term_set(doc_index.at(r.doc_id)));
        const TermVector pat_vec = pattern_vector(pattern_terms, sets);
        raw[q].reserve(lists[q].size());
        for (std::size_t i = 0; i < lists[q].size(); ++i) {
            const auto& r = lists[q][i];
            Raw row;
            row.g_raw = rank_raw(r.doc_id, lists);
            row.p_raw = universality_raw(r.doc_id, lists);
            row.s_raw = semantic_similarity(
                result_vector(corpus.tokens(doc_index.at(r.doc_id)), sets), pat_vec);
            if (first) {
                ctx = {row.g_raw, row.g_raw, row.p_raw, row.p_raw};
                first = false;
            } else {
                ctx.g_min = std::min(ctx.g_min, row.g_raw);
                ctx.g_max = std::max(ctx.g_max, row.g_raw);
                ctx.p_min = std::min(ctx.p_min, row.p_raw);
                ctx.p_max = std::max(ctx.p_max, row.p_raw);
            }
            raw[q].push_back(row);
        }
    }
    double s_min = 0.0, s_max = 0.0;
    bool s_first = true;
    for (const auto& rows : raw) {
        for (const auto& row : rows) {
            if (s_first) {
                s_min = s_max = row.s_raw;
                s_first = false;
            } else {
                s_min = std::min(s_min, row.s_raw);
                s_max = std::max(s_max, row.s_raw);
            }
        }
    }

    ev.query_fitness.resize(genomes.size(), 0.0);
    for (std::size_t q = 0; q < lists.size(); ++q) {
        std::vector<ResultRecord> query_records;
        for (std::size_t i = 0; i < raw[q].size(); ++i) {
            ResultRecord rec;
            rec.population_no = population_no;
            rec.query_no = static_cast<int>(q);
            rec.doc_id = lists[q][i].doc_id;
            rec.g_raw = raw[q][i].g_raw;
            rec.p_raw = raw[q][i].p_raw;
            rec.s_raw = raw[q][i].s_raw;
            rec.g = normalize_rank(rec.g_raw, ctx);
            rec.p = normalize_universality(rec.p_raw, ctx);
            rec.s = s_min == s_max ? 0.5 : (rec.s_raw - s_min) / (s_max - s_min);
            query_records.push_back(rec);
        }
        if (!query_records.empty()) {
            ev.query_fitness[q] = query_fitness(query_records, selection_w);
        }
        ev.records.insert(ev.records.end(), query_records.begin(), query_records.end());
    }
    ev.fitness = population_fitness(ev.query_fitness);
    return ev;
}

WeightVector selection_weights_for(const ExperimentConfig& cfg,
                                   const std::vector<ResultRecord>& records) {
    if (cfg.selection_weights == WeightMethod::equal || records.empty()) return equal_weights();
    return weights_for_range(records, DataRange::all(), cfg.selection_weights, cfg.radius,
                             cfg.s_column);
}

}  // namespace

ResultLog run_experiment(const ExperimentConfig& cfg, const SearchPattern& pattern,
                         const Corpus& corpus) {
    cfg.validate();
    if (corpus.empty()) throw std::invalid_argument("empty corpus");
    if (pattern.size() < static_cast<std::size_t>(cfg.terms_per_query)) {
        throw std::invalid_argument("pattern smaller than M");
    }

    TfIdfSearcher backend(corpus);
    std::unordered_map<std::string, std::size_t> doc_index;
    for (std::size_t i = 0; i < corpus.size(); ++i) doc_index[corpus.doc(i).id] = i;
    const std::vector<std::string> pattern_terms = pattern.terms();

    Rng rng(cfg.seed);
    Population pop = init_population(pattern, cfg.queries_per_population, cfg.terms_per_query, rng);

    ResultLog log;
    log.seed = cfg.seed;
    log.config_echo = {{"queries_per_population", std::to_string(cfg.queries_per_population)},
                       {"terms_per_query", std::to_string(cfg.terms_per_query)},
                       {"max_results", std::to_string(cfg.max_results)},
                       {"mutation_probability", fmt(cfg.mutation_probability)},
                       {"generations", std::to_string(cfg.generations)},
                       {"seed", std::to_string(cfg.seed)},
                       {"selection_weights", method_name(cfg.selection_weights)}};

    std::vector<double> history;
    for (int gen = 0; gen < cfg.generations; ++gen) {
        const WeightVector sel_w =
            cfg.selection_weights == WeightMethod::equal || log.records.empty()
                ? equal_weights()
                : selection_weights_for(cfg, log.records);
        Evaluation ev = evaluate_genomes(pop.members, backend, corpus, doc_index, pattern_terms,
                                         gen, cfg.max_results, equal_weights());
        log.records.insert(log.records.end(), ev.records.begin(), ev.records.end());
        PopulationSummary summary;
        summary.population_no = gen;
        summary.query_fitness = ev.query_fitness;
        summary.fitness = ev.fitness;
        log.summaries.push_back(std::move(summary));
        std::vector<std::vector<std::string>> audit;
        for (const auto& g : pop.members) audit.push_back(g.terms());
        log.genome_terms.push_back(std::move(audit));
        history.push_back(ev.fitness);

        if (gen + 1 == cfg.generations) break;
        if (cfg.stop_enabled && is_stable(history, cfg.stop_epsilon, cfg.stop_window)) break;

        const auto pairs = select_outbred_pairs(pop);
        std::vector<QueryGenome> offspring;
        for (const auto& [i, j] : pairs) {
            const int points =
                cfg.crossover_points != 0 ? cfg.crossover_points : 1 + static_cast<int>(rng.index(2));
            auto [o1, o2] = crossover(pop.members[i], pop.members[j], points, rng, &pattern);
            offspring.push_back(mutate(o1, cfg.mutation_probability, rng));
            offspring.push_back(mutate(o2, cfg.mutation_probability, rng));
        }
        // shared normalization scope for the whole selection pool
        std::vector<QueryGenome> pool = pop.members;
        pool.insert(pool.end(), offspring.begin(), offspring.end());
        Evaluation pool_ev = evaluate_genomes(pool, backend, corpus, doc_index, pattern_terms, gen,
                                              cfg.max_results, sel_w);
        std::vector<double> parent_fit(pool_ev.query_fitness.begin(),
                                       pool_ev.query_fitness.begin() + pop.size());
        std::vector<double> offspring_fit(pool_ev.query_fitness.begin() + pop.size(),
                                          pool_ev.query_fitness.end());
        pop = elitist_select(pop, parent_fit, offspring, offspring_fit, cfg.queries_per_population);
    }
    return log;
}

ResultLog run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    StopwordSet stopwords;
    if (!cfg.stopwords_file.empty()) stopwords = load_stopwords(cfg.stopwords_file);
    const SearchPattern pattern = SearchPattern::load(cfg.pattern_file);
    const Corpus corpus = Corpus::load(cfg.corpus_file, stopwords);
    return run_experiment(cfg, pattern, corpus);
}

namespace {

// records of one population grouped by query, in order of appearance
std::vector<std::vector<const ResultRecord*>> group_queries(
    const std::vector<const ResultRecord*>& pop_records) {
    std::vector<std::vector<const ResultRecord*>> queries;
    std::unordered_map<int, std::size_t> index;
    for (const auto* r : pop_records) {
        auto it = index.find(r->query_no);
        if (it == index.end()) {
            index[r->query_no] = queries.size();
            queries.push_back({r});
        } else {
            queries[it->second].push_back(r);
        }
    }
    return queries;
}

double population_value(const std::vector<std::vector<const ResultRecord*>>& queries,
                        const WeightVector& w) {
    std::vector<double> per_query;
    for (const auto& q : queries) {
        double sum = 0.0;
        for (const auto* r : q) sum += result_fitness(r->g, r->p, r->s_raw, w);
        per_query.push_back(sum / static_cast<double>(q.size()));
    }
    return population_fitness(per_query);
}

// per-query mode: each query's fitness under weights from its own rows
double population_value_per_query(const std::vector<std::vector<const ResultRecord*>>& queries,
                                  int population_no, const std::vector<ResultRecord>& all,
                                  WeightMethod method, const RadiusConfig& radius_cfg,
                                  SColumn s_column) {
    std::vector<double> per_query;
    for (const auto& q : queries) {
        const WeightVector w = weights_for_range(
            all, DataRange::query(population_no, q.front()->query_no), method, radius_cfg,
            s_column);
        double sum = 0.0;
        for (const auto* r : q) sum += result_fitness(r->g, r->p, r->s_raw, w);
        per_query.push_back(sum / static_cast<double>(q.size()));
    }
    return population_fitness(per_query);
}

}  // namespace

std::vector<CurvePoint> compute_curves(const ResultLog& log, const RadiusConfig& radius_cfg,
                                       CurveMode mode, SColumn s_column) {
    if (log.records.empty()) throw std::invalid_argument("empty log");

    std::vector<int> pop_order;
    std::unordered_map<int, std::vector<const ResultRecord*>> by_pop;
    for (const auto& r : log.records) {
        if (!by_pop.count(r.population_no)) pop_order.push_back(r.population_no);
        by_pop[r.population_no].push_back(&r);
    }

    WeightVector global_dis, global_rad;
    if (mode == CurveMode::all_populations) {
        global_dis = weights_for_range(log.records, DataRange::all(), WeightMethod::spread,
                                       radius_cfg, s_column);
        global_rad = weights_for_range(log.records, DataRange::all(), WeightMethod::radius,
                                       radius_cfg, s_column);
    }

    std::vector<CurvePoint> curves;
    for (int pop_no : pop_order) {
        const auto queries = group_queries(by_pop[pop_no]);
        CurvePoint pt;
        pt.population_no = pop_no;
        pt.w_equ = population_value(queries, equal_weights());
        switch (mode) {
            case CurveMode::all_populations:
                pt.w_dis = population_value(queries, global_dis);
                pt.w_rad = population_value(queries, global_rad);
                break;
            case CurveMode::per_population: {
                const auto range = DataRange::population(pop_no);
                pt.w_dis = population_value(
                    queries, weights_for_range(log.records, range, WeightMethod::spread,
                                               radius_cfg, s_column));
                pt.w_rad = population_value(
                    queries, weights_for_range(log.records, range, WeightMethod::radius,
                                               radius_cfg, s_column));
                break;
            }
            case CurveMode::per_query:
                pt.w_dis = population_value_per_query(queries, pop_no, log.records,
                                                      WeightMethod::spread, radius_cfg, s_column);
                pt.w_rad = population_value_per_query(queries, pop_no, log.records,
                                                      WeightMethod::radius, radius_cfg, s_column);
                break;
        }
        curves.push_back(pt);
    }
    return curves;
}

void write_log(const ResultLog& log, std::ostream& out) {
    out << "population_no,query_no,doc_id,g_raw,g,p_raw,p,s_raw,s\n";
    for (const auto& r : log.records) {
        out << r.population_no << ',' << r.query_no << ',' << r.doc_id << ',' << fmt(r.g_raw)
            << ',' << fmt(r.g) << ',' << fmt(r.p_raw) << ',' << fmt(r.p) << ',' << fmt(r.s_raw)
            << ',' << fmt(r.s) << '\n';
    }
}

void write_log(const ResultLog& log, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write log file: " + path);
    write_log(log, out);
}

std::string log_to_string(const ResultLog& log) {
    std::ostringstream out;
    write_log(log, out);
    return out.str();
}

ResultLog read_log(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("log file is empty");
    if (!header.empty() && header.back() == '\r') header.pop_back();
    char delim = ',';
    if (header.find(';') != std::string::npos) delim = ';';
    else if (header.find('\t') != std::string::npos) delim = '\t';

    ResultLog log;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split(line, delim);
        if (fields.size() != 9) {
            throw std::runtime_error("log line " + std::to_string(line_no) + ": expected 9 columns, got " +
                                     std::to_string(fields.size()));
        }
        ResultRecord r;
        r.population_no = static_cast<int>(parse_number(fields[0], line_no, 1));
        r.query_no = static_cast<int>(parse_number(fields[1], line_no, 2));
        r.doc_id = fields[2];
        r.g_raw = parse_number(fields[3], line_no, 4);
        r.g = parse_number(fields[4], line_no, 5);
        r.p_raw = parse_number(fields[5], line_no, 6);
        r.p = parse_number(fields[6], line_no, 7);
        r.s_raw = parse_number(fields[7], line_no, 8);
        r.s = parse_number(fields[8], line_no, 9);
        log.records.push_back(std::move(r));
    }
    return log;
}

ResultLog read_log_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open log file: " + path);
    return read_log(in);
}

void write_curves(const std::vector<CurvePoint>& curves, std::ostream& out) {
    out << "population_no,W_equ,W_dis,W_rad\n";
    for (const auto& c : curves) {
        out << c.population_no << ',' << fmt(c.w_equ) << ',' << fmt(c.w_dis) << ','
            << fmt(c.w_rad) << '\n';
    }
}

std::string curves_to_string(const std::vector<CurvePoint>& curves) {
    std::ostringstream out;
    write_curves(curves, out);
    return out.str();
}

std::string weight_report_header() {
    return "method,variant,range,w_g,w_p,w_s,xi_g,xi_p,xi_s";
}

std::string weight_report_row(WeightMethod method, const RadiusConfig& cfg,
                              const DataRange& range, const WeightVector& w) {
    const std::string variant =
        method == WeightMethod::radius
            ? (cfg.variant == RadiusVariant::direct ? "direct" : "inverse")
            : "-";
    std::ostringstream out;
    out << method_name(method) << ',' << variant << ',' << range.to_string() << ',' << fmt(w.w_g)
        << ',' << fmt(w.w_p) << ',' << fmt(w.w_s) << ',' << fmt(cfg.xi_g) << ',' << fmt(cfg.xi_p)
        << ',' << fmt(cfg.xi_s);
    return out.str();
}

}  // namespace qga
