#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qga/experiment.hpp"

namespace {

int data_error(const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
}

qga::WeightMethod parse_method_flag(const std::string& s) {
    if (s == "equal") return qga::WeightMethod::equal;
    if (s == "spread") return qga::WeightMethod::spread;
    if (s == "radius") return qga::WeightMethod::radius;
    throw CLI::ValidationError("--method", "must be equal, spread or radius");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"evolutionary search-query optimizer"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run a GA experiment from a config file");
    std::string run_config, run_log = "log.csv", run_curves, run_report, run_mode = "per-population";
    bool run_seed_set = false;
    std::uint64_t run_seed = 0;
    run->add_option("--config", run_config, "config file (key = value lines)")->required();
    run->add_option("--seed", run_seed, "override the config seed")->each([&](const std::string&) {
        run_seed_set = true;
    });
    run->add_option("--log", run_log, "output log CSV path");
    run->add_option("--curves", run_curves, "also write fitness curves to this path");
    run->add_option("--weights-report", run_report, "also write a weight report to this path");
    run->add_option("--mode", run_mode, "curve mode: per-query|per-population|all-populations");

    // weights
    auto* weights = app.add_subcommand("weights", "compute weight coefficients from a log");
    std::string w_log, w_method = "spread", w_range = "all", w_variant = "direct", w_scol = "raw";
    double w_xi_g = 0.33, w_xi_p = 0.33, w_xi_s = 0.34;
    weights->add_option("--log", w_log, "log CSV file")->required();
    weights->add_option("--method", w_method, "equal|spread|radius");
    weights->add_option("--range", w_range, "all | population:<n> | query:<pop>:<q>");
    weights->add_option("--variant", w_variant, "radius variant: direct|inverse");
    weights->add_option("--xi-g", w_xi_g, "radius threshold for g");
    weights->add_option("--xi-p", w_xi_p, "radius threshold for p");
    weights->add_option("--xi-s", w_xi_s, "radius threshold for s");
    weights->add_option("--s-column", w_scol, "s column: raw|normalized");

    // curves
    auto* curves = app.add_subcommand("curves", "compute fitness curves from a log");
    std::string c_log, c_mode = "per-population", c_out, c_variant = "direct", c_scol = "raw";
    double c_xi_g = 0.33, c_xi_p = 0.33, c_xi_s = 0.34;
    curves->add_option("--log", c_log, "log CSV file")->required();
    curves->add_option("--mode", c_mode, "per-query|per-population|all-populations");
    curves->add_option("--out", c_out, "output path (default: stdout)");
    curves->add_option("--variant", c_variant, "radius variant: direct|inverse");
    curves->add_option("--xi-g", c_xi_g, "radius threshold for g");
    curves->add_option("--xi-p", c_xi_p, "radius threshold for p");
    curves->add_option("--xi-s", c_xi_s, "radius threshold for s");
    curves->add_option("--s-column", c_scol, "s column fed to the weight methods");

    // search
    auto* search = app.add_subcommand("search", "run one query against a corpus (debug)");
    std::string s_corpus, s_query, s_stopwords;
    int s_max = 20;
    search->add_option("--corpus", s_corpus, "corpus TSV file")->required();
    search->add_option("--query", s_query, "query terms, whitespace separated")->required();
    search->add_option("--stopwords", s_stopwords, "stopword file");
    search->add_option("--max-results", s_max, "result cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        app.exit(e);
        return 1;
    }

    try {
        if (*run) {
            qga::ExperimentConfig cfg = qga::ExperimentConfig::load(run_config);
            if (run_seed_set) cfg.seed = run_seed;
            const qga::ResultLog log = qga::run_experiment(cfg);
            qga::write_log(log, run_log);
            if (!run_curves.empty()) {
                const auto pts =
                    qga::compute_curves(log, cfg.radius, qga::parse_curve_mode(run_mode), cfg.s_column);
                write_file(run_curves, qga::curves_to_string(pts));
            }
            if (!run_report.empty()) {
                std::string report = qga::weight_report_header() + "\n";
                const auto range = qga::DataRange::all();
                for (auto method : {qga::WeightMethod::equal, qga::WeightMethod::spread,
                                    qga::WeightMethod::radius}) {
                    const auto w = qga::weights_for_range(log.records, range, method, cfg.radius,
                                                          cfg.s_column);
                    report += qga::weight_report_row(method, cfg.radius, range, w) + "\n";
                }
                write_file(run_report, report);
            }
        } else if (*weights) {
            const qga::ResultLog log = qga::read_log_file(w_log);
            qga::RadiusConfig cfg{w_xi_g, w_xi_p, w_xi_s,
                                  w_variant == "inverse" ? qga::RadiusVariant::inverse
                                                         : qga::RadiusVariant::direct};
            const auto range = qga::DataRange::parse(w_range);
            const auto scol =
                w_scol == "normalized" ? qga::SColumn::normalized : qga::SColumn::raw;
            std::string warning;
            const auto w = qga::weights_for_range(log.records, range, parse_method_flag(w_method),
                                                  cfg, scol, &warning);
            if (!warning.empty()) std::cerr << "warning: " << warning << "\n";
            std::cout << qga::weight_report_header() << "\n"
                      << qga::weight_report_row(parse_method_flag(w_method), cfg, range, w) << "\n";
        } else if (*curves) {
            const qga::ResultLog log = qga::read_log_file(c_log);
            qga::RadiusConfig cfg{c_xi_g, c_xi_p, c_xi_s,
                                  c_variant == "inverse" ? qga::RadiusVariant::inverse
                                                         : qga::RadiusVariant::direct};
            const auto scol =
                c_scol == "normalized" ? qga::SColumn::normalized : qga::SColumn::raw;
            const auto pts = qga::compute_curves(log, cfg, qga::parse_curve_mode(c_mode), scol);
            if (c_out.empty()) {
                qga::write_curves(pts, std::cout);
            } else {
                write_file(c_out, qga::curves_to_string(pts));
            }
        } else if (*search) {
            qga::StopwordSet stopwords;
            if (!s_stopwords.empty()) stopwords = qga::load_stopwords(s_stopwords);
            const qga::Corpus corpus = qga::Corpus::load(s_corpus, stopwords);
            const qga::TfIdfSearcher backend(corpus);
            qga::QueryGenome query;
            for (const auto& term : qga::tokenize(s_query)) {
                query.genes.push_back({term, 1.0, {}});
            }
            for (const auto& r : backend.execute(query, s_max)) {
                std::cout << r.position << '\t' << r.doc_id << '\n';
            }
        }
    } catch (const std::exception& e) {
        return data_error(e);
    }
    return 0;
}
