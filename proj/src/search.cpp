#include "qga/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qga {

TfIdfSearcher::TfIdfSearcher(const Corpus& corpus) : corpus_(&corpus) {
    if (corpus.empty()) throw std::invalid_argument("search backend requires a non-empty corpus");
}

ResultList TfIdfSearcher::execute(const QueryGenome& query, int max_results) const {
    if (max_results < 1) throw std::invalid_argument("max_results must be >= 1");
    const auto n_docs = static_cast<double>(corpus_->size());

    struct Scored {
        std::size_t doc;
        double score;
    };
    std::vector<Scored> hits;
    for (std::size_t d = 0; d < corpus_->size(); ++d) {
        double score = 0.0;
        const auto& tokens = corpus_->tokens(d);
        for (const auto& gene : query.genes) {
            const std::size_t df = corpus_->doc_frequency(gene.term);
            if (df == 0) continue;
            const auto tf = static_cast<double>(
                std::count(tokens.begin(), tokens.end(), gene.term));
            if (tf > 0.0) score += tf * std::log((n_docs + 1.0) / static_cast<double>(df));
        }
        if (score > 0.0) hits.push_back({d, score});
    }
    std::sort(hits.begin(), hits.end(), [&](const Scored& a, const Scored& b) {
        if (a.score != b.score) return a.score > b.score;
        return corpus_->doc(a.doc).id < corpus_->doc(b.doc).id;
    });
    if (hits.size() > static_cast<std::size_t>(max_results)) {
        hits.resize(static_cast<std::size_t>(max_results));
    }
    ResultList out;
    out.reserve(hits.size());
    for (std::size_t i = 0; i < hits.size(); ++i) {
        out.push_back({corpus_->doc(hits[i].doc).id, static_cast<int>(i) + 1});
    }
    return out;
}

}  // namespace qga
