#pragma once

#include <string>
#include <vector>

#include "qga/corpus.hpp"
#include "qga/genetics.hpp"

namespace qga {

struct RankedResult {
    std::string doc_id;
    int position = 0;  // 1 = best
};

using ResultList = std::vector<RankedResult>;

// Executes one query against a document source. Implementations used in
// experiments must be deterministic and safe for concurrent calls on
// read-only shared state.
class SearchBackend {
public:
    virtual ~SearchBackend() = default;
    virtual ResultList execute(const QueryGenome& query, int max_results) const = 0;
};

// Built-in deterministic searcher: score = sum over query terms of
// tf(term, doc) * idf(term, corpus); zero-score docs excluded, sorted by
// score descending with ties broken by ascending doc id, truncated to
// max_results. Only literal query terms match; synonyms act through
// mutation, not retrieval.
class TfIdfSearcher : public SearchBackend {
public:
    explicit TfIdfSearcher(const Corpus& corpus);

    ResultList execute(const QueryGenome& query, int max_results) const override;

    const Corpus& corpus() const { return *corpus_; }

private:
    const Corpus* corpus_;
};

}  // namespace qga
