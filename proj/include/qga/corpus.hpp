#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace qga {

// Sparse term-weight vector. std::map keeps term order deterministic.
using TermVector = std::map<std::string, double>;

using StopwordSet = std::unordered_set<std::string>;
using LemmaTable = std::unordered_map<std::string, std::string>;

struct Document {
    std::string id;
    std::string title;
    std::string snippet;

    // Title and snippet joined by a single space.
    std::string text() const;
};

// Lowercases, strips punctuation, applies the optional term -> lemma table,
// drops stopwords. Understands UTF-8 Cyrillic letters in addition to ASCII.
std::vector<std::string> tokenize(const std::string& text,
                                  const StopwordSet& stopwords = {},
                                  const LemmaTable* lemmas = nullptr);

// Immutable document collection with a document-frequency index.
class Corpus {
public:
    static Corpus build(std::vector<Document> docs,
                        const StopwordSet& stopwords = {},
                        const LemmaTable* lemmas = nullptr);

    // One document per line: id<TAB>title<TAB>snippet, UTF-8.
    static Corpus load(const std::string& path,
                       const StopwordSet& stopwords = {},
                       const LemmaTable* lemmas = nullptr);

    std::size_t size() const { return docs_.size(); }
    bool empty() const { return docs_.empty(); }

    const std::vector<Document>& documents() const { return docs_; }
    const Document& doc(std::size_t i) const { return docs_[i]; }
    const std::vector<std::string>& tokens(std::size_t i) const { return tokens_[i]; }
    const std::unordered_set<std::string>& term_set(std::size_t i) const { return term_sets_[i]; }

    // Number of documents containing the term; 0 if unseen.
    std::size_t doc_frequency(const std::string& term) const;

private:
    std::vector<Document> docs_;
    std::vector<std::vector<std::string>> tokens_;
    std::vector<std::unordered_set<std::string>> term_sets_;
    std::unordered_map<std::string, std::size_t> df_;
};

// One term per line.
StopwordSet load_stopwords(const std::string& path);

// idf over a result set: log((R+1)/R^n), natural log. R^n = number of result
// texts containing the term; R^n = 0 yields log(R+1). Throws if R = 0.
double idf(const std::string& term,
           const std::vector<std::unordered_set<std::string>>& result_term_sets);

// TF-IDF vector of one result text over its result set. Empty token list
// yields an empty vector.
TermVector result_vector(const std::vector<std::string>& doc_tokens,
                         const std::vector<std::unordered_set<std::string>>& result_term_sets);

// Weighted vector of the search pattern terms over a result set: each entry
// (1/|K|) * idf. Throws on an empty pattern.
TermVector pattern_vector(const std::vector<std::string>& pattern_terms,
                          const std::vector<std::unordered_set<std::string>>& result_term_sets);

}  // namespace qga
