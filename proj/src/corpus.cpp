#include "qga/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qga {

std::string Document::text() const {
    if (title.empty()) return snippet;
    if (snippet.empty()) return title;
    return title + " " + snippet;
}

namespace {

// Decode one UTF-8 codepoint starting at i; advances i. Invalid bytes are
// returned as-is (treated as separators downstream).
std::uint32_t decode_utf8(const std::string& s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int extra = 0;
    std::uint32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        extra = 1;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        extra = 2;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        extra = 3;
        cp = b0 & 0x07;
    } else {
        ++i;
        return b0;
    }
    if (i + extra >= s.size()) {
        ++i;
        return b0;
    }
    for (int k = 1; k <= extra; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return b0;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    i += extra + 1;
    return cp;
}

void encode_utf8(std::uint32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_token_char(std::uint32_t cp) {
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9')) {
        return true;
    }
    // Cyrillic А-я plus Ё/ё
    if (cp >= 0x0410 && cp <= 0x044F) return true;
    if (cp == 0x0401 || cp == 0x0451) return true;
    return false;
}

std::uint32_t lower(std::uint32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;  // А-Я -> а-я
    if (cp == 0x0401) return 0x0451;                     // Ё -> ё
    return cp;
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text,
                                  const StopwordSet& stopwords,
                                  const LemmaTable* lemmas) {
    std::vector<std::string> out;
    std::string cur;
    std::size_t i = 0;
    auto flush = [&] {
        if (cur.empty()) return;
        if (lemmas) {
            const auto it = lemmas->find(cur);
            if (it != lemmas->end()) cur = it->second;
        }
        if (!stopwords.count(cur)) out.push_back(cur);
        cur.clear();
    };
    while (i < text.size()) {
        const std::uint32_t cp = decode_utf8(text, i);
        if (is_token_char(cp)) {
            encode_utf8(lower(cp), cur);
        } else {
            flush();
        }
    }
    flush();
    return out;
}

Corpus Corpus::build(std::vector<Document> docs,
                     const StopwordSet& stopwords,
                     const LemmaTable* lemmas) {
    Corpus c;
    std::unordered_set<std::string> seen_ids;
    for (const auto& d : docs) {
        if (!seen_ids.insert(d.id).second) {
            throw std::invalid_argument("duplicate document id: " + d.id);
        }
        if (d.title.empty() && d.snippet.empty()) {
            throw std::invalid_argument("document has empty title and snippet: " + d.id);
        }
    }
    c.docs_ = std::move(docs);
    c.tokens_.reserve(c.docs_.size());
    c.term_sets_.reserve(c.docs_.size());
    for (const auto& d : c.docs_) {
        auto toks = tokenize(d.text(), stopwords, lemmas);
        std::unordered_set<std::string> set(toks.begin(), toks.end());
        for (const auto& t : set) ++c.df_[t];
        c.tokens_.push_back(std::move(toks));
        c.term_sets_.push_back(std::move(set));
    }
    return c;
}

Corpus Corpus::load(const std::string& path,
                    const StopwordSet& stopwords,
                    const LemmaTable* lemmas) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path);
    std::vector<Document> docs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto t1 = line.find('\t');
        if (t1 == std::string::npos) {
            throw std::runtime_error("corpus line " + std::to_string(line_no) +
                                     ": expected id<TAB>title<TAB>snippet");
        }
        const auto t2 = line.find('\t', t1 + 1);
        Document d;
        d.id = line.substr(0, t1);
        if (t2 == std::string::npos) {
            d.title = line.substr(t1 + 1);
        } else {
            d.title = line.substr(t1 + 1, t2 - t1 - 1);
            d.snippet = line.substr(t2 + 1);
        }
        docs.push_back(std::move(d));
    }
    return build(std::move(docs), stopwords, lemmas);
}

std::size_t Corpus::doc_frequency(const std::string& term) const {
    const auto it = df_.find(term);
    return it == df_.end() ? 0 : it->second;
}

StopwordSet load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stopword file: " + path);
    StopwordSet set;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) set.insert(line);
    }
    return set;
}

double idf(const std::string& term,
           const std::vector<std::unordered_set<std::string>>& result_term_sets) {
    const std::size_t r = result_term_sets.size();
    if (r == 0) throw std::invalid_argument("idf requires at least one result");
    std::size_t rn = 0;
    for (const auto& set : result_term_sets) {
        if (set.count(term)) ++rn;
    }
    if (rn == 0) return std::log(static_cast<double>(r + 1));
    return std::log(static_cast<double>(r + 1) / static_cast<double>(rn));
}

TermVector result_vector(const std::vector<std::string>& doc_tokens,
                         const std::vector<std::unordered_set<std::string>>& result_term_sets) {
    TermVector v;
    std::map<std::string, std::size_t> tf;
    for (const auto& t : doc_tokens) ++tf[t];
    for (const auto& [term, count] : tf) {
        const double w = static_cast<double>(count) * idf(term, result_term_sets);
        if (w != 0.0) v[term] = w;
    }
    return v;
}

TermVector pattern_vector(const std::vector<std::string>& pattern_terms,
                          const std::vector<std::unordered_set<std::string>>& result_term_sets) {
    if (pattern_terms.empty()) throw std::invalid_argument("empty search pattern");
    TermVector v;
    const double inv_k = 1.0 / static_cast<double>(pattern_terms.size());
    for (const auto& term : pattern_terms) {
        const double w = inv_k * idf(term, result_term_sets);
        if (w != 0.0) v[term] = w;
    }
    return v;
}

}  // namespace qga
