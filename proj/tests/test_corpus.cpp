#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "qga/corpus.hpp"

using namespace qga;

namespace {

std::vector<std::unordered_set<std::string>> term_sets(
    const std::vector<std::vector<std::string>>& texts) {
    std::vector<std::unordered_set<std::string>> out;
    for (const auto& t : texts) out.emplace_back(t.begin(), t.end());
    return out;
}

std::string join(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += " ";
        out += t;
    }
    return out;
}

}  // namespace

TEST_CASE("tokenize basics") {
    CHECK(tokenize("").empty());
    CHECK(tokenize("Генетический алгоритм и Алгоритм", {"и"}) ==
          std::vector<std::string>{"генетический", "алгоритм", "алгоритм"});
    CHECK(tokenize("A—B") == std::vector<std::string>{"a", "b"});
    CHECK(tokenize("  hello,   WORLD!! ") == std::vector<std::string>{"hello", "world"});
}

TEST_CASE("tokenize applies the lemma table before stopword filtering") {
    LemmaTable lemmas{{"алгоритмы", "алгоритм"}, {"runs", "run"}};
    CHECK(tokenize("алгоритмы runs", {}, &lemmas) ==
          std::vector<std::string>{"алгоритм", "run"});
    CHECK(tokenize("runs", {"run"}, &lemmas).empty());
}

TEST_CASE("tokenize is idempotent on its own output") {
    const StopwordSet stop{"и", "the"};
    for (const std::string text :
         {"Генетический алгоритм и Алгоритм", "The quick—brown FOX, the fox", "a b c a"}) {
        const auto once = tokenize(text, stop);
        CHECK(tokenize(join(once), stop) == once);
    }
}

TEST_CASE("idf formula") {
    std::vector<std::vector<std::string>> texts(20, std::vector<std::string>{"x"});
    CHECK(idf("x", term_sets(texts)) == doctest::Approx(std::log(21.0 / 20.0)).epsilon(1e-12));
    CHECK(idf("missing", term_sets({{"a"}})) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(idf("a", term_sets({{"a"}})) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK_THROWS(idf("a", {}));
}

TEST_CASE("idf is non-increasing in the containing-document count") {
    // R = 5, R^n from 0 to 5
    for (std::size_t rn = 0; rn + 1 <= 5; ++rn) {
        std::vector<std::vector<std::string>> texts(5, std::vector<std::string>{"pad"});
        auto with = [&](std::size_t k) {
            auto t = texts;
            for (std::size_t i = 0; i < k; ++i) t[i].push_back("x");
            return idf("x", term_sets(t));
        };
        CHECK(with(rn) >= with(rn + 1));
        CHECK(with(rn) >= 0.0);
    }
}

TEST_CASE("result_vector tf-idf") {
    const std::vector<std::string> doc{"alpha", "alpha", "beta"};
    const auto v = result_vector(doc, term_sets({doc}));
    REQUIRE(v.size() == 2);
    CHECK(v.at("alpha") == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(v.at("beta") == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    CHECK(result_vector({}, term_sets({{"a"}})).empty());

    // two identical docs: every term has R^n = 2, R = 2
    const auto v2 = result_vector(doc, term_sets({doc, doc}));
    CHECK(v2.at("alpha") == doctest::Approx(2.0 * std::log(3.0 / 2.0)).epsilon(1e-12));

    for (const auto& [term, w] : v2) CHECK(w > 0.0);
}

TEST_CASE("pattern_vector") {
    const auto sets = term_sets({{"unrelated"}});
    const auto v = pattern_vector({"a", "b", "c", "d"}, sets);
    REQUIRE(v.size() == 4);
    for (const auto& [term, w] : v) {
        CHECK(w == doctest::Approx(0.25 * std::log(2.0)).epsilon(1e-12));
    }
    const auto single = pattern_vector({"a"}, term_sets({{"a"}}));
    CHECK(single.at("a") == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    std::vector<std::vector<std::string>> results20(20, std::vector<std::string>{"a"});
    for (int i = 0; i < 10; ++i) results20[i].push_back("b");
    const auto two = pattern_vector({"a", "b"}, term_sets(results20));
    CHECK(two.at("a") == doctest::Approx(0.5 * std::log(21.0 / 20.0)).epsilon(1e-12));
    CHECK(two.at("b") == doctest::Approx(0.5 * std::log(21.0 / 10.0)).epsilon(1e-12));

    CHECK_THROWS_WITH(pattern_vector({}, sets), "empty search pattern");
}

TEST_CASE("corpus build and df index") {
    Corpus c = Corpus::build({{"1", "alpha beta", "gamma"}, {"2", "alpha", ""}});
    CHECK(c.size() == 2);
    CHECK(c.doc_frequency("alpha") == 2);
    CHECK(c.doc_frequency("gamma") == 1);
    CHECK(c.doc_frequency("missing") == 0);

    // df index agrees with an exhaustive recount
    for (const std::string term : {"alpha", "beta", "gamma"}) {
        std::size_t count = 0;
        for (std::size_t i = 0; i < c.size(); ++i) count += c.term_set(i).count(term);
        CHECK(c.doc_frequency(term) == count);
    }

    CHECK_THROWS(Corpus::build({{"1", "a", ""}, {"1", "b", ""}}));
    CHECK_THROWS(Corpus::build({{"1", "", ""}}));
}

TEST_CASE("corpus rebuild is deterministic") {
    const std::vector<Document> docs{{"1", "a b", "c"}, {"2", "b", "d d"}, {"3", "e", ""}};
    Corpus c1 = Corpus::build(docs);
    Corpus c2 = Corpus::build(docs);
    for (const std::string term : {"a", "b", "c", "d", "e"}) {
        CHECK(c1.doc_frequency(term) == c2.doc_frequency(term));
    }
}

TEST_CASE("corpus loads from tab-separated file") {
    const std::string path = "test_corpus_load.tsv";
    {
        std::ofstream out(path);
        out << "d1\tПервый документ\tописание один\n";
        out << "d2\tSecond\tsnippet two\n";
    }
    Corpus c = Corpus::load(path);
    REQUIRE(c.size() == 2);
    CHECK(c.doc(0).id == "d1");
    CHECK(c.doc(0).text() == "Первый документ описание один");
    CHECK(c.doc_frequency("второй") == 0);
    CHECK(c.doc_frequency("second") == 1);
    std::remove(path.c_str());
}
