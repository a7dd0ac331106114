#pragma once

#include <set>
#include <string>
#include <vector>

#include "qga/rng.hpp"

namespace qga {

// One query component: a term, its weight, and the synonyms it can mutate
// into. The weight is carried but unused by the built-in scorer.
struct Gene {
    std::string term;
    double weight = 0.0;
    std::set<std::string> synonyms;
};

struct QueryGenome {
    std::vector<Gene> genes;

    std::size_t size() const { return genes.size(); }
    std::vector<std::string> terms() const;
};

struct Population {
    std::vector<QueryGenome> members;
    int generation_no = 0;

    std::size_t size() const { return members.size(); }
};

struct PatternEntry {
    std::string term;
    std::set<std::string> synonyms;
};

// The fixed subject-domain term set queries draw their genes from.
struct SearchPattern {
    std::vector<PatternEntry> entries;

    std::size_t size() const { return entries.size(); }
    std::vector<std::string> terms() const;

    // One entry per line: term<TAB>syn1,syn2,..., UTF-8.
    static SearchPattern load(const std::string& path);
};

// n genomes of m distinct terms each, sampled uniformly without replacement
// from the pattern; gene weights 1/m. Requires n >= 2, m >= 1, n < |pattern|/2
// and |pattern| >= m.
Population init_population(const SearchPattern& pattern, int n, int m, Rng& rng);

// One- or two-point exchange over the gene vectors. Offspring are repaired so
// each keeps m distinct terms: a duplicate slot is refilled with a uniformly
// drawn unused term of the parent that supplied the slot, falling back to the
// pattern when the donor is exhausted.
std::pair<QueryGenome, QueryGenome> crossover(const QueryGenome& a, const QueryGenome& b,
                                              int points, Rng& rng,
                                              const SearchPattern* fallback = nullptr);

// With probability p_m, one uniformly chosen gene swaps its term with a
// uniformly chosen synonym; the displaced term joins the synonym set. A gene
// with no synonyms leaves the genome unchanged.
QueryGenome mutate(const QueryGenome& g, double p_m, Rng& rng);

// m minus the number of shared terms.
int genotype_distance(const QueryGenome& a, const QueryGenome& b);

// Greedy outbreeding: repeatedly pair the first unpaired genome with the
// unpaired genome of maximal genotype distance (ties to the lowest index).
std::vector<std::pair<std::size_t, std::size_t>> select_outbred_pairs(const Population& pop);

// Top n of the parents+offspring pool by fitness; ties keep parents first,
// then lower index. Increments the generation number.
Population elitist_select(const Population& parents, const std::vector<double>& parent_fitness,
                          const std::vector<QueryGenome>& offspring,
                          const std::vector<double>& offspring_fitness, int n);

// True iff the last window+1 fitness values pairwise differ by <= epsilon.
bool is_stable(const std::vector<double>& history, double epsilon, int window);

}  // namespace qga
