#include "qga/genetics.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

namespace qga {

std::vector<std::string> QueryGenome::terms() const {
    std::vector<std::string> out;
    out.reserve(genes.size());
    for (const auto& g : genes) out.push_back(g.term);
    return out;
}

std::vector<std::string> SearchPattern::terms() const {
    std::vector<std::string> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.term);
    return out;
}

SearchPattern SearchPattern::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pattern file: " + path);
    SearchPattern p;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        PatternEntry e;
        const auto tab = line.find('\t');
        e.term = line.substr(0, tab == std::string::npos ? line.size() : tab);
        if (e.term.empty()) {
            throw std::runtime_error("pattern line " + std::to_string(line_no) + ": empty term");
        }
        if (!seen.insert(e.term).second) {
            throw std::runtime_error("pattern line " + std::to_string(line_no) +
                                     ": duplicate term " + e.term);
        }
        if (tab != std::string::npos) {
            std::string syn;
            for (std::size_t i = tab + 1; i <= line.size(); ++i) {
                if (i == line.size() || line[i] == ',') {
                    if (!syn.empty() && syn != e.term) e.synonyms.insert(syn);
                    syn.clear();
                } else {
                    syn.push_back(line[i]);
                }
            }
        }
        p.entries.push_back(std::move(e));
    }
    return p;
}

Population init_population(const SearchPattern& pattern, int n, int m, Rng& rng) {
    if (n < 2 || m < 1) {
        throw std::invalid_argument("population sizes must satisfy N >= 2 and M >= 1");
    }
    if (static_cast<std::size_t>(m) > pattern.size()) {
        throw std::invalid_argument("pattern smaller than M");
    }
    if (2 * static_cast<std::size_t>(n) >= pattern.size()) {
        throw std::invalid_argument("population constraint N < |K|/2 violated");
    }
    Population pop;
    pop.members.reserve(n);
    const double w = 1.0 / static_cast<double>(m);
    for (int q = 0; q < n; ++q) {
        // partial Fisher-Yates over pattern indices
        std::vector<std::size_t> idx(pattern.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        QueryGenome genome;
        genome.genes.reserve(m);
        for (int g = 0; g < m; ++g) {
            const std::size_t pick = g + rng.index(idx.size() - g);
            std::swap(idx[g], idx[pick]);
            const auto& entry = pattern.entries[idx[g]];
            genome.genes.push_back({entry.term, w, entry.synonyms});
        }
        pop.members.push_back(std::move(genome));
    }
    return pop;
}

namespace {

// Refill duplicate slots so the offspring keeps m distinct terms. donors[i]
// is the parent that supplied slot i.
void repair(QueryGenome& child, const std::vector<const QueryGenome*>& donors,
            const SearchPattern* fallback, Rng& rng) {
    std::unordered_set<std::string> present;
    for (std::size_t i = 0; i < child.genes.size(); ++i) {
        if (present.insert(child.genes[i].term).second) continue;
        std::vector<const Gene*> candidates;
        for (const auto& g : donors[i]->genes) {
            if (!present.count(g.term)) candidates.push_back(&g);
        }
        if (!candidates.empty()) {
            const Gene& pick = *candidates[rng.index(candidates.size())];
            child.genes[i] = pick;
        } else if (fallback) {
            std::vector<const PatternEntry*> spare;
            for (const auto& e : fallback->entries) {
                if (!present.count(e.term)) spare.push_back(&e);
            }
            if (spare.empty()) {
                throw std::runtime_error("crossover repair: pattern exhausted");
            }
            const PatternEntry& pick = *spare[rng.index(spare.size())];
            child.genes[i] = {pick.term, child.genes[i].weight, pick.synonyms};
        } else {
            throw std::runtime_error("crossover repair: donor exhausted and no pattern given");
        }
        present.insert(child.genes[i].term);
    }
}

}  // namespace

std::pair<QueryGenome, QueryGenome> crossover(const QueryGenome& a, const QueryGenome& b,
                                              int points, Rng& rng,
                                              const SearchPattern* fallback) {
    const std::size_t m = a.size();
    if (m != b.size()) throw std::invalid_argument("crossover: genome length mismatch");
    if (m < 2) throw std::invalid_argument("crossover: genomes must have at least 2 genes");
    if (points != 1 && points != 2) throw std::invalid_argument("crossover: points must be 1 or 2");

    // exchange [cut1, cut2)
    std::size_t cut1, cut2;
    if (points == 1) {
        cut1 = 1 + rng.index(m - 1);
        cut2 = m;
    } else {
        cut1 = 1 + rng.index(m - 1);
        cut2 = 1 + rng.index(m - 1);
        if (cut1 > cut2) std::swap(cut1, cut2);
    }

    QueryGenome o1 = a, o2 = b;
    std::vector<const QueryGenome*> donors1(m, &a), donors2(m, &b);
    for (std::size_t i = cut1; i < cut2; ++i) {
        std::swap(o1.genes[i], o2.genes[i]);
        donors1[i] = &b;
        donors2[i] = &a;
    }
    repair(o1, donors1, fallback, rng);
    repair(o2, donors2, fallback, rng);
    return {std::move(o1), std::move(o2)};
}

QueryGenome mutate(const QueryGenome& g, double p_m, Rng& rng) {
    if (p_m < 0.0 || p_m > 1.0) throw std::invalid_argument("mutation probability out of [0,1]");
    if (g.genes.empty() || !rng.bernoulli(p_m)) return g;
    QueryGenome out = g;
    Gene& gene = out.genes[rng.index(out.genes.size())];
    if (gene.synonyms.empty()) return g;
    std::vector<std::string> syns(gene.synonyms.begin(), gene.synonyms.end());
    const std::string replacement = syns[rng.index(syns.size())];
    gene.synonyms.erase(replacement);
    gene.synonyms.insert(gene.term);
    gene.term = replacement;
    return out;
}

int genotype_distance(const QueryGenome& a, const QueryGenome& b) {
    if (a.size() != b.size()) throw std::invalid_argument("genotype_distance: length mismatch");
    std::unordered_set<std::string> terms_a;
    for (const auto& g : a.genes) terms_a.insert(g.term);
    int shared = 0;
    for (const auto& g : b.genes) {
        if (terms_a.count(g.term)) ++shared;
    }
    return static_cast<int>(a.size()) - shared;
}

std::vector<std::pair<std::size_t, std::size_t>> select_outbred_pairs(const Population& pop) {
    const std::size_t n = pop.size();
    if (n < 2) throw std::invalid_argument("outbreeding requires at least 2 genomes");
    std::vector<bool> paired(n, false);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        if (paired[i]) continue;
        std::size_t best = n;
        int best_d = -1;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (paired[j]) continue;
            const int d = genotype_distance(pop.members[i], pop.members[j]);
            if (d > best_d) {
                best_d = d;
                best = j;
            }
        }
        if (best == n) break;  // odd leftover stays unpaired
        paired[i] = paired[best] = true;
        pairs.emplace_back(i, best);
    }
    return pairs;
}

Population elitist_select(const Population& parents, const std::vector<double>& parent_fitness,
                          const std::vector<QueryGenome>& offspring,
                          const std::vector<double>& offspring_fitness, int n) {
    if (parents.size() != parent_fitness.size() || offspring.size() != offspring_fitness.size()) {
        throw std::invalid_argument("elitist_select: fitness size mismatch");
    }
    const std::size_t pool = parents.size() + offspring.size();
    if (pool < static_cast<std::size_t>(n)) {
        throw std::invalid_argument("elitist_select: pool smaller than n");
    }
    // pool order: parents then offspring; stable sort keeps that order on ties
    std::vector<std::size_t> order(pool);
    for (std::size_t i = 0; i < pool; ++i) order[i] = i;
    auto fitness_of = [&](std::size_t i) {
        return i < parents.size() ? parent_fitness[i] : offspring_fitness[i - parents.size()];
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fitness_of(a) > fitness_of(b); });
    Population next;
    next.generation_no = parents.generation_no + 1;
    next.members.reserve(n);
    for (int i = 0; i < n; ++i) {
        const std::size_t k = order[i];
        next.members.push_back(k < parents.size() ? parents.members[k]
                                                  : offspring[k - parents.size()]);
    }
    return next;
}

bool is_stable(const std::vector<double>& history, double epsilon, int window) {
    if (epsilon < 0.0 || window < 1) throw std::invalid_argument("is_stable: bad parameters");
    if (history.size() < static_cast<std::size_t>(window) + 1) return false;
    const auto first = history.end() - (window + 1);
    const auto [lo, hi] = std::minmax_element(first, history.end());
    return *hi - *lo <= epsilon;
}

}  // namespace qga
