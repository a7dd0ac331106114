#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qga/rng.hpp"
#include "qga/weights.hpp"

using namespace qga;

namespace {

CriterionSamples published_ranges() {
    // min/max pairs matching the published example ranges
    return {{0.43, 0.95}, {0.13, 1.00}, {0.05, 0.09}};
}

ResultRecord rec(int pop, int query, double g, double p, double s_raw, double s_norm) {
    ResultRecord r;
    r.population_no = pop;
    r.query_no = query;
    r.g = g;
    r.p = p;
    r.s_raw = s_raw;
    r.s = s_norm;
    return r;
}

}  // namespace

TEST_CASE("equal weights") {
    const auto w = equal_weights();
    CHECK(w.w_g == doctest::Approx(1.0 / 3));
    CHECK(w.w_p == doctest::Approx(1.0 / 3));
    CHECK(w.w_s == doctest::Approx(1.0 / 3));
    CHECK(w.valid());
    // equal-weight fitness is the plain mean of the criteria
    CHECK(result_fitness(0.3, 0.6, 0.9, w) == doctest::Approx((0.3 + 0.6 + 0.9) / 3));
}

TEST_CASE("relative spread weights reproduce the published example") {
    const auto d = relative_spread_deltas(published_ranges());
    CHECK(d[0] == doctest::Approx(0.5474).epsilon(1e-3));
    CHECK(d[1] == doctest::Approx(0.8700).epsilon(1e-3));
    CHECK(d[2] == doctest::Approx(0.4444).epsilon(1e-3));
    const auto w = relative_spread_weights(published_ranges());
    CHECK(w.w_g == doctest::Approx(0.294).epsilon(2e-3));
    CHECK(w.w_p == doctest::Approx(0.467).epsilon(2e-3));
    CHECK(w.w_s == doctest::Approx(0.239).epsilon(2e-3));
    CHECK(w.valid());
}

TEST_CASE("relative spread edge cases") {
    // all criteria constant
    const auto w = relative_spread_weights({{0.5, 0.5}, {0.2, 0.2}, {0.9, 0.9}});
    CHECK(w.w_g == doctest::Approx(1.0 / 3));
    // one constant criterion, two with delta = 0.5 each
    const auto w2 = relative_spread_weights({{0.7, 0.7}, {0.5, 1.0}, {0.25, 0.5}});
    CHECK(w2.w_g == doctest::Approx(0.0));
    CHECK(w2.w_p == doctest::Approx(0.5));
    CHECK(w2.w_s == doctest::Approx(0.5));

    CHECK_THROWS_WITH(relative_spread_weights({{-1.0, 0.0}, {0.1, 0.2}, {0.1, 0.2}}),
                      "method 1 requires positive criterion maxima");
    CHECK_THROWS(relative_spread_weights({{}, {}, {}}));
    CHECK_THROWS(relative_spread_weights({{0.1}, {0.1, 0.2}, {0.1}}));
}

TEST_CASE("relative spread is invariant under positive scaling of one criterion") {
    const CriterionSamples base{{0.2, 0.4, 0.8}, {0.1, 0.9, 0.5}, {0.3, 0.6, 0.45}};
    const auto w = relative_spread_weights(base);
    CriterionSamples scaled = base;
    for (auto& v : scaled.p) v *= 12.5;
    const auto w2 = relative_spread_weights(scaled);
    CHECK(w.w_g == doctest::Approx(w2.w_g).epsilon(1e-12));
    CHECK(w.w_p == doctest::Approx(w2.w_p).epsilon(1e-12));
    CHECK(w.w_s == doctest::Approx(w2.w_s).epsilon(1e-12));
}

TEST_CASE("radius weights from the published radii") {
    const std::array<double, 3> rstar{0.4719, 0.3729, 0.4828};
    const auto direct = radius_weights_from_radii(rstar, RadiusVariant::direct);
    CHECK(direct.w_g == doctest::Approx(0.355).epsilon(2e-3));
    CHECK(direct.w_p == doctest::Approx(0.281).epsilon(2e-3));
    CHECK(direct.w_s == doctest::Approx(0.364).epsilon(2e-3));
    // inverse-proportional variant, hand-evaluated:
    // 1/R* = (2.11909, 2.68168, 2.07125), sum 6.87202
    const auto inverse = radius_weights_from_radii(rstar, RadiusVariant::inverse);
    CHECK(inverse.w_g == doctest::Approx(0.308).epsilon(2e-3));
    CHECK(inverse.w_p == doctest::Approx(0.390).epsilon(2e-3));
    CHECK(inverse.w_s == doctest::Approx(0.301).epsilon(2e-3));
    // equal radii: symmetric under both variants
    for (auto variant : {RadiusVariant::direct, RadiusVariant::inverse}) {
        const auto w = radius_weights_from_radii({0.4, 0.4, 0.4}, variant);
        CHECK(w.w_g == doctest::Approx(1.0 / 3));
        CHECK(w.w_p == doctest::Approx(1.0 / 3));
        CHECK(w.w_s == doctest::Approx(1.0 / 3));
    }
}

TEST_CASE("radius constrained maxima") {
    // minimum 0.4; xi 0.5 admits values up to 0.6
    const CriterionSamples s{{0.4, 0.55, 0.61, 0.9}, {0.4, 0.55, 0.61, 0.9}, {0.4, 0.55, 0.61, 0.9}};
    const auto r = radius_constrained_maxima(s, {0.5, 0.6, 0.05, RadiusVariant::direct});
    CHECK(r[0] == doctest::Approx(0.55));
    CHECK(r[1] == doctest::Approx(0.61));
    CHECK(r[2] == doctest::Approx(0.4));  // only the minimum qualifies

    // zero minimum is clamped and reported
    std::string warning;
    const auto rc = radius_constrained_maxima({{0.0, 0.5}, {0.1, 0.2}, {0.1, 0.2}},
                                              {0.33, 0.33, 0.34, RadiusVariant::direct}, &warning);
    CHECK(rc[0] == doctest::Approx(1e-6));
    CHECK(warning.find("clamped") != std::string::npos);
}

TEST_CASE("larger xi never decreases the constrained maximum") {
    Rng rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        CriterionSamples s;
        const int n = 2 + static_cast<int>(rng.index(10));
        for (int i = 0; i < n; ++i) {
            s.g.push_back(0.05 + rng.real01());
            s.p.push_back(0.05 + rng.real01());
            s.s.push_back(0.05 + rng.real01());
        }
        const double xi = 0.05 + rng.real01();
        const auto lo = radius_constrained_maxima(s, {xi, xi, xi, RadiusVariant::direct});
        const auto hi = radius_constrained_maxima(s, {xi * 2, xi * 2, xi * 2, RadiusVariant::direct});
        for (int k = 0; k < 3; ++k) CHECK(hi[k] >= lo[k]);
    }
}

TEST_CASE("argmax weight matches the variant rule and permutation invariance holds") {
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        CriterionSamples s;
        for (int i = 0; i < 8; ++i) {
            s.g.push_back(0.05 + rng.real01());
            s.p.push_back(0.05 + rng.real01());
            s.s.push_back(0.05 + rng.real01());
        }
        const RadiusConfig cfg{0.4, 0.4, 0.4, RadiusVariant::direct};
        const auto r = radius_constrained_maxima(s, cfg);
        const auto wd = radius_weights(s, cfg);
        const auto wi = radius_weights(s, {0.4, 0.4, 0.4, RadiusVariant::inverse});
        const double wds[3] = {wd.w_g, wd.w_p, wd.w_s};
        const double wis[3] = {wi.w_g, wi.w_p, wi.w_s};
        const auto argmax = [](const double* v) { return std::max_element(v, v + 3) - v; };
        const auto argmax_r = std::max_element(r.begin(), r.end()) - r.begin();
        const auto argmin_r = std::min_element(r.begin(), r.end()) - r.begin();
        CHECK(argmax(wds) == argmax_r);
        CHECK(argmax(wis) == argmin_r);

        // order independence
        CriterionSamples shuffled = s;
        std::reverse(shuffled.g.begin(), shuffled.g.end());
        std::reverse(shuffled.p.begin(), shuffled.p.end());
        std::reverse(shuffled.s.begin(), shuffled.s.end());
        const auto w2 = radius_weights(shuffled, cfg);
        CHECK(wd.w_g == doctest::Approx(w2.w_g).epsilon(1e-12));
        const auto ws = relative_spread_weights(s);
        const auto ws2 = relative_spread_weights(shuffled);
        CHECK(ws.w_g == doctest::Approx(ws2.w_g).epsilon(1e-12));
    }
}

TEST_CASE("all methods return valid weight vectors on random samples") {
    Rng rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        CriterionSamples s;
        const int n = 1 + static_cast<int>(rng.index(20));
        for (int i = 0; i < n; ++i) {
            s.g.push_back(0.001 + rng.real01());
            s.p.push_back(0.001 + rng.real01());
            s.s.push_back(0.001 + rng.real01());
        }
        CHECK(equal_weights().valid());
        CHECK(relative_spread_weights(s).valid());
        CHECK(radius_weights(s, {0.33, 0.33, 0.34, RadiusVariant::direct}).valid());
        CHECK(radius_weights(s, {0.33, 0.33, 0.34, RadiusVariant::inverse}).valid());
    }
}

TEST_CASE("collect_samples ranges") {
    std::vector<ResultRecord> records;
    for (int pop = 0; pop < 3; ++pop) {
        for (int q = 0; q < 2; ++q) {
            for (int i = 0; i < 4; ++i) {
                records.push_back(
                    rec(pop, q, 0.1 * pop, 0.2 * q, 0.01 * i, 0.5 + 0.01 * i));
            }
        }
    }
    const auto one_query = collect_samples(records, DataRange::query(1, 0));
    CHECK(one_query.g.size() == 4);
    const auto one_pop = collect_samples(records, DataRange::population(1));
    CHECK(one_pop.g.size() == 8);
    const auto all = collect_samples(records, DataRange::all());
    CHECK(all.g.size() == 24);

    // all-populations equals the concatenation of the per-population selections
    std::vector<double> concat;
    for (int pop = 0; pop < 3; ++pop) {
        const auto part = collect_samples(records, DataRange::population(pop));
        concat.insert(concat.end(), part.g.begin(), part.g.end());
    }
    CHECK(all.g == concat);

    // s column selector
    CHECK(collect_samples(records, DataRange::query(0, 0), SColumn::raw).s[1] ==
          doctest::Approx(0.01));
    CHECK(collect_samples(records, DataRange::query(0, 0), SColumn::normalized).s[1] ==
          doctest::Approx(0.51));

    CHECK_THROWS_WITH(collect_samples(records, DataRange::population(99)), "empty data range");
}

TEST_CASE("weights_for_range dispatch and determinism") {
    std::vector<ResultRecord> records;
    // min/max per column match the published table fragment ranges
    records.push_back(rec(145, 559, 0.43, 1.00, 0.05, 0.42));
    records.push_back(rec(145, 559, 0.95, 0.13, 0.09, 0.70));
    records.push_back(rec(145, 560, 0.66, 0.32, 0.06, 0.45));

    const RadiusConfig cfg;
    const auto equal = weights_for_range(records, DataRange::all(), WeightMethod::equal, cfg);
    CHECK(equal.w_g == doctest::Approx(1.0 / 3));

    const auto spread = weights_for_range(records, DataRange::all(), WeightMethod::spread, cfg);
    CHECK(spread.w_g == doctest::Approx(0.294).epsilon(2e-3));
    CHECK(spread.w_p == doctest::Approx(0.467).epsilon(2e-3));
    CHECK(spread.w_s == doctest::Approx(0.239).epsilon(2e-3));

    const auto again = weights_for_range(records, DataRange::all(), WeightMethod::spread, cfg);
    CHECK(spread.w_g == again.w_g);
    CHECK(spread.w_p == again.w_p);
    CHECK(spread.w_s == again.w_s);
}

TEST_CASE("data range parse/format round trip") {
    for (const std::string text : {"all", "population:145", "query:145:559"}) {
        CHECK(DataRange::parse(text).to_string() == text);
    }
    CHECK_THROWS(DataRange::parse("bogus"));
    CHECK_THROWS(DataRange::parse("query:145"));
}
