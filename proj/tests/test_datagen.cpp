#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "pdhp/datagen.hpp"
#include "pdhp/errors.hpp"

using namespace pdhp;

namespace {

KernelBasis narrow_basis() {
    KernelBasis basis;
    basis.means = {3.0, 7.0, 11.0};
    basis.bandwidths = {0.5, 0.5, 0.5};
    basis.horizon = 20.0;
    return basis;
}

} // namespace

TEST_CASE("simulate_hawkes with zero rate and no seeds is empty") {
    Rng rng(1);
    const auto events =
        simulate_hawkes(0.0, std::vector<double>{0.5, 0.2, 0.1}, narrow_basis(), 100.0, rng);
    CHECK(events.empty());
}

TEST_CASE("simulate_hawkes rejects unstable weights") {
    Rng rng(1);
    CHECK_THROWS_AS(
        simulate_hawkes(1.0, std::vector<double>{0.5, 0.5, 0.2}, narrow_basis(), 10.0, rng),
        config_error);
}

TEST_CASE("simulate_hawkes with zero weights is a homogeneous Poisson process") {
    Rng rng(42);
    const double mu = 1.0, t_max = 50.0;
    const int runs = 200;
    double total = 0.0, total_sq = 0.0;
    for (int i = 0; i < runs; ++i) {
        const auto events =
            simulate_hawkes(mu, std::vector<double>{0.0, 0.0, 0.0}, narrow_basis(), t_max, rng);
        for (std::size_t j = 1; j < events.size(); ++j) CHECK(events[j] >= events[j - 1]);
        const auto n = static_cast<double>(events.size());
        total += n;
        total_sq += n * n;
    }
    const double mean = total / runs;
    const double var = total_sq / runs - mean * mean;
    const double se = std::sqrt(var / runs);
    CHECK(std::abs(mean - mu * t_max) < 3.0 * se);
}

TEST_CASE("simulate_hawkes seed events excite the stream") {
    Rng rng(9);
    const std::vector<double> seeds{-1.0, -0.5};
    const auto events = simulate_hawkes(0.0, std::vector<double>{0.8, 0.0, 0.0}, narrow_basis(),
                                        30.0, rng, seeds);
    CHECK(!events.empty());
    for (double t : events) CHECK(t >= 0.0);
}

TEST_CASE("build_vocabularies shared fractions are exact") {
    const auto disjoint = build_vocabularies(2, 100, 0.0);
    std::set<std::int32_t> a(disjoint[0].begin(), disjoint[0].end());
    std::set<std::int32_t> b(disjoint[1].begin(), disjoint[1].end());
    CHECK(a.size() == 100);
    CHECK(b.size() == 100);
    std::vector<std::int32_t> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    CHECK(common.empty());

    const auto identical = build_vocabularies(2, 100, 1.0);
    CHECK(identical[0] == identical[1]);

    const auto half = build_vocabularies(2, 1000, 0.5);
    std::set<std::int32_t> ha(half[0].begin(), half[0].end());
    std::set<std::int32_t> hb(half[1].begin(), half[1].end());
    common.clear();
    std::set_intersection(ha.begin(), ha.end(), hb.begin(), hb.end(),
                          std::back_inserter(common));
    CHECK(common.size() == 500);
    CHECK(ha.size() == 1000);
    CHECK(hb.size() == 1000);
}

TEST_CASE("generate_corpus with no decorrelation has matching label columns") {
    GenerationSpec spec;
    spec.basis = narrow_basis();
    spec.window = 40.0;
    spec.vocab_size = 50;
    spec.words_per_doc = 10;
    spec.seed = 3;
    Rng rng(spec.seed);
    const auto corpus = generate_corpus(spec, rng);
    CHECK(corpus.textual_labels == corpus.temporal_labels);
    CHECK(corpus.documents.size() == corpus.textual_labels.size());
}

TEST_CASE("documents carry exactly words_per_doc tokens") {
    GenerationSpec spec;
    spec.basis = narrow_basis();
    spec.window = 30.0;
    spec.vocab_size = 40;
    spec.words_per_doc = 20;
    spec.decorrelation = 0.3;
    spec.seed = 5;
    Rng rng(spec.seed);
    const auto corpus = generate_corpus(spec, rng);
    REQUIRE(!corpus.documents.empty());
    for (const auto& doc : corpus.documents)
        CHECK(doc.counts.total == static_cast<std::int64_t>(spec.words_per_doc));
    // merged stream is time sorted
    for (std::size_t i = 1; i < corpus.documents.size(); ++i)
        CHECK(corpus.documents[i].time >= corpus.documents[i - 1].time);
}

TEST_CASE("zero textual overlap keeps the cluster vocabularies disjoint in the corpus") {
    GenerationSpec spec;
    spec.basis = narrow_basis();
    spec.window = 40.0;
    spec.vocab_size = 60;
    spec.words_per_doc = 15;
    spec.seed = 7;
    Rng rng(spec.seed);
    const auto corpus = generate_corpus(spec, rng);
    std::set<std::int32_t> words_by_label[2];
    for (std::size_t i = 0; i < corpus.documents.size(); ++i)
        for (const auto& [w, c] : corpus.documents[i].counts.per_word)
            words_by_label[corpus.textual_labels[i]].insert(w);
    std::vector<std::int32_t> common;
    std::set_intersection(words_by_label[0].begin(), words_by_label[0].end(),
                          words_by_label[1].begin(), words_by_label[1].end(),
                          std::back_inserter(common));
    CHECK(common.empty());
}

TEST_CASE("decorrelation flips the expected fraction of textual labels") {
    GenerationSpec spec;
    spec.basis = narrow_basis();
    spec.window = 1000.0;
    spec.vocab_size = 10;
    spec.words_per_doc = 3;
    spec.decorrelation = 0.5;
    spec.mu = 1.0;
    spec.seed = 11;
    Rng rng(spec.seed);
    const auto corpus = generate_corpus(spec, rng);
    const auto n = corpus.documents.size();
    REQUIRE(n > 2000);
    double flipped = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (corpus.textual_labels[i] != corpus.temporal_labels[i]) flipped += 1.0;
    const double fraction = flipped / static_cast<double>(n);
    // re-draw picks the same cluster half the time
    const double expected = 0.25;
    const double sigma = std::sqrt(expected * (1.0 - expected) / static_cast<double>(n));
    CHECK(std::abs(fraction - expected) < 3.0 * sigma);
}

TEST_CASE("generate_corpus is deterministic under the seed") {
    GenerationSpec spec;
    spec.basis = narrow_basis();
    spec.window = 50.0;
    spec.vocab_size = 30;
    spec.words_per_doc = 8;
    spec.decorrelation = 0.2;
    spec.intensity_overlap = 0.4;
    spec.seed = 77;
    Rng rng_a(spec.seed), rng_b(spec.seed);
    const auto a = generate_corpus(spec, rng_a);
    const auto b = generate_corpus(spec, rng_b);
    REQUIRE(a.documents.size() == b.documents.size());
    CHECK(a.textual_labels == b.textual_labels);
    CHECK(a.temporal_labels == b.temporal_labels);
    for (std::size_t i = 0; i < a.documents.size(); ++i) {
        CHECK(a.documents[i].time == b.documents[i].time);
        CHECK(a.documents[i].counts.per_word == b.documents[i].counts.per_word);
    }
}

TEST_CASE("measured overlap of identical trajectories is one") {
    const auto basis = narrow_basis();
    const std::vector<double> events{1.0, 2.0, 5.0};
    const std::vector<double> weights{0.3, 0.2, 0.1};
    const auto overlap = measured_intensity_overlap(events, events, basis, weights, 0.05);
    REQUIRE(overlap.has_value());
    CHECK(*overlap == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("measured overlap of far-separated bursts is zero") {
    const auto basis = narrow_basis();
    const std::vector<double> a{0.0, 1.0};
    const std::vector<double> b{100.0, 101.0};
    const std::vector<double> weights{0.3, 0.2, 0.1};
    const auto overlap = measured_intensity_overlap(a, b, basis, weights, 0.1);
    REQUIRE(overlap.has_value());
    CHECK(*overlap == 0.0);
}

TEST_CASE("measured overlap of empty histories is undefined") {
    const auto basis = narrow_basis();
    CHECK(!measured_intensity_overlap({}, {}, basis, std::vector<double>{0.1, 0.1, 0.1}, 0.1)
               .has_value());
}

TEST_CASE("partially shared bursts match a fine-grid quadrature oracle") {
    const auto basis = narrow_basis();
    const std::vector<double> a{0.0, 4.0};
    const std::vector<double> b{4.0, 30.0};
    const std::vector<double> weights{0.4, 0.2, 0.1};
    const auto overlap = measured_intensity_overlap(a, b, basis, weights, basis.horizon / 512.0);
    REQUIRE(overlap.has_value());
    CHECK(*overlap > 0.0);
    CHECK(*overlap < 1.0);

    auto lam = [&](const std::vector<double>& events, double t) {
        double acc = 0.0;
        for (double t_i : events) {
            if (!(t_i < t) || t - t_i > basis.horizon) continue;
            for (std::size_t l = 0; l < basis.size(); ++l)
                acc += weights[l] *
                       oracles::gaussian_pdf(t - t_i, basis.means[l], basis.bandwidths[l]);
        }
        return acc;
    };
    const double t_hi = 30.0 + basis.horizon;
    const double num = oracles::adaptive_quadrature(
        [&](double t) { return std::min(lam(a, t), lam(b, t)); }, 0.0, t_hi, 1e-10);
    const double den = oracles::adaptive_quadrature(
        [&](double t) { return std::max(lam(a, t), lam(b, t)); }, 0.0, t_hi, 1e-10);
    CHECK(*overlap == doctest::Approx(num / den).epsilon(1e-3));
}

TEST_CASE("realized intensity overlap falls with the requested overlap") {
    auto realized = [&](double requested) {
        GenerationSpec spec;
        spec.basis = narrow_basis();
        spec.window = 80.0;
        spec.vocab_size = 20;
        spec.words_per_doc = 5;
        spec.intensity_overlap = requested;
        spec.seed = 13;
        Rng rng(spec.seed);
        const auto corpus = generate_corpus(spec, rng);
        REQUIRE(corpus.realized_intensity_overlap.has_value());
        return *corpus.realized_intensity_overlap;
    };
    const double low = realized(0.0);
    const double high = realized(1.0);
    CHECK(low < 0.05);
    CHECK(high > 0.3);
    CHECK(high > low);
}
