#include "pdhp/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pdhp/dynamics.hpp"
#include "pdhp/errors.hpp"

namespace pdhp {

namespace {

double branching_ratio(std::span<const double> weights, const KernelBasis& basis) {
    double acc = 0.0;
    for (std::size_t l = 0; l < basis.size(); ++l) acc += weights[l] * kernel_mass(basis, l);
    return acc;
}

} // namespace

void GenerationSpec::validate() const {
    basis.validate();
    if (clusters < 1) throw config_error("generate: cluster count must be >= 1");
    if (vocab_size < 1) throw config_error("generate: vocabulary size must be >= 1");
    if (textual_overlap < 0.0 || textual_overlap > 1.0)
        throw config_error("generate: textual overlap must be in [0, 1]");
    if (intensity_overlap < 0.0 || intensity_overlap > 1.0)
        throw config_error("generate: intensity overlap must be in [0, 1]");
    if (decorrelation < 0.0 || decorrelation > 1.0)
        throw config_error("generate: decorrelation must be in [0, 1]");
    if (!(window > 0.0)) throw config_error("generate: window length must be positive");
    if (!(mu >= 0.0)) throw config_error("generate: mu must be nonnegative");
    const auto w = effective_weights();
    if (w.size() != basis.size())
        throw config_error("generate: weight vector length must match the kernel basis");
    for (double x : w)
        if (!(x >= 0.0)) throw config_error("generate: weights must be nonnegative");
    if (branching_ratio(w, basis) >= 1.0)
        throw config_error("generate: branching ratio must be < 1 for stability");
}

std::vector<double> GenerationSpec::effective_weights() const {
    if (!true_weights.empty()) return true_weights;
    std::vector<double> w(basis.size());
    for (std::size_t l = 0; l < basis.size(); ++l)
        w[l] = weight_scale / (static_cast<double>(basis.size()) * kernel_mass(basis, l));
    return w;
}

std::vector<double> simulate_hawkes(double mu, std::span<const double> weights,
                                    const KernelBasis& basis, double t_max, Rng& rng,
                                    std::span<const double> seed_events) {
    if (branching_ratio(weights, basis) >= 1.0)
        throw config_error("simulate_hawkes: branching ratio must be < 1");

    // any single event contributes at most this much intensity
    double peak_contribution = 0.0;
    for (std::size_t l = 0; l < basis.size(); ++l)
        peak_contribution += weights[l] * kernel_peak(basis, l);

    std::vector<double> history(seed_events.begin(), seed_events.end());
    std::sort(history.begin(), history.end());
    const std::size_t n_seeds = history.size();

    double t = 0.0;
    while (true) {
        // events within the horizon window bound the intensity for all later
        // times until the next accepted event
        auto first =
            std::lower_bound(history.begin(), history.end(), t - basis.horizon);
        const auto in_window = static_cast<double>(history.end() - first);
        const double bound = mu + in_window * peak_contribution;
        if (!(bound > 0.0)) break;
        t += rng.exponential(bound);
        if (t > t_max) break;
        const double lam = mu + intensity(history, basis, weights, t);
        if (rng.uniform() * bound <= lam) history.push_back(t);
    }
    return {history.begin() + static_cast<std::ptrdiff_t>(n_seeds), history.end()};
}

std::vector<std::vector<std::int32_t>> build_vocabularies(std::size_t clusters,
                                                          std::size_t vocab_size,
                                                          double overlap) {
    if (overlap < 0.0 || overlap > 1.0)
        throw config_error("build_vocabularies: overlap must be in [0, 1]");
    const auto shared =
        static_cast<std::size_t>(std::llround(overlap * static_cast<double>(vocab_size)));
    const std::size_t private_size = vocab_size - shared;

    std::vector<std::vector<std::int32_t>> vocabularies(clusters);
    for (std::size_t c = 0; c < clusters; ++c) {
        auto& v = vocabularies[c];
        v.reserve(vocab_size);
        for (std::size_t i = 0; i < shared; ++i) v.push_back(static_cast<std::int32_t>(i));
        const std::size_t base = shared + c * private_size;
        for (std::size_t i = 0; i < private_size; ++i)
            v.push_back(static_cast<std::int32_t>(base + i));
    }
    return vocabularies;
}

std::optional<double> measured_intensity_overlap(std::span<const double> events_a,
                                                 std::span<const double> events_b,
                                                 const KernelBasis& basis,
                                                 std::span<const double> weights,
                                                 double grid_step) {
    if (!(grid_step > 0.0))
        throw config_error("measured_intensity_overlap: grid step must be positive");
    double t_min = 0.0, t_max = 0.0;
    if (!events_a.empty()) {
        t_min = std::min(t_min, events_a.front());
        t_max = std::max(t_max, events_a.back());
    }
    if (!events_b.empty()) {
        t_min = std::min(t_min, events_b.front());
        t_max = std::max(t_max, events_b.back());
    }
    t_max += basis.horizon;

    double min_sum = 0.0, max_sum = 0.0;
    for (double t = t_min; t <= t_max; t += grid_step) {
        const double a = intensity(events_a, basis, weights, t);
        const double b = intensity(events_b, basis, weights, t);
        min_sum += std::min(a, b);
        max_sum += std::max(a, b);
    }
    if (max_sum == 0.0) return std::nullopt;
    return min_sum / max_sum;
}

LabeledCorpus generate_corpus(const GenerationSpec& spec, Rng& rng) {
    spec.validate();
    const auto weights = spec.effective_weights();
    const auto vocabularies =
        build_vocabularies(spec.clusters, spec.vocab_size, spec.textual_overlap);

    // cluster c is active on [c*shift, c*shift + window]; the shift spreads
    // the windows apart as the requested overlap drops, leaving a
    // horizon-sized gap at zero overlap
    const double shift = (1.0 - spec.intensity_overlap) * (spec.window + spec.basis.horizon);

    struct RawEvent {
        double time;
        std::int32_t temporal;
    };
    std::vector<RawEvent> events;
    std::vector<std::vector<double>> streams(spec.clusters);
    for (std::size_t c = 0; c < spec.clusters; ++c) {
        auto times = simulate_hawkes(spec.mu, weights, spec.basis, spec.window, rng);
        auto& stream = streams[c];
        stream.reserve(times.size());
        for (double t : times) {
            const double shifted = t + shift * static_cast<double>(c);
            stream.push_back(shifted);
            events.push_back({shifted, static_cast<std::int32_t>(c)});
        }
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const RawEvent& a, const RawEvent& b) { return a.time < b.time; });

    LabeledCorpus corpus;
    const auto shared =
        static_cast<std::size_t>(std::llround(spec.textual_overlap * static_cast<double>(spec.vocab_size)));
    corpus.global_vocab_size = shared + spec.clusters * (spec.vocab_size - shared);
    corpus.documents.reserve(events.size());
    corpus.textual_labels.reserve(events.size());
    corpus.temporal_labels.reserve(events.size());

    for (std::size_t i = 0; i < events.size(); ++i) {
        std::int32_t textual = events[i].temporal;
        if (spec.decorrelation > 0.0 && rng.uniform() < spec.decorrelation)
            textual = static_cast<std::int32_t>(rng.uniform_index(spec.clusters));

        Document doc;
        doc.id = static_cast<std::int64_t>(i);
        doc.time = events[i].time;
        const auto& vocab = vocabularies[static_cast<std::size_t>(textual)];
        for (std::size_t w = 0; w < spec.words_per_doc; ++w)
            doc.counts.add(vocab[rng.uniform_index(vocab.size())]);

        corpus.documents.push_back(std::move(doc));
        corpus.textual_labels.push_back(textual);
        corpus.temporal_labels.push_back(events[i].temporal);
    }

    if (spec.clusters == 2) {
        corpus.realized_intensity_overlap = measured_intensity_overlap(
            streams[0], streams[1], spec.basis, weights, spec.basis.horizon / 64.0);
    }
    return corpus;
}

std::string token_name(std::int32_t word_index) {
    return "w" + std::to_string(word_index);
}

} // namespace pdhp
