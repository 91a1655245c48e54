#include "pdhp/inference.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "pdhp/errors.hpp"
#include "pdhp/parallel.hpp"

namespace pdhp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(std::span<const double> v) {
    double m = kNegInf;
    for (double x : v) m = std::max(m, x);
    if (m == kNegInf) return kNegInf;
    double acc = 0.0;
    for (double x : v)
        if (x != kNegInf) acc += std::exp(x - m);
    return m + std::log(acc);
}

// Unnormalized combined log scores plus the document's log marginal.
struct PosteriorTerms {
    std::vector<double> log_scores; // K existing + 1 new, unnormalized
    double log_marginal = 0.0;
};

PosteriorTerms posterior_terms(const Particle& particle, const Document& doc,
                               const FitConfig& config) {
    if (doc.time < particle.last_time)
        throw data_error("step: document timestamps out of order");

    const std::size_t k = particle.clusters.size();
    std::vector<double> intensities;
    intensities.reserve(k);
    for (const auto& [id, state] : particle.clusters)
        intensities.push_back(intensity(state.dynamics, config.basis, doc.time));

    std::vector<double> scores = log_pdhp_prior(intensities, config.prior);

    std::size_t c = 0;
    for (const auto& [id, state] : particle.clusters)
        scores[c++] += dm_log_predictive(state.words, doc.counts, config.dm);
    scores[k] += dm_log_predictive(ClusterWordCounts{}, doc.counts, config.dm);

    PosteriorTerms terms;
    terms.log_marginal = log_sum_exp(scores);
    terms.log_scores = std::move(scores);
    return terms;
}

std::size_t pick_cluster(const PosteriorTerms& terms, const FitConfig& config, Rng& rng) {
    const auto& s = terms.log_scores;
    if (config.mode == FitConfig::Mode::greedy) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < s.size(); ++i)
            if (s[i] > s[best]) best = i;
        return best;
    }
    const double u = rng.uniform();
    double cum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == kNegInf) continue;
        cum += std::exp(s[i] - terms.log_marginal);
        if (u < cum) return i;
    }
    return s.size() - 1; // guard against rounding in the cumulative sum
}

} // namespace

void FitConfig::validate() const {
    prior.validate();
    basis.validate();
    if (particles < 1) throw config_error("fit: particle count must be >= 1");
    if (!(ess_threshold > 0.0) || !(ess_threshold <= 1.0))
        throw config_error("fit: ESS threshold must be in (0, 1]");
    if (candidates < 1) throw config_error("fit: candidate count must be >= 1");
    if (!(candidate_scale_range.first > 0.0) ||
        !(candidate_scale_range.second >= candidate_scale_range.first))
        throw config_error("fit: invalid candidate scale range");
    dm.validate();
}

std::vector<double> posterior_over_clusters(const Particle& particle, const Document& doc,
                                            const FitConfig& config) {
    auto terms = posterior_terms(particle, doc, config);
    for (auto& v : terms.log_scores) v -= terms.log_marginal;
    return std::move(terms.log_scores);
}

void step(Particle& particle, const Document& doc, const FitConfig& config, Rng& rng) {
    const auto terms = posterior_terms(particle, doc, config);
    const std::size_t choice = pick_cluster(terms, config, rng);

    std::int32_t cluster_id;
    ClusterState* state;
    if (choice == particle.clusters.size()) {
        cluster_id = particle.next_cluster_id++;
        auto candidates = sample_candidates(config.candidate_scale_range, config.candidates,
                                            config.basis.size(), rng);
        // largest total weight first: a fresh cluster starts optimistic, and
        // ties in the running log-likelihood resolve to the lowest index
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const auto& a, const auto& b) {
                             return std::accumulate(a.begin(), a.end(), 0.0) >
                                    std::accumulate(b.begin(), b.end(), 0.0);
                         });
        state = &particle.clusters.emplace(cluster_id, ClusterState{ClusterDynamics(std::move(candidates)), {}})
                     .first->second;
    } else {
        auto it = particle.clusters.begin();
        std::advance(it, static_cast<std::ptrdiff_t>(choice));
        cluster_id = it->first;
        state = &it->second;
    }

    update_dynamics(state->dynamics, config.basis, doc.time);
    update_counts(state->words, doc.counts);
    particle.assignments.push_back(cluster_id);
    particle.log_weight += terms.log_marginal;
    particle.last_time = doc.time;
}

double effective_sample_size(std::span<const double> log_weights) {
    double m = kNegInf;
    for (double lw : log_weights) m = std::max(m, lw);
    if (m == kNegInf) throw data_error("effective_sample_size: all weights are zero");
    double sum = 0.0, sum_sq = 0.0;
    for (double lw : log_weights) {
        if (lw == kNegInf) continue;
        const double w = std::exp(lw - m);
        sum += w;
        sum_sq += w * w;
    }
    return sum * sum / sum_sq;
}

std::vector<Particle> resample(const std::vector<Particle>& particles, Rng& rng) {
    const std::size_t p = particles.size();
    std::vector<double> log_weights(p);
    for (std::size_t i = 0; i < p; ++i) log_weights[i] = particles[i].log_weight;
    double m = kNegInf;
    for (double lw : log_weights) m = std::max(m, lw);
    if (m == kNegInf) throw data_error("resample: all weights are zero");

    std::vector<double> cumulative(p);
    double acc = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        acc += log_weights[i] == kNegInf ? 0.0 : std::exp(log_weights[i] - m);
        cumulative[i] = acc;
    }

    const double u = rng.uniform();
    std::vector<Particle> out;
    out.reserve(p);
    std::size_t j = 0;
    for (std::size_t i = 0; i < p; ++i) {
        const double target = (static_cast<double>(i) + u) / static_cast<double>(p) * acc;
        while (j + 1 < p && cumulative[j] <= target) ++j;
        out.push_back(particles[j]);
        out.back().log_weight = 0.0;
    }
    return out;
}

ClusteringResult fit(const Corpus& corpus, const FitConfig& config) {
    FitConfig cfg = config;
    // a corpus of tokenless documents still fits on the temporal factor alone
    if (cfg.dm.vocab_size == 0)
        cfg.dm.vocab_size = std::max<std::size_t>(1, corpus.vocabulary.size());
    cfg.validate();
    if (!corpus.sorted_by_time())
        throw data_error("fit: corpus is not sorted by timestamp");

    const std::size_t p = cfg.particles;
    std::vector<Particle> particles(p);
    std::vector<Rng> rngs;
    rngs.reserve(p);
    for (std::size_t i = 0; i < p; ++i) rngs.emplace_back(derive_seed(cfg.seed, 1000 + i));
    Rng resample_rng(derive_seed(cfg.seed, 999));

    std::vector<double> log_weights(p);
    for (const Document& doc : corpus.documents) {
        parallel_for_index(p, cfg.threads,
                           [&](std::size_t i) { step(particles[i], doc, cfg, rngs[i]); });
        for (std::size_t i = 0; i < p; ++i) log_weights[i] = particles[i].log_weight;
        if (effective_sample_size(log_weights) <
            cfg.ess_threshold * static_cast<double>(p)) {
            particles = resample(particles, resample_rng);
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < p; ++i)
        if (particles[i].log_weight > particles[best].log_weight) best = i;

    ClusteringResult result;
    result.seed = cfg.seed;
    result.assignments = particles[best].assignments;
    result.particle_log_weights.resize(p);
    for (std::size_t i = 0; i < p; ++i)
        result.particle_log_weights[i] = particles[i].log_weight;
    for (const auto& [id, state] : particles[best].clusters) {
        ClusterSummary summary;
        summary.id = id;
        summary.document_count = state.dynamics.event_times().size();
        summary.event_times = state.dynamics.event_times();
        summary.active_weights = state.dynamics.active_weights();
        summary.words = state.words;
        result.clusters.push_back(std::move(summary));
    }
    return result;
}

std::vector<ClusterSummary> replay_clusters(const Corpus& corpus,
                                            std::span<const std::int32_t> assignments,
                                            const FitConfig& config) {
    FitConfig cfg = config;
    if (cfg.dm.vocab_size == 0)
        cfg.dm.vocab_size = std::max<std::size_t>(1, corpus.vocabulary.size());
    cfg.validate();
    if (assignments.size() != corpus.documents.size())
        throw data_error("replay_clusters: assignment and corpus lengths differ");
    if (!corpus.sorted_by_time())
        throw data_error("replay_clusters: corpus is not sorted by timestamp");

    std::map<std::int32_t, ClusterState> clusters;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        const std::int32_t id = assignments[i];
        auto it = clusters.find(id);
        if (it == clusters.end()) {
            Rng rng(derive_seed(cfg.seed, 5000 + static_cast<std::uint64_t>(id)));
            auto candidates = sample_candidates(cfg.candidate_scale_range, cfg.candidates,
                                                cfg.basis.size(), rng);
            std::stable_sort(candidates.begin(), candidates.end(),
                             [](const auto& a, const auto& b) {
                                 return std::accumulate(a.begin(), a.end(), 0.0) >
                                        std::accumulate(b.begin(), b.end(), 0.0);
                             });
            it = clusters.emplace(id, ClusterState{ClusterDynamics(std::move(candidates)), {}})
                     .first;
        }
        update_dynamics(it->second.dynamics, cfg.basis, corpus.documents[i].time);
        update_counts(it->second.words, corpus.documents[i].counts);
    }

    std::vector<ClusterSummary> out;
    out.reserve(clusters.size());
    for (const auto& [id, state] : clusters) {
        ClusterSummary summary;
        summary.id = id;
        summary.document_count = state.dynamics.event_times().size();
        summary.event_times = state.dynamics.event_times();
        summary.active_weights = state.dynamics.active_weights();
        summary.words = state.words;
        out.push_back(std::move(summary));
    }
    return out;
}

} // namespace pdhp
