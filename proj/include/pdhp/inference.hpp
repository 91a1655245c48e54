#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "pdhp/document.hpp"
#include "pdhp/dynamics.hpp"
#include "pdhp/kernel.hpp"
#include "pdhp/language_model.hpp"
#include "pdhp/prior.hpp"
#include "pdhp/rng.hpp"

namespace pdhp {

struct FitConfig {
    PriorParams prior;
    DmParams dm; // dm.vocab_size == 0 means "take it from the corpus"
    KernelBasis basis = KernelBasis::make_default();
    std::size_t particles = 8;
    double ess_threshold = 0.5; // resample when ESS < threshold * particles
    std::size_t candidates = 8; // weight candidates per new cluster
    std::pair<double, double> candidate_scale_range{0.05, 5.0};
    std::uint64_t seed = 42;
    enum class Mode { sample, greedy } mode = Mode::sample;
    std::size_t threads = 1;

    void validate() const;
};

// Temporal and textual state of one cluster inside a particle.
struct ClusterState {
    ClusterDynamics dynamics;
    ClusterWordCounts words;
};

// One allocation hypothesis: cluster states keyed by id, the assignment
// history, and an importance weight. Cluster ids grow monotonically from 1
// and are never reused.
struct Particle {
    std::vector<std::int32_t> assignments;
    std::map<std::int32_t, ClusterState> clusters;
    double log_weight = 0.0;
    std::int32_t next_cluster_id = 1;
    double last_time = -std::numeric_limits<double>::infinity();
};

struct ClusterSummary {
    std::int32_t id = 0;
    std::size_t document_count = 0;
    std::vector<double> event_times;
    std::vector<double> active_weights;
    ClusterWordCounts words;
};

struct ClusteringResult {
    std::vector<std::int32_t> assignments; // from the max-weight particle
    std::vector<ClusterSummary> clusters;
    std::vector<double> particle_log_weights;
    std::uint64_t seed = 0;
};

// Normalized log posterior over the particle's existing clusters (ascending
// id order) plus a final new-cluster entry: textual predictive times the
// intensity-based prior. Throws data_error on out-of-order timestamps.
std::vector<double> posterior_over_clusters(const Particle& particle, const Document& doc,
                                            const FitConfig& config);

// Processes one document within one particle: samples (or argmaxes) the
// cluster, updates its dynamics and word counts, and accumulates the
// document's marginal likelihood into the particle weight.
void step(Particle& particle, const Document& doc, const FitConfig& config, Rng& rng);

// (sum w)^2 / sum w^2 on normalized weights. Throws data_error when every
// weight is -inf.
double effective_sample_size(std::span<const double> log_weights);

// Systematic resampling by particle weight; returns equal-weight deep copies.
std::vector<Particle> resample(const std::vector<Particle>& particles, Rng& rng);

// Streams the corpus once through the particle filter: per document, a step
// on every particle followed by conditional resampling. The corpus must be
// sorted by timestamp (ties keep file order). Returns the result of the
// max-weight particle.
ClusteringResult fit(const Corpus& corpus, const FitConfig& config);

// Rebuilds per-cluster dynamics from a fixed document-to-cluster assignment
// by replaying each cluster's event times through the candidate-MAP weight
// estimator. Used to export intensities for an existing assignments file.
std::vector<ClusterSummary> replay_clusters(const Corpus& corpus,
                                            std::span<const std::int32_t> assignments,
                                            const FitConfig& config);

} // namespace pdhp
