#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pdhp/document.hpp"
#include "pdhp/kernel.hpp"
#include "pdhp/rng.hpp"

namespace pdhp {

// Knobs of the two-ground-truth synthetic protocol: per-cluster Hawkes event
// streams whose activity windows overlap by a controlled amount, documents
// drawn from per-cluster vocabularies with a controlled shared fraction, and
// a decorrelation rate that re-draws the textual cluster of some documents.
struct GenerationSpec {
    std::size_t clusters = 2;
    std::size_t vocab_size = 1000;   // words per cluster vocabulary
    std::size_t words_per_doc = 20;
    double textual_overlap = 0.0;    // shared fraction of each vocabulary
    double intensity_overlap = 0.0;  // temporal overlap of activity windows
    double decorrelation = 0.0;      // probability of re-drawing the textual cluster
    double window = 100.0;           // length of each cluster's activity window
    double mu = 1.0;                 // immigrant rate inside a window
    std::vector<double> true_weights; // empty: derived from weight_scale
    double weight_scale = 0.8;       // branching ratio of the derived weights
    KernelBasis basis = KernelBasis::make_default();
    std::uint64_t seed = 42;

    void validate() const;
    // true_weights, or weight_scale split evenly across kernel masses
    std::vector<double> effective_weights() const;
};

struct LabeledCorpus {
    std::vector<Document> documents;
    std::vector<std::int32_t> textual_labels;
    std::vector<std::int32_t> temporal_labels;
    std::size_t global_vocab_size = 0;
    std::optional<double> realized_intensity_overlap;
};

// Exact sampling of a self-exciting stream on [0, T] by thinning, with the
// per-event peak kernel contribution as the dominating bound. seed_events
// (already inside [0, T] history, possibly negative times) excite the stream
// even when mu is zero. Throws config_error if the branching ratio is >= 1.
std::vector<double> simulate_hawkes(double mu, std::span<const double> weights,
                                    const KernelBasis& basis, double t_max, Rng& rng,
                                    std::span<const double> seed_events = {});

// Word-index sets of `clusters` vocabularies of `vocab_size` words each over
// a shared global index space; round(overlap * vocab_size) indices are common
// to all clusters, the rest are private.
std::vector<std::vector<std::int32_t>> build_vocabularies(std::size_t clusters,
                                                          std::size_t vocab_size,
                                                          double overlap);

// Overlap coefficient of two intensity trajectories on a regular grid:
// integral of min(a, b) over integral of max(a, b). Empty when both
// intensities vanish everywhere.
std::optional<double> measured_intensity_overlap(std::span<const double> events_a,
                                                 std::span<const double> events_b,
                                                 const KernelBasis& basis,
                                                 std::span<const double> weights,
                                                 double grid_step);

// Runs the full protocol: one Hawkes stream per cluster on shifted windows,
// textual labels decorrelated with probability `decorrelation`, words drawn
// uniformly with replacement from the textual cluster's vocabulary, merged
// into one time-sorted corpus carrying both label sets.
LabeledCorpus generate_corpus(const GenerationSpec& spec, Rng& rng);

// Token string for a generated word index ("w<index>").
std::string token_name(std::int32_t word_index);

} // namespace pdhp
