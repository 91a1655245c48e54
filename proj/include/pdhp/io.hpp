#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pdhp/datagen.hpp"
#include "pdhp/document.hpp"
#include "pdhp/evaluation.hpp"
#include "pdhp/inference.hpp"

namespace pdhp {

// Shortest decimal that round-trips the double exactly.
std::string format_double(double v);

// Corpus file: one document per line,
//   <doc id> TAB <timestamp> TAB <space-separated tokens>
// Timestamps are kept as decimal text; file order is preserved (ties stay in
// file order). Tokens are normalized (lowercased, punctuation-stripped) on
// read and indexed against a vocabulary built in first-appearance order.
void write_corpus(const std::string& path, const LabeledCorpus& corpus);
Corpus read_corpus(const std::string& path);

// Labels file: <doc id> TAB <textual label> TAB <temporal label>
struct LabelsFile {
    std::vector<std::int64_t> ids;
    std::vector<std::int32_t> textual;
    std::vector<std::int32_t> temporal;
};
void write_labels(const std::string& path, const LabeledCorpus& corpus);
LabelsFile read_labels(const std::string& path);

// Assignments file: <doc id> TAB <cluster id>
struct AssignmentsFile {
    std::vector<std::int64_t> ids;
    std::vector<std::int32_t> clusters;
};
void write_assignments(const std::string& path, std::span<const std::int64_t> ids,
                       std::span<const std::int32_t> clusters);
AssignmentsFile read_assignments(const std::string& path);

// Per-cluster intensity sampled on a uniform time grid, CSV
// "cluster,t,intensity" covering [0, last event + horizon].
struct IntensityGridRow {
    std::int32_t cluster = 0;
    double t = 0.0;
    double intensity = 0.0;
};
void write_intensity_grid(const std::string& path, std::span<const ClusterSummary> clusters,
                          const KernelBasis& basis, std::size_t grid_points);
std::vector<IntensityGridRow> read_intensity_grid(const std::string& path);

// Metrics report as JSON.
void write_metrics(const std::string& path, const MetricsReport& report,
                   const std::string& config_hash, std::uint64_t seed);

// Fit metadata as JSON: seed, config hash, particle weights, and a tabular
// per-cluster summary (size, kernel weights, top words by count).
void write_fit_metadata(const std::string& path, const ClusteringResult& result,
                        const Corpus& corpus, const std::string& config_hash,
                        std::size_t top_words = 20);

// Sweep tables, CSV with a header row.
void write_sweep_rows(const std::string& path, const SweepTable& table);
void write_sweep_points(const std::string& path, const SweepTable& table);

} // namespace pdhp
