#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdhp/datagen.hpp"
#include "pdhp/inference.hpp"

namespace pdhp {

enum class NmiVariant { geometric, arithmetic, min, max };

NmiVariant nmi_variant_from_string(const std::string& name);

// Normalized mutual information of two labelings (natural logs, plug-in
// entropies, geometric-mean normalization by default). Conventions: one
// constant labeling against a non-constant one scores 0; two constant
// labelings are the same trivial partition and score 1.
double nmi(std::span<const std::int32_t> labels_a, std::span<const std::int32_t> labels_b,
           NmiVariant variant = NmiVariant::geometric);

// Scores one clustering against both ground truths.
struct MetricsReport {
    double nmi_textual = 0.0;
    double nmi_temporal = 0.0;
    double nmi_diff = 0.0; // temporal - textual
    std::size_t clusters_found = 0;
    std::size_t documents = 0;
    std::optional<double> realized_intensity_overlap;
};

MetricsReport score_clustering(std::span<const std::int32_t> assignments,
                               std::span<const std::int32_t> textual_labels,
                               std::span<const std::int32_t> temporal_labels,
                               NmiVariant variant = NmiVariant::geometric);

// One generate-fit-score run per grid point and seed. The generation seed
// depends on the overlap/decorrelation point and the seed index but not on
// r, so different r values see the same datasets.
struct SweepGrid {
    std::vector<double> r_values{0.0, 0.5, 1.0, 2.0, 4.0};
    std::vector<double> textual_overlaps{0.0};
    std::vector<double> intensity_overlaps{0.0};
    std::vector<double> decorrelations{0.0};
    std::size_t seeds_per_point = 10;
};

struct SweepRow {
    double r = 0.0;
    double textual_overlap = 0.0;
    double intensity_overlap = 0.0;
    double decorrelation = 0.0;
    std::size_t seed_index = 0;
    std::uint64_t generation_seed = 0;
    std::size_t documents = 0;
    std::size_t clusters_found = 0;
    std::optional<double> realized_intensity_overlap;
    double nmi_textual = 0.0;
    double nmi_temporal = 0.0;
    double nmi_diff = 0.0;
    std::string status = "ok"; // error text when a run failed
};

struct SweepAggregate {
    double r = 0.0;
    double textual_overlap = 0.0;
    double intensity_overlap = 0.0;
    double decorrelation = 0.0;
    std::size_t runs_ok = 0;
    std::size_t runs_failed = 0;
    double mean_nmi_textual = 0.0;
    double mean_nmi_temporal = 0.0;
    double mean_nmi_diff = 0.0;
};

struct SweepTable {
    std::vector<SweepRow> rows;          // one per run, grid order
    std::vector<SweepAggregate> points;  // one per grid point
};

SweepTable run_sweep(const SweepGrid& grid, const GenerationSpec& base_spec,
                     const FitConfig& base_fit, NmiVariant variant = NmiVariant::geometric,
                     std::size_t threads = 1);

} // namespace pdhp
