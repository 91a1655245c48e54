#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pdhp/datagen.hpp"
#include "pdhp/evaluation.hpp"
#include "pdhp/inference.hpp"

namespace pdhp {

// Flat key-value run configuration. Every key has a default; unknown keys
// are rejected. File syntax: one `key = value` per line, `#` starts a
// comment, lists are comma-separated.
struct RunConfig {
    // prior / model
    double r = 1.0;
    double lambda0 = 0.1;
    double alpha0 = 1.0;
    double theta0_word = 0.01;

    // kernel basis ("auto" bandwidths: half the minimum mean spacing;
    // "auto" horizon: max mean + 5 * max bandwidth)
    std::vector<double> kernel_means{3.0, 7.0, 11.0};
    std::vector<double> kernel_bandwidths; // empty = auto
    std::optional<double> kernel_horizon;  // empty = auto

    // particle filter
    std::size_t particles = 8;
    double ess_threshold = 0.5;
    std::size_t candidates = 8;
    double candidate_scale_min = 0.05;
    double candidate_scale_max = 5.0;
    std::string mode = "sample"; // or "greedy"
    std::size_t threads = 1;
    std::uint64_t seed = 42;

    // generation
    std::size_t clusters = 2;
    std::size_t vocab_size = 1000;
    std::size_t words_per_doc = 20;
    double textual_overlap = 0.0;
    double intensity_overlap = 0.0;
    double decorrelation = 0.0;
    double window = 100.0;
    double mu = 1.0;
    double weight_scale = 0.8;
    std::vector<double> gen_weights; // empty = derived from weight_scale

    // sweep grid
    std::vector<double> sweep_r{0.0, 0.5, 1.0, 2.0, 4.0};
    std::vector<double> sweep_textual_overlap{0.0};
    std::vector<double> sweep_intensity_overlap{0.0};
    std::vector<double> sweep_decorrelation{0.0};
    std::size_t sweep_seeds = 10;

    // evaluation / export
    std::string nmi_variant = "geometric";
    std::size_t grid_points = 200;

    // --- assembly -------------------------------------------------------
    KernelBasis basis() const;
    FitConfig fit_config() const;
    GenerationSpec generation_spec() const;
    SweepGrid sweep_grid() const;
    NmiVariant variant() const { return nmi_variant_from_string(nmi_variant); }

    // Applies one `key = value` pair; throws config_error on unknown keys or
    // unparseable values.
    void set(const std::string& key, const std::string& value);

    // Canonical text of the full configuration, one key per line.
    std::string canonical() const;

    // FNV-1a hash of the canonical text, minus execution-only keys
    // (threads), as fixed-width hex.
    std::string hash() const;
};

RunConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");
RunConfig load_config_file(const std::string& path);

} // namespace pdhp
