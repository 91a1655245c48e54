#include "pdhp/evaluation.hpp"

#include <algorithm>

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "pdhp/errors.hpp"
#include "pdhp/parallel.hpp"

namespace pdhp {

namespace {

std::map<std::int32_t, std::size_t> label_counts(std::span<const std::int32_t> labels) {
    std::map<std::int32_t, std::size_t> counts;
    for (auto v : labels) ++counts[v];
    return counts;
}

double entropy(const std::map<std::int32_t, std::size_t>& counts, double n) {
    double h = 0.0;
    for (const auto& [label, c] : counts) {
        const double p = static_cast<double>(c) / n;
        h -= p * std::log(p);
    }
    return h;
}

} // namespace

NmiVariant nmi_variant_from_string(const std::string& name) {
    if (name == "geometric") return NmiVariant::geometric;
    if (name == "arithmetic") return NmiVariant::arithmetic;
    if (name == "min") return NmiVariant::min;
    if (name == "max") return NmiVariant::max;
    throw config_error("unknown nmi variant: " + name);
}

double nmi(std::span<const std::int32_t> labels_a, std::span<const std::int32_t> labels_b,
           NmiVariant variant) {
    if (labels_a.size() != labels_b.size())
        throw data_error("nmi: labelings must have equal length");
    if (labels_a.empty()) throw data_error("nmi: empty labelings");

    // canonical argument order makes nmi(a, b) == nmi(b, a) bit-exact
    if (std::lexicographical_compare(labels_b.begin(), labels_b.end(), labels_a.begin(),
                                     labels_a.end()))
        std::swap(labels_a, labels_b);

    const double n = static_cast<double>(labels_a.size());
    const auto counts_a = label_counts(labels_a);
    const auto counts_b = label_counts(labels_b);
    const double h_a = entropy(counts_a, n);
    const double h_b = entropy(counts_b, n);

    // conventions for degenerate partitions
    if (h_a == 0.0 && h_b == 0.0) return 1.0; // both trivial, identical partitions
    if (h_a == 0.0 || h_b == 0.0) return 0.0;

    std::map<std::pair<std::int32_t, std::int32_t>, std::size_t> joint;
    for (std::size_t i = 0; i < labels_a.size(); ++i)
        ++joint[{labels_a[i], labels_b[i]}];

    double mi = 0.0;
    for (const auto& [pair, c] : joint) {
        const double p_ab = static_cast<double>(c) / n;
        const double p_a = static_cast<double>(counts_a.at(pair.first)) / n;
        const double p_b = static_cast<double>(counts_b.at(pair.second)) / n;
        mi += p_ab * std::log(p_ab / (p_a * p_b));
    }

    double norm = 0.0;
    switch (variant) {
        case NmiVariant::geometric: norm = std::sqrt(h_a * h_b); break;
        case NmiVariant::arithmetic: norm = 0.5 * (h_a + h_b); break;
        case NmiVariant::min: norm = std::min(h_a, h_b); break;
        case NmiVariant::max: norm = std::max(h_a, h_b); break;
    }
    return mi / norm;
}

MetricsReport score_clustering(std::span<const std::int32_t> assignments,
                               std::span<const std::int32_t> textual_labels,
                               std::span<const std::int32_t> temporal_labels,
                               NmiVariant variant) {
    MetricsReport report;
    report.documents = assignments.size();
    report.nmi_textual = nmi(assignments, textual_labels, variant);
    report.nmi_temporal = nmi(assignments, temporal_labels, variant);
    report.nmi_diff = report.nmi_temporal - report.nmi_textual;
    report.clusters_found = label_counts(assignments).size();
    return report;
}

SweepTable run_sweep(const SweepGrid& grid, const GenerationSpec& base_spec,
                     const FitConfig& base_fit, NmiVariant variant, std::size_t threads) {
    if (grid.r_values.empty() || grid.textual_overlaps.empty() ||
        grid.intensity_overlaps.empty() || grid.decorrelations.empty() ||
        grid.seeds_per_point == 0)
        throw config_error("sweep: every grid axis needs at least one value");

    struct RunPlan {
        SweepRow row;
        std::uint64_t fit_seed = 0;
    };
    std::vector<RunPlan> plans;
    for (std::size_t ir = 0; ir < grid.r_values.size(); ++ir)
        for (std::size_t it = 0; it < grid.textual_overlaps.size(); ++it)
            for (std::size_t ii = 0; ii < grid.intensity_overlaps.size(); ++ii)
                for (std::size_t id = 0; id < grid.decorrelations.size(); ++id)
                    for (std::size_t is = 0; is < grid.seeds_per_point; ++is) {
                        RunPlan plan;
                        plan.row.r = grid.r_values[ir];
                        plan.row.textual_overlap = grid.textual_overlaps[it];
                        plan.row.intensity_overlap = grid.intensity_overlaps[ii];
                        plan.row.decorrelation = grid.decorrelations[id];
                        plan.row.seed_index = is;
                        // same datasets for every r at a given point
                        std::uint64_t s = base_spec.seed;
                        s = derive_seed(s, 11 + it);
                        s = derive_seed(s, 23 + ii);
                        s = derive_seed(s, 37 + id);
                        s = derive_seed(s, 53 + is);
                        plan.row.generation_seed = s;
                        plan.fit_seed = derive_seed(s, 7001 + ir);
                        plans.push_back(std::move(plan));
                    }

    parallel_for_index(plans.size(), threads, [&](std::size_t i) {
        auto& plan = plans[i];
        auto& row = plan.row;
        try {
            GenerationSpec spec = base_spec;
            spec.textual_overlap = row.textual_overlap;
            spec.intensity_overlap = row.intensity_overlap;
            spec.decorrelation = row.decorrelation;
            spec.seed = row.generation_seed;
            Rng gen_rng(spec.seed);
            const LabeledCorpus labeled = generate_corpus(spec, gen_rng);

            Corpus corpus;
            corpus.documents = labeled.documents;

            FitConfig fit_cfg = base_fit;
            fit_cfg.prior.r = row.r;
            fit_cfg.seed = plan.fit_seed;
            fit_cfg.dm.vocab_size = labeled.global_vocab_size;
            fit_cfg.basis = spec.basis;
            const ClusteringResult result = fit(corpus, fit_cfg);

            const MetricsReport metrics = score_clustering(
                result.assignments, labeled.textual_labels, labeled.temporal_labels, variant);
            row.documents = metrics.documents;
            row.clusters_found = metrics.clusters_found;
            row.realized_intensity_overlap = labeled.realized_intensity_overlap;
            row.nmi_textual = metrics.nmi_textual;
            row.nmi_temporal = metrics.nmi_temporal;
            row.nmi_diff = metrics.nmi_diff;
            row.status = "ok";
        } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
            row.nmi_textual = row.nmi_temporal = row.nmi_diff =
                std::numeric_limits<double>::quiet_NaN();
        }
    });

    SweepTable table;
    table.rows.reserve(plans.size());
    for (auto& plan : plans) table.rows.push_back(std::move(plan.row));

    // one aggregate per grid point, in row order
    const std::size_t per_point = grid.seeds_per_point;
    for (std::size_t start = 0; start < table.rows.size(); start += per_point) {
        SweepAggregate agg;
        const auto& first = table.rows[start];
        agg.r = first.r;
        agg.textual_overlap = first.textual_overlap;
        agg.intensity_overlap = first.intensity_overlap;
        agg.decorrelation = first.decorrelation;
        double sum_text = 0.0, sum_temp = 0.0, sum_diff = 0.0;
        for (std::size_t i = start; i < start + per_point; ++i) {
            const auto& row = table.rows[i];
            if (row.status == "ok") {
                ++agg.runs_ok;
                sum_text += row.nmi_textual;
                sum_temp += row.nmi_temporal;
                sum_diff += row.nmi_diff;
            } else {
                ++agg.runs_failed;
            }
        }
        const double denom = agg.runs_ok > 0 ? static_cast<double>(agg.runs_ok)
                                             : std::numeric_limits<double>::quiet_NaN();
        agg.mean_nmi_textual = sum_text / denom;
        agg.mean_nmi_temporal = sum_temp / denom;
        agg.mean_nmi_diff = sum_diff / denom;
        table.points.push_back(agg);
    }
    return table;
}

} // namespace pdhp
