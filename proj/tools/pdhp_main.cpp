#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pdhp/config.hpp"
#include "pdhp/datagen.hpp"
#include "pdhp/errors.hpp"
#include "pdhp/evaluation.hpp"
#include "pdhp/inference.hpp"
#include "pdhp/io.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<double> r;
    std::optional<std::size_t> particles;
    std::optional<std::size_t> threads;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "key = value configuration file");
    cmd->add_option("--seed", opts.seed, "override the config seed");
    cmd->add_option("--r", opts.r, "override the prior power r");
    cmd->add_option("--particles", opts.particles, "override the particle count");
    cmd->add_option("--threads", opts.threads, "override the worker thread count");
}

pdhp::RunConfig resolve_config(const CommonOptions& opts) {
    pdhp::RunConfig cfg;
    if (!opts.config_path.empty()) cfg = pdhp::load_config_file(opts.config_path);
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.r) cfg.r = *opts.r;
    if (opts.particles) cfg.particles = *opts.particles;
    if (opts.threads) cfg.threads = std::max<std::size_t>(1, *opts.threads);
    return cfg;
}

void ensure_directory(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw pdhp::data_error("cannot create output directory: " + dir);
}

int cmd_generate(const CommonOptions& opts, const std::string& out_dir) {
    const auto cfg = resolve_config(opts);
    const auto spec = cfg.generation_spec();
    pdhp::Rng rng(spec.seed);
    const auto corpus = pdhp::generate_corpus(spec, rng);
    ensure_directory(out_dir);
    pdhp::write_corpus(out_dir + "/corpus.tsv", corpus);
    pdhp::write_labels(out_dir + "/labels.tsv", corpus);
    std::cout << "generated " << corpus.documents.size() << " documents"
              << (corpus.realized_intensity_overlap
                      ? " (intensity overlap " +
                            pdhp::format_double(*corpus.realized_intensity_overlap) + ")"
                      : std::string{})
              << "\n";
    return 0;
}

int cmd_fit(const CommonOptions& opts, const std::string& corpus_path,
            const std::string& out_dir) {
    const auto cfg = resolve_config(opts);
    const auto corpus = pdhp::read_corpus(corpus_path);
    if (!corpus.sorted_by_time())
        throw pdhp::data_error(corpus_path + ": corpus is not sorted by timestamp");

    const auto result = pdhp::fit(corpus, cfg.fit_config());

    ensure_directory(out_dir);
    std::vector<std::int64_t> ids;
    ids.reserve(corpus.documents.size());
    for (const auto& doc : corpus.documents) ids.push_back(doc.id);
    pdhp::write_assignments(out_dir + "/assignments.tsv", ids, result.assignments);
    pdhp::write_intensity_grid(out_dir + "/intensity.csv", result.clusters, cfg.basis(),
                               cfg.grid_points);
    pdhp::write_fit_metadata(out_dir + "/metadata.json", result, corpus, cfg.hash());
    std::cout << "fit " << corpus.documents.size() << " documents into "
              << result.clusters.size() << " clusters\n";
    return 0;
}

int cmd_evaluate(const CommonOptions& opts, const std::string& assignments_path,
                 const std::string& labels_path, const std::string& out_path) {
    const auto cfg = resolve_config(opts);
    const auto assignments = pdhp::read_assignments(assignments_path);
    const auto labels = pdhp::read_labels(labels_path);
    if (assignments.ids.size() != labels.ids.size())
        throw pdhp::data_error("evaluate: assignments and labels have different lengths");
    for (std::size_t i = 0; i < assignments.ids.size(); ++i)
        if (assignments.ids[i] != labels.ids[i])
            throw pdhp::data_error("evaluate: doc id mismatch at row " + std::to_string(i + 1));

    const auto report = pdhp::score_clustering(assignments.clusters, labels.textual,
                                               labels.temporal, cfg.variant());
    pdhp::write_metrics(out_path, report, cfg.hash(), cfg.seed);
    std::cout << "nmi_textual " << pdhp::format_double(report.nmi_textual) << ", nmi_temporal "
              << pdhp::format_double(report.nmi_temporal) << "\n";
    return 0;
}

int cmd_sweep(const CommonOptions& opts, const std::string& out_dir) {
    const auto cfg = resolve_config(opts);
    const auto table = pdhp::run_sweep(cfg.sweep_grid(), cfg.generation_spec(),
                                       cfg.fit_config(), cfg.variant(), cfg.threads);
    ensure_directory(out_dir);
    pdhp::write_sweep_rows(out_dir + "/runs.csv", table);
    pdhp::write_sweep_points(out_dir + "/points.csv", table);
    std::size_t failed = 0;
    for (const auto& row : table.rows)
        if (row.status != "ok") ++failed;
    std::cout << "sweep finished: " << table.rows.size() << " runs, " << failed
              << " failed\n";
    return 0;
}

int cmd_export_intensity(const CommonOptions& opts, const std::string& corpus_path,
                         const std::string& assignments_path, const std::string& out_path) {
    const auto cfg = resolve_config(opts);
    const auto corpus = pdhp::read_corpus(corpus_path);
    const auto assignments = pdhp::read_assignments(assignments_path);
    if (assignments.ids.size() != corpus.documents.size())
        throw pdhp::data_error("export-intensity: assignments and corpus lengths differ");
    for (std::size_t i = 0; i < assignments.ids.size(); ++i)
        if (assignments.ids[i] != corpus.documents[i].id)
            throw pdhp::data_error("export-intensity: doc id mismatch at row " +
                                   std::to_string(i + 1));
    const auto clusters =
        pdhp::replay_clusters(corpus, assignments.clusters, cfg.fit_config());
    pdhp::write_intensity_grid(out_path, clusters, cfg.basis(), cfg.grid_points);
    std::cout << "exported intensities of " << clusters.size() << " clusters\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Powered Dirichlet-Hawkes streaming text clustering"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string corpus_path, assignments_path, labels_path, out;

    auto* generate = app.add_subcommand("generate", "generate a synthetic labeled corpus");
    add_common(generate, opts);
    generate->add_option("--out", out, "output directory")->required();

    auto* fit = app.add_subcommand("fit", "cluster a corpus with the particle filter");
    add_common(fit, opts);
    fit->add_option("--corpus", corpus_path, "corpus file")->required();
    fit->add_option("--out", out, "output directory")->required();

    auto* evaluate = app.add_subcommand("evaluate", "score assignments against labels");
    add_common(evaluate, opts);
    evaluate->add_option("--assignments", assignments_path, "assignments file")->required();
    evaluate->add_option("--labels", labels_path, "labels file")->required();
    evaluate->add_option("--out", out, "metrics output file")->required();

    auto* sweep = app.add_subcommand("sweep", "run the generate-fit-score grid");
    add_common(sweep, opts);
    sweep->add_option("--out", out, "output directory")->required();

    auto* export_intensity =
        app.add_subcommand("export-intensity", "intensity grid for fixed assignments");
    add_common(export_intensity, opts);
    export_intensity->add_option("--corpus", corpus_path, "corpus file")->required();
    export_intensity->add_option("--assignments", assignments_path, "assignments file")
        ->required();
    export_intensity->add_option("--out", out, "intensity output file")->required();

    try {
        app.parse(argc, argv);
        if (generate->parsed()) return cmd_generate(opts, out);
        if (fit->parsed()) return cmd_fit(opts, corpus_path, out);
        if (evaluate->parsed()) return cmd_evaluate(opts, assignments_path, labels_path, out);
        if (sweep->parsed()) return cmd_sweep(opts, out);
        if (export_intensity->parsed())
            return cmd_export_intensity(opts, corpus_path, assignments_path, out);
        std::cerr << "no command given\n";
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const pdhp::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const pdhp::data_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
