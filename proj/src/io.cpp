#include "pdhp/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pdhp/errors.hpp"

namespace pdhp {

namespace {

std::string location(const std::string& path, std::size_t line_no) {
    return path + ":" + std::to_string(line_no) + ": ";
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open for reading: " + path);
    return in;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::int64_t parse_int(const std::string& s, const std::string& where) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw data_error(where + "expected an integer, got '" + s + "'");
    }
    if (used != s.size()) throw data_error(where + "expected an integer, got '" + s + "'");
    return v;
}

double parse_time(const std::string& s, const std::string& where) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw data_error(where + "expected a decimal timestamp, got '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v))
        throw data_error(where + "expected a decimal timestamp, got '" + s + "'");
    return v;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_double(double v) {
    if (std::isnan(v)) return "";
    return format_double(v);
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;
}

void write_corpus(const std::string& path, const LabeledCorpus& corpus) {
    auto out = open_out(path);
    for (const auto& doc : corpus.documents) {
        out << doc.id << '\t' << format_double(doc.time) << '\t';
        std::vector<std::pair<std::int32_t, std::int32_t>> words(doc.counts.per_word.begin(),
                                                                 doc.counts.per_word.end());
        std::sort(words.begin(), words.end());
        bool first = true;
        for (const auto& [word, count] : words)
            for (std::int32_t k = 0; k < count; ++k) {
                if (!first) out << ' ';
                out << token_name(word);
                first = false;
            }
        out << '\n';
    }
}

Corpus read_corpus(const std::string& path) {
    auto in = open_in(path);
    Corpus corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto where = location(path, line_no);
        const auto fields = split(line, '\t');
        if (fields.size() < 2 || fields.size() > 3)
            throw data_error(where + "expected 'id TAB timestamp TAB tokens'");
        Document doc;
        doc.id = parse_int(fields[0], where);
        doc.time = parse_time(fields[1], where);
        if (fields.size() == 3 && !fields[2].empty()) {
            for (const auto& raw : split(fields[2], ' ')) {
                if (raw.empty()) continue;
                const std::string token = normalize_token(raw);
                if (token.empty()) continue;
                doc.counts.add(corpus.vocabulary.add(token));
            }
        }
        corpus.documents.push_back(std::move(doc));
    }
    return corpus;
}

void write_labels(const std::string& path, const LabeledCorpus& corpus) {
    auto out = open_out(path);
    for (std::size_t i = 0; i < corpus.documents.size(); ++i)
        out << corpus.documents[i].id << '\t' << corpus.textual_labels[i] << '\t'
            << corpus.temporal_labels[i] << '\n';
}

LabelsFile read_labels(const std::string& path) {
    auto in = open_in(path);
    LabelsFile labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto where = location(path, line_no);
        const auto fields = split(line, '\t');
        if (fields.size() != 3)
            throw data_error(where + "expected 'id TAB textual TAB temporal'");
        labels.ids.push_back(parse_int(fields[0], where));
        labels.textual.push_back(static_cast<std::int32_t>(parse_int(fields[1], where)));
        labels.temporal.push_back(static_cast<std::int32_t>(parse_int(fields[2], where)));
    }
    return labels;
}

void write_assignments(const std::string& path, std::span<const std::int64_t> ids,
                       std::span<const std::int32_t> clusters) {
    if (ids.size() != clusters.size())
        throw data_error("write_assignments: id/cluster length mismatch");
    auto out = open_out(path);
    for (std::size_t i = 0; i < ids.size(); ++i)
        out << ids[i] << '\t' << clusters[i] << '\n';
}

AssignmentsFile read_assignments(const std::string& path) {
    auto in = open_in(path);
    AssignmentsFile assignments;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto where = location(path, line_no);
        const auto fields = split(line, '\t');
        if (fields.size() != 2) throw data_error(where + "expected 'id TAB cluster'");
        assignments.ids.push_back(parse_int(fields[0], where));
        assignments.clusters.push_back(static_cast<std::int32_t>(parse_int(fields[1], where)));
    }
    return assignments;
}

void write_intensity_grid(const std::string& path, std::span<const ClusterSummary> clusters,
                          const KernelBasis& basis, std::size_t grid_points) {
    if (grid_points < 2) throw config_error("intensity grid needs at least 2 points");
    double t_max = 0.0;
    for (const auto& c : clusters)
        if (!c.event_times.empty()) t_max = std::max(t_max, c.event_times.back());
    t_max += basis.horizon;

    auto out = open_out(path);
    out << "cluster,t,intensity\n";
    const double step = t_max / static_cast<double>(grid_points - 1);
    for (const auto& c : clusters) {
        for (std::size_t j = 0; j < grid_points; ++j) {
            const double t = step * static_cast<double>(j);
            const double lam = intensity(c.event_times, basis, c.active_weights, t);
            out << c.id << ',' << format_double(t) << ',' << format_double(lam) << '\n';
        }
    }
}

std::vector<IntensityGridRow> read_intensity_grid(const std::string& path) {
    auto in = open_in(path);
    std::vector<IntensityGridRow> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line_no == 1) continue; // header
        const auto where = location(path, line_no);
        const auto fields = split(line, ',');
        if (fields.size() != 3) throw data_error(where + "expected 'cluster,t,intensity'");
        IntensityGridRow row;
        row.cluster = static_cast<std::int32_t>(parse_int(fields[0], where));
        row.t = parse_time(fields[1], where);
        row.intensity = parse_time(fields[2], where);
        rows.push_back(row);
    }
    return rows;
}

void write_metrics(const std::string& path, const MetricsReport& report,
                   const std::string& config_hash, std::uint64_t seed) {
    nlohmann::json j;
    j["nmi_textual"] = report.nmi_textual;
    j["nmi_temporal"] = report.nmi_temporal;
    j["nmi_diff"] = report.nmi_diff;
    j["clusters_found"] = report.clusters_found;
    j["documents"] = report.documents;
    if (report.realized_intensity_overlap)
        j["realized_intensity_overlap"] = *report.realized_intensity_overlap;
    else
        j["realized_intensity_overlap"] = nullptr;
    j["config_hash"] = config_hash;
    j["seed"] = seed;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_fit_metadata(const std::string& path, const ClusteringResult& result,
                        const Corpus& corpus, const std::string& config_hash,
                        std::size_t top_words) {
    nlohmann::json j;
    j["seed"] = result.seed;
    j["config_hash"] = config_hash;
    j["documents"] = result.assignments.size();
    j["clusters_found"] = result.clusters.size();
    j["particle_log_weights"] = result.particle_log_weights;

    nlohmann::json clusters = nlohmann::json::array();
    for (const auto& c : result.clusters) {
        nlohmann::json jc;
        jc["id"] = c.id;
        jc["documents"] = c.document_count;
        jc["total_words"] = c.words.total;
        jc["kernel_weights"] = c.active_weights;
        if (!c.event_times.empty()) {
            jc["first_event"] = c.event_times.front();
            jc["last_event"] = c.event_times.back();
        }
        std::vector<std::pair<std::int32_t, std::int32_t>> words(c.words.per_word.begin(),
                                                                 c.words.per_word.end());
        std::sort(words.begin(), words.end(), [](const auto& a, const auto& b) {
            return a.second != b.second ? a.second > b.second : a.first < b.first;
        });
        if (words.size() > top_words) words.resize(top_words);
        nlohmann::json jw = nlohmann::json::array();
        for (const auto& [word, count] : words) {
            const bool known = static_cast<std::size_t>(word) < corpus.vocabulary.size();
            jw.push_back({{"token", known ? corpus.vocabulary.token(word) : token_name(word)},
                          {"count", count}});
        }
        jc["top_words"] = std::move(jw);
        clusters.push_back(std::move(jc));
    }
    j["clusters"] = std::move(clusters);
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_sweep_rows(const std::string& path, const SweepTable& table) {
    auto out = open_out(path);
    out << "r,textual_overlap,intensity_overlap,decorrelation,seed_index,generation_seed,"
           "documents,clusters_found,realized_intensity_overlap,nmi_textual,nmi_temporal,"
           "nmi_diff,status\n";
    for (const auto& row : table.rows) {
        out << format_double(row.r) << ',' << format_double(row.textual_overlap) << ','
            << format_double(row.intensity_overlap) << ',' << format_double(row.decorrelation)
            << ',' << row.seed_index << ',' << row.generation_seed << ',' << row.documents << ','
            << row.clusters_found << ','
            << (row.realized_intensity_overlap ? format_double(*row.realized_intensity_overlap)
                                               : std::string{})
            << ',' << csv_double(row.nmi_textual) << ',' << csv_double(row.nmi_temporal) << ','
            << csv_double(row.nmi_diff) << ',' << csv_escape(row.status) << '\n';
    }
}

void write_sweep_points(const std::string& path, const SweepTable& table) {
    auto out = open_out(path);
    out << "r,textual_overlap,intensity_overlap,decorrelation,runs_ok,runs_failed,"
           "mean_nmi_textual,mean_nmi_temporal,mean_nmi_diff\n";
    for (const auto& p : table.points) {
        out << format_double(p.r) << ',' << format_double(p.textual_overlap) << ','
            << format_double(p.intensity_overlap) << ',' << format_double(p.decorrelation) << ','
            << p.runs_ok << ',' << p.runs_failed << ',' << csv_double(p.mean_nmi_textual) << ','
            << csv_double(p.mean_nmi_temporal) << ',' << csv_double(p.mean_nmi_diff) << '\n';
    }
}

} // namespace pdhp
