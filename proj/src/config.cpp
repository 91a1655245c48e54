#include "pdhp/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "pdhp/errors.hpp"
#include "pdhp/io.hpp"

namespace pdhp {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& value, const std::string& key) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw config_error("config key '" + key + "': expected a number, got '" + value + "'");
    }
    if (used != value.size() || !std::isfinite(v))
        throw config_error("config key '" + key + "': expected a number, got '" + value + "'");
    return v;
}

std::size_t parse_count(const std::string& value, const std::string& key) {
    const double v = parse_double(value, key);
    if (v < 0.0 || v != std::floor(v))
        throw config_error("config key '" + key + "': expected a nonnegative integer");
    return static_cast<std::size_t>(v);
}

std::uint64_t parse_seed(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        const auto v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw config_error("config key '" + key + "': expected an unsigned integer");
    }
}

std::vector<double> parse_list(const std::string& value, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw config_error("config key '" + key + "': empty list element");
        out.push_back(parse_double(item, key));
    }
    if (out.empty()) throw config_error("config key '" + key + "': empty list");
    return out;
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += format_double(v[i]);
    }
    return out;
}

} // namespace

KernelBasis RunConfig::basis() const {
    KernelBasis b;
    b.means = kernel_means;
    if (kernel_bandwidths.empty()) {
        if (b.means.size() == 1) {
            b.bandwidths = {1.0};
        } else {
            double min_spacing = std::numeric_limits<double>::infinity();
            for (std::size_t l = 1; l < b.means.size(); ++l)
                min_spacing = std::min(min_spacing, b.means[l] - b.means[l - 1]);
            b.bandwidths.assign(b.means.size(), 0.5 * min_spacing);
        }
    } else if (kernel_bandwidths.size() == 1) {
        b.bandwidths.assign(b.means.size(), kernel_bandwidths[0]);
    } else {
        b.bandwidths = kernel_bandwidths;
    }
    if (kernel_horizon) {
        b.horizon = *kernel_horizon;
    } else {
        const double max_bw = b.bandwidths.empty()
                                  ? 0.0
                                  : *std::max_element(b.bandwidths.begin(), b.bandwidths.end());
        b.horizon = b.means.back() + 5.0 * max_bw;
    }
    b.validate();
    return b;
}

FitConfig RunConfig::fit_config() const {
    FitConfig cfg;
    cfg.prior.r = r;
    cfg.prior.alpha0 = alpha0;
    cfg.prior.lambda0 = lambda0;
    cfg.dm.theta0_word = theta0_word;
    cfg.basis = basis();
    cfg.particles = particles;
    cfg.ess_threshold = ess_threshold;
    cfg.candidates = candidates;
    cfg.candidate_scale_range = {candidate_scale_min, candidate_scale_max};
    cfg.seed = seed;
    cfg.threads = threads;
    if (mode == "sample")
        cfg.mode = FitConfig::Mode::sample;
    else if (mode == "greedy")
        cfg.mode = FitConfig::Mode::greedy;
    else
        throw config_error("config key 'mode': expected 'sample' or 'greedy'");
    return cfg;
}

GenerationSpec RunConfig::generation_spec() const {
    GenerationSpec spec;
    spec.clusters = clusters;
    spec.vocab_size = vocab_size;
    spec.words_per_doc = words_per_doc;
    spec.textual_overlap = textual_overlap;
    spec.intensity_overlap = intensity_overlap;
    spec.decorrelation = decorrelation;
    spec.window = window;
    spec.mu = mu;
    spec.weight_scale = weight_scale;
    spec.true_weights = gen_weights;
    spec.basis = basis();
    spec.seed = seed;
    return spec;
}

SweepGrid RunConfig::sweep_grid() const {
    SweepGrid grid;
    grid.r_values = sweep_r;
    grid.textual_overlaps = sweep_textual_overlap;
    grid.intensity_overlaps = sweep_intensity_overlap;
    grid.decorrelations = sweep_decorrelation;
    grid.seeds_per_point = sweep_seeds;
    return grid;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "r") r = parse_double(value, key);
    else if (key == "lambda0") lambda0 = parse_double(value, key);
    else if (key == "alpha0") alpha0 = parse_double(value, key);
    else if (key == "theta0_word") theta0_word = parse_double(value, key);
    else if (key == "kernel_means") kernel_means = parse_list(value, key);
    else if (key == "kernel_bandwidths") {
        if (value == "auto") kernel_bandwidths.clear();
        else kernel_bandwidths = parse_list(value, key);
    } else if (key == "kernel_horizon") {
        if (value == "auto") kernel_horizon.reset();
        else kernel_horizon = parse_double(value, key);
    }
    else if (key == "particles") particles = parse_count(value, key);
    else if (key == "ess_threshold") ess_threshold = parse_double(value, key);
    else if (key == "candidates") candidates = parse_count(value, key);
    else if (key == "candidate_scale_min") candidate_scale_min = parse_double(value, key);
    else if (key == "candidate_scale_max") candidate_scale_max = parse_double(value, key);
    else if (key == "mode") mode = value;
    else if (key == "threads") threads = std::max<std::size_t>(1, parse_count(value, key));
    else if (key == "seed") seed = parse_seed(value, key);
    else if (key == "clusters") clusters = parse_count(value, key);
    else if (key == "vocab_size") vocab_size = parse_count(value, key);
    else if (key == "words_per_doc") words_per_doc = parse_count(value, key);
    else if (key == "textual_overlap") textual_overlap = parse_double(value, key);
    else if (key == "intensity_overlap") intensity_overlap = parse_double(value, key);
    else if (key == "decorrelation") decorrelation = parse_double(value, key);
    else if (key == "window") window = parse_double(value, key);
    else if (key == "mu") mu = parse_double(value, key);
    else if (key == "weight_scale") weight_scale = parse_double(value, key);
    else if (key == "gen_weights") {
        if (value == "auto") gen_weights.clear();
        else gen_weights = parse_list(value, key);
    }
    else if (key == "sweep_r") sweep_r = parse_list(value, key);
    else if (key == "sweep_textual_overlap") sweep_textual_overlap = parse_list(value, key);
    else if (key == "sweep_intensity_overlap") sweep_intensity_overlap = parse_list(value, key);
    else if (key == "sweep_decorrelation") sweep_decorrelation = parse_list(value, key);
    else if (key == "sweep_seeds") sweep_seeds = parse_count(value, key);
    else if (key == "nmi_variant") nmi_variant = value;
    else if (key == "grid_points") grid_points = parse_count(value, key);
    else throw config_error("unknown config key '" + key + "'");
}

std::string RunConfig::canonical() const {
    std::ostringstream out;
    out << "r = " << format_double(r) << '\n';
    out << "lambda0 = " << format_double(lambda0) << '\n';
    out << "alpha0 = " << format_double(alpha0) << '\n';
    out << "theta0_word = " << format_double(theta0_word) << '\n';
    out << "kernel_means = " << join(kernel_means) << '\n';
    out << "kernel_bandwidths = "
        << (kernel_bandwidths.empty() ? "auto" : join(kernel_bandwidths)) << '\n';
    out << "kernel_horizon = "
        << (kernel_horizon ? format_double(*kernel_horizon) : "auto") << '\n';
    out << "particles = " << particles << '\n';
    out << "ess_threshold = " << format_double(ess_threshold) << '\n';
    out << "candidates = " << candidates << '\n';
    out << "candidate_scale_min = " << format_double(candidate_scale_min) << '\n';
    out << "candidate_scale_max = " << format_double(candidate_scale_max) << '\n';
    out << "mode = " << mode << '\n';
    out << "threads = " << threads << '\n';
    out << "seed = " << seed << '\n';
    out << "clusters = " << clusters << '\n';
    out << "vocab_size = " << vocab_size << '\n';
    out << "words_per_doc = " << words_per_doc << '\n';
    out << "textual_overlap = " << format_double(textual_overlap) << '\n';
    out << "intensity_overlap = " << format_double(intensity_overlap) << '\n';
    out << "decorrelation = " << format_double(decorrelation) << '\n';
    out << "window = " << format_double(window) << '\n';
    out << "mu = " << format_double(mu) << '\n';
    out << "weight_scale = " << format_double(weight_scale) << '\n';
    out << "gen_weights = " << (gen_weights.empty() ? "auto" : join(gen_weights)) << '\n';
    out << "sweep_r = " << join(sweep_r) << '\n';
    out << "sweep_textual_overlap = " << join(sweep_textual_overlap) << '\n';
    out << "sweep_intensity_overlap = " << join(sweep_intensity_overlap) << '\n';
    out << "sweep_decorrelation = " << join(sweep_decorrelation) << '\n';
    out << "sweep_seeds = " << sweep_seeds << '\n';
    out << "nmi_variant = " << nmi_variant << '\n';
    out << "grid_points = " << grid_points << '\n';
    return out.str();
}

std::string RunConfig::hash() const {
    // drop execution-only keys so outputs are comparable across thread counts
    std::istringstream in(canonical());
    std::string line, hashed;
    while (std::getline(in, line))
        if (line.rfind("threads = ", 0) != 0) hashed += line + '\n';

    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : hashed) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(origin + ":" + std::to_string(line_no) +
                               ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error(origin + ":" + std::to_string(line_no) +
                               ": expected 'key = value'");
        try {
            cfg.set(key, value);
        } catch (const config_error& e) {
            throw config_error(origin + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

} // namespace pdhp
