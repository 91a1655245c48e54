#include "pdhp/prior.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pdhp/errors.hpp"

namespace pdhp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// x^r with the 0^0 := 1 convention
double powered(double x, double r) {
    if (r == 0.0) return 1.0;
    return std::pow(x, r);
}

void check_intensities(std::span<const double> intensities) {
    for (double v : intensities)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::domain_error("pdhp_prior: intensities must be finite and nonnegative");
}

} // namespace

void PriorParams::validate() const {
    if (!(r >= 0.0)) throw config_error("prior: r must be nonnegative");
    if (!(alpha0 > 0.0)) throw config_error("prior: alpha0 must be positive");
    if (!(lambda0 > 0.0)) throw config_error("prior: lambda0 must be positive");
}

std::vector<double> pdp_prior(std::span<const double> counts, const PriorParams& params) {
    params.validate();
    for (double n : counts)
        if (!(n >= 1.0)) throw std::domain_error("pdp_prior: cluster counts must be >= 1");
    std::vector<double> out(counts.size() + 1);
    double denom = params.alpha0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        out[k] = powered(counts[k], params.r);
        denom += out[k];
    }
    out[counts.size()] = params.alpha0;
    for (auto& v : out) v /= denom;
    return out;
}

std::vector<double> pdhp_prior(std::span<const double> intensities, const PriorParams& params) {
    params.validate();
    check_intensities(intensities);
    std::vector<double> out(intensities.size() + 1);
    double denom = params.lambda0;
    for (std::size_t c = 0; c < intensities.size(); ++c) {
        out[c] = powered(intensities[c], params.r);
        denom += out[c];
    }
    out[intensities.size()] = params.lambda0;
    for (auto& v : out) v /= denom;
    return out;
}

std::vector<double> log_pdhp_prior(std::span<const double> intensities,
                                   const PriorParams& params) {
    params.validate();
    check_intensities(intensities);
    std::vector<double> out(intensities.size() + 1);
    for (std::size_t c = 0; c < intensities.size(); ++c) {
        if (params.r == 0.0)
            out[c] = 0.0; // 0^0 = 1
        else
            out[c] = intensities[c] > 0.0 ? params.r * std::log(intensities[c]) : kNegInf;
    }
    out[intensities.size()] = std::log(params.lambda0);

    // log-sum-exp normalizer; the new-cluster term keeps it finite
    double max_term = kNegInf;
    for (double v : out) max_term = std::max(max_term, v);
    double acc = 0.0;
    for (double v : out)
        if (v != kNegInf) acc += std::exp(v - max_term);
    const double lse = max_term + std::log(acc);
    for (auto& v : out) v -= lse;
    return out;
}

} // namespace pdhp
