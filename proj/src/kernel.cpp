#include "pdhp/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pdhp/errors.hpp"

namespace pdhp {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;
constexpr double kInvSqrt2 = 0.7071067811865475244;

double gaussian_pdf(double x, double mean, double sigma) {
    const double z = (x - mean) / sigma;
    return kInvSqrt2Pi / sigma * std::exp(-0.5 * z * z);
}

double gaussian_cdf(double x, double mean, double sigma) {
    return 0.5 * std::erfc(-(x - mean) / sigma * kInvSqrt2);
}

} // namespace

void KernelBasis::validate() const {
    if (means.empty()) throw config_error("kernel basis must have at least one component");
    if (means.size() != bandwidths.size())
        throw config_error("kernel means and bandwidths must have the same length");
    for (std::size_t l = 0; l < means.size(); ++l) {
        if (!(means[l] >= 0.0)) throw config_error("kernel means must be nonnegative");
        if (!(bandwidths[l] > 0.0)) throw config_error("kernel bandwidths must be positive");
        if (l > 0 && !(means[l] > means[l - 1]))
            throw config_error("kernel means must be strictly increasing");
    }
    const double max_mean = means.back();
    const double max_bw = *std::max_element(bandwidths.begin(), bandwidths.end());
    if (!(horizon >= max_mean + 5.0 * max_bw))
        throw config_error("kernel horizon must be >= max(means) + 5*max(bandwidths)");
}

KernelBasis KernelBasis::make_default() {
    KernelBasis basis;
    basis.means = {3.0, 7.0, 11.0};
    // half the minimum spacing between adjacent means
    basis.bandwidths = {2.0, 2.0, 2.0};
    basis.horizon = 21.0; // max mean + 5 * max bandwidth
    return basis;
}

std::vector<double> kernel_vector(const KernelBasis& basis, double dt) {
    if (dt < 0.0) throw std::domain_error("kernel_vector: negative elapsed time");
    std::vector<double> out(basis.size(), 0.0);
    if (dt > basis.horizon) return out;
    for (std::size_t l = 0; l < basis.size(); ++l)
        out[l] = gaussian_pdf(dt, basis.means[l], basis.bandwidths[l]);
    return out;
}

double kernel_integral(const KernelBasis& basis, std::size_t l, double a, double b) {
    const double lo = std::clamp(a, 0.0, basis.horizon);
    const double hi = std::clamp(b, 0.0, basis.horizon);
    if (hi <= lo) return 0.0;
    return gaussian_cdf(hi, basis.means[l], basis.bandwidths[l]) -
           gaussian_cdf(lo, basis.means[l], basis.bandwidths[l]);
}

double kernel_mass(const KernelBasis& basis, std::size_t l) {
    return kernel_integral(basis, l, 0.0, basis.horizon);
}

double kernel_peak(const KernelBasis& basis, std::size_t l) {
    return kInvSqrt2Pi / basis.bandwidths[l];
}

} // namespace pdhp
