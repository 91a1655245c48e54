#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pdhp {

// Fixed basis of truncated Gaussian triggering kernels. Component l is the
// Gaussian density with mean means[l] and std bandwidths[l], evaluated at the
// elapsed time since a past event and treated as zero beyond `horizon`.
struct KernelBasis {
    std::vector<double> means;
    std::vector<double> bandwidths;
    double horizon = 0.0;

    std::size_t size() const { return means.size(); }

    // Throws config_error unless: means strictly increasing and nonnegative,
    // bandwidths positive, matching lengths, and
    // horizon >= max(means) + 5 * max(bandwidths).
    void validate() const;

    static KernelBasis make_default();
};

// Component-wise kernel values at elapsed time dt (zero vector past the
// horizon). Throws std::domain_error for negative dt.
std::vector<double> kernel_vector(const KernelBasis& basis, double dt);

// Integral of kernel l over elapsed times [a, b] clipped to [0, horizon].
double kernel_integral(const KernelBasis& basis, std::size_t l, double a, double b);

// Total mass of kernel l on [0, horizon]; close to 1 under the horizon rule.
double kernel_mass(const KernelBasis& basis, std::size_t l);

// Peak value of kernel l, 1 / (sigma * sqrt(2 pi)); upper bound used by the
// thinning simulator.
double kernel_peak(const KernelBasis& basis, std::size_t l);

} // namespace pdhp
