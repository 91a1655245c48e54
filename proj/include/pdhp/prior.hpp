#pragma once

#include <span>
#include <vector>

namespace pdhp {

// Parameters of the powered allocation priors. r interpolates between the
// uniform process (r = 0) and the Dirichlet(-Hawkes) process (r = 1);
// larger r sharpens the dependence on sizes or intensities.
struct PriorParams {
    double r = 1.0;
    double alpha0 = 1.0;  // concentration of the count-based prior
    double lambda0 = 0.1; // new-cluster intensity of the intensity-based prior

    void validate() const;
};

// Powered Dirichlet prior over K nonempty clusters plus one new-cluster
// entry: P(k) = N_k^r / (alpha0 + sum N^r), P(new) = alpha0 / (...).
std::vector<double> pdp_prior(std::span<const double> counts, const PriorParams& params);

// Powered Dirichlet-Hawkes prior over K clusters plus one new-cluster entry:
// P(c) = lambda_c^r / (lambda0 + sum lambda^r), P(new) = lambda0 / (...).
// Convention 0^0 = 1, so r = 0 is exactly uniform over existing clusters.
std::vector<double> pdhp_prior(std::span<const double> intensities, const PriorParams& params);

// Log-space variant of pdhp_prior; survives intensities near underflow.
std::vector<double> log_pdhp_prior(std::span<const double> intensities,
                                   const PriorParams& params);

} // namespace pdhp
