#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pdhp/kernel.hpp"
#include "pdhp/rng.hpp"

namespace pdhp {

// Event history and kernel-weight state of one cluster. Kernel weights are
// inferred by a candidate-set MAP scheme: M candidate weight vectors are drawn
// at cluster creation, each carries a running Hawkes log-likelihood, and the
// argmax candidate (lowest index on ties) is the active one.
class ClusterDynamics {
public:
    ClusterDynamics() = default;
    explicit ClusterDynamics(std::vector<std::vector<double>> candidates);

    const std::vector<double>& event_times() const { return event_times_; }
    const std::vector<std::vector<double>>& candidates() const { return candidates_; }
    const std::vector<double>& candidate_loglik() const { return candidate_loglik_; }
    std::size_t active_index() const { return active_; }
    const std::vector<double>& active_weights() const { return candidates_[active_]; }
    bool empty() const { return event_times_.empty(); }

private:
    friend void update_dynamics(ClusterDynamics& dyn, const KernelBasis& basis, double t_new);

    std::vector<double> event_times_;
    std::vector<std::vector<double>> candidates_;
    std::vector<double> candidate_loglik_;
    std::size_t active_ = 0;
};

// Hawkes intensity at time t under the given weights: sum over events
// strictly before t of weights . kernel(t - t_i). Zero with no prior events.
double intensity(std::span<const double> event_times, const KernelBasis& basis,
                 std::span<const double> weights, double t);

// Intensity under the cluster's active candidate.
double intensity(const ClusterDynamics& dyn, const KernelBasis& basis, double t);

// Closed-form integral of the intensity over [0, t_end] (the compensator of
// the point-process likelihood), honoring the truncation horizon. Throws
// std::domain_error if t_end precedes an event.
double integrated_intensity(std::span<const double> event_times, const KernelBasis& basis,
                            std::span<const double> weights, double t_end);

// Hawkes log-likelihood of the event history under the given weights:
// sum of log intensities minus the compensator. Events with no strictly
// earlier event contribute no log term (their allocation probability came
// from the new-cluster branch of the prior). Returns -inf when some event
// with nonempty history has zero intensity.
double hawkes_log_likelihood(std::span<const double> event_times, const KernelBasis& basis,
                             std::span<const double> weights, double t_end);

// Draws M candidate weight vectors: direction uniform on the L-simplex times
// a scale drawn log-uniformly from [scale_range.first, scale_range.second].
std::vector<std::vector<double>> sample_candidates(std::pair<double, double> scale_range,
                                                   std::size_t m, std::size_t l, Rng& rng);

// Appends one event, incrementally updating every candidate's running
// log-likelihood (new log-intensity term plus compensator increment) and
// re-selecting the active candidate. Matches a from-scratch
// hawkes_log_likelihood recomputation to within accumulation error.
void update_dynamics(ClusterDynamics& dyn, const KernelBasis& basis, double t_new);

} // namespace pdhp
