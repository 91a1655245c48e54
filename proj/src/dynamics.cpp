#include "pdhp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pdhp/errors.hpp"

namespace pdhp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Sum of weighted kernel values at elapsed time dt in [0, horizon].
double weighted_kernel(const KernelBasis& basis, std::span<const double> weights, double dt) {
    double acc = 0.0;
    for (std::size_t l = 0; l < basis.size(); ++l) {
        const double z = (dt - basis.means[l]) / basis.bandwidths[l];
        acc += weights[l] * 0.3989422804014326779 / basis.bandwidths[l] * std::exp(-0.5 * z * z);
    }
    return acc;
}

std::size_t argmax_lowest(const std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

} // namespace

ClusterDynamics::ClusterDynamics(std::vector<std::vector<double>> candidates)
    : candidates_(std::move(candidates)), candidate_loglik_(candidates_.size(), 0.0) {
    if (candidates_.empty()) throw config_error("cluster dynamics needs at least one candidate");
}

double intensity(std::span<const double> event_times, const KernelBasis& basis,
                 std::span<const double> weights, double t) {
    // events with t_i in [t - horizon, t) contribute
    auto first = std::lower_bound(event_times.begin(), event_times.end(), t - basis.horizon);
    auto last = std::lower_bound(first, event_times.end(), t);
    double acc = 0.0;
    for (auto it = first; it != last; ++it) acc += weighted_kernel(basis, weights, t - *it);
    return acc;
}

double intensity(const ClusterDynamics& dyn, const KernelBasis& basis, double t) {
    return intensity(dyn.event_times(), basis, dyn.active_weights(), t);
}

double integrated_intensity(std::span<const double> event_times, const KernelBasis& basis,
                            std::span<const double> weights, double t_end) {
    double acc = 0.0;
    for (double t_i : event_times) {
        if (t_i > t_end) throw std::domain_error("integrated_intensity: t_end precedes an event");
        for (std::size_t l = 0; l < basis.size(); ++l)
            acc += weights[l] * kernel_integral(basis, l, 0.0, t_end - t_i);
    }
    return acc;
}

double hawkes_log_likelihood(std::span<const double> event_times, const KernelBasis& basis,
                             std::span<const double> weights, double t_end) {
    double log_terms = 0.0;
    for (std::size_t i = 0; i < event_times.size(); ++i) {
        const double t_i = event_times[i];
        // strictly earlier events only; co-timestamped events do not excite
        // each other and an event with no strict predecessor has no log term
        if (i == 0 || !(event_times[0] < t_i)) continue;
        const double lam = intensity(event_times.subspan(0, i), basis, weights, t_i);
        if (!(lam > 0.0)) return kNegInf;
        log_terms += std::log(lam);
    }
    return log_terms - integrated_intensity(event_times, basis, weights, t_end);
}

std::vector<std::vector<double>> sample_candidates(std::pair<double, double> scale_range,
                                                   std::size_t m, std::size_t l, Rng& rng) {
    const auto [lo, hi] = scale_range;
    if (!(m >= 1) || !(l >= 1)) throw config_error("sample_candidates: M and L must be >= 1");
    if (!(lo > 0.0) || !(hi >= lo)) throw config_error("sample_candidates: invalid scale range");
    const double log_lo = std::log(lo), log_hi = std::log(hi);
    std::vector<std::vector<double>> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<double> w(l);
        double sum = 0.0;
        for (auto& x : w) {
            x = rng.exponential(1.0);
            sum += x;
        }
        const double scale = std::exp(rng.uniform(log_lo, log_hi));
        if (sum > 0.0) {
            for (auto& x : w) x *= scale / sum;
        } else {
            for (auto& x : w) x = scale / static_cast<double>(l);
        }
        out.push_back(std::move(w));
    }
    return out;
}

void update_dynamics(ClusterDynamics& dyn, const KernelBasis& basis, double t_new) {
    if (dyn.candidates_.empty()) throw config_error("update_dynamics: no candidates");
    auto& events = dyn.event_times_;
    if (!events.empty() && t_new < events.back())
        throw std::domain_error("update_dynamics: out-of-order event time");

    const bool has_strict_history = !events.empty() && events.front() < t_new;
    const double t_last = events.empty() ? 0.0 : events.back();

    for (std::size_t m = 0; m < dyn.candidates_.size(); ++m) {
        double& ll = dyn.candidate_loglik_[m];
        if (ll == kNegInf) continue;
        const auto& w = dyn.candidates_[m];
        if (has_strict_history) {
            const double lam = intensity(events, basis, w, t_new);
            if (!(lam > 0.0)) {
                ll = kNegInf;
                continue;
            }
            ll += std::log(lam);
        }
        // compensator increment over [t_last, t_new] from the existing events
        double inc = 0.0;
        for (double t_i : events)
            for (std::size_t l = 0; l < basis.size(); ++l)
                inc += w[l] * kernel_integral(basis, l, t_last - t_i, t_new - t_i);
        ll -= inc;
    }
    events.push_back(t_new);
    dyn.active_ = argmax_lowest(dyn.candidate_loglik_);
}

} // namespace pdhp
