#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "pdhp/dynamics.hpp"
#include "pdhp/errors.hpp"
#include "pdhp/rng.hpp"

using namespace pdhp;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

KernelBasis narrow_basis() {
    KernelBasis basis;
    basis.means = {3.0, 7.0, 11.0};
    basis.bandwidths = {0.5, 0.5, 0.5};
    basis.horizon = 20.0;
    return basis;
}

double oracle_intensity(const std::vector<double>& events, const KernelBasis& basis,
                        const std::vector<double>& weights, double t) {
    double acc = 0.0;
    for (double t_i : events) {
        if (!(t_i < t)) continue;
        const double dt = t - t_i;
        if (dt > basis.horizon) continue;
        for (std::size_t l = 0; l < basis.size(); ++l)
            acc += weights[l] * oracles::gaussian_pdf(dt, basis.means[l], basis.bandwidths[l]);
    }
    return acc;
}

} // namespace

TEST_CASE("intensity of an empty history is zero") {
    const auto basis = narrow_basis();
    const std::vector<double> weights{1.0, 1.0, 1.0};
    CHECK(intensity({}, basis, weights, 5.0) == 0.0);
}

TEST_CASE("intensity is additive over events") {
    const auto basis = narrow_basis();
    const std::vector<double> weights{0.3, 0.5, 0.2};
    const std::vector<double> a{1.0}, b{2.5}, both{1.0, 2.5};
    const double t = 6.0;
    CHECK(intensity(both, basis, weights, t) ==
          doctest::Approx(intensity(a, basis, weights, t) + intensity(b, basis, weights, t))
              .epsilon(1e-14));
}

TEST_CASE("intensity one event at the first kernel mean") {
    const auto basis = narrow_basis();
    const std::vector<double> events{0.0};
    const std::vector<double> weights{1.0, 0.0, 0.0};
    CHECK(intensity(events, basis, weights, 3.0) ==
          doctest::Approx(0.7978845608028654).epsilon(1e-12));
}

TEST_CASE("intensity ignores co-timestamped and future events") {
    const auto basis = narrow_basis();
    const std::vector<double> weights{1.0, 1.0, 1.0};
    const std::vector<double> events{4.0, 4.0, 9.0};
    CHECK(intensity(events, basis, weights, 4.0) == 0.0);
    CHECK(intensity(events, basis, weights, 7.0) ==
          doctest::Approx(2.0 * oracle_intensity({4.0}, basis, weights, 7.0)).epsilon(1e-13));
}

TEST_CASE("integrated_intensity of no events is zero") {
    CHECK(integrated_intensity({}, narrow_basis(), std::vector<double>{1.0, 1.0, 1.0}, 100.0) ==
          0.0);
}

TEST_CASE("integrated_intensity far past one event is the total kernel mass") {
    const auto basis = narrow_basis();
    const std::vector<double> events{2.0};
    const std::vector<double> weights{1.0, 1.0, 1.0};
    const double total = integrated_intensity(events, basis, weights, 2.0 + basis.horizon);
    CHECK(total == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("integrated_intensity matches adaptive quadrature") {
    const auto basis = narrow_basis();
    const std::vector<double> events{0.0, 1.5, 4.0, 4.0, 9.25};
    const std::vector<double> weights{0.4, 0.25, 0.1};
    for (double t_end : {9.25, 12.0, 31.0}) {
        const double closed = integrated_intensity(events, basis, weights, t_end);
        const double quad = oracles::adaptive_quadrature(
            [&](double t) { return oracle_intensity(events, basis, weights, t); }, 0.0, t_end,
            1e-13);
        CHECK(closed == doctest::Approx(quad).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("integrated_intensity is nondecreasing in t_end") {
    const auto basis = narrow_basis();
    const std::vector<double> events{0.0, 2.0, 5.0};
    const std::vector<double> weights{0.5, 0.3, 0.1};
    double prev = 0.0;
    for (double t_end = 5.0; t_end < 40.0; t_end += 0.7) {
        const double v = integrated_intensity(events, basis, weights, t_end);
        CHECK(v >= prev - 1e-15);
        prev = v;
    }
}

TEST_CASE("integrated_intensity rejects t_end before an event") {
    CHECK_THROWS_AS(integrated_intensity(std::vector<double>{1.0, 5.0}, narrow_basis(),
                                         std::vector<double>{1.0, 1.0, 1.0}, 4.0),
                    std::domain_error);
}

TEST_CASE("hawkes_log_likelihood of a single event at its own time is zero") {
    const auto basis = narrow_basis();
    const std::vector<double> events{7.5};
    CHECK(hawkes_log_likelihood(events, basis, std::vector<double>{0.2, 0.3, 0.1}, 7.5) == 0.0);
}

TEST_CASE("hawkes_log_likelihood matches a brute-force evaluation") {
    const auto basis = narrow_basis();
    const std::vector<double> events{1.0, 4.5};
    const std::vector<double> weights{0.6, 0.2, 0.1};
    const double t_end = 10.0;
    const double log_term = std::log(oracle_intensity(events, basis, weights, 4.5));
    const double compensator = oracles::adaptive_quadrature(
        [&](double t) { return oracle_intensity(events, basis, weights, t); }, 0.0, t_end,
        1e-13);
    CHECK(hawkes_log_likelihood(events, basis, weights, t_end) ==
          doctest::Approx(log_term - compensator).epsilon(1e-8));
}

TEST_CASE("hawkes_log_likelihood with zero weights and two events is -inf") {
    const auto basis = narrow_basis();
    const std::vector<double> events{1.0, 2.0};
    CHECK(hawkes_log_likelihood(events, basis, std::vector<double>{0.0, 0.0, 0.0}, 5.0) ==
          kNegInf);
}

TEST_CASE("sample_candidates degenerate case is exactly [[1]]") {
    Rng rng(7);
    const auto c = sample_candidates({1.0, 1.0}, 1, 1, rng);
    REQUIRE(c.size() == 1);
    REQUIRE(c[0].size() == 1);
    CHECK(c[0][0] == 1.0);
}

TEST_CASE("sample_candidates is deterministic under a fixed seed") {
    Rng a(123), b(123);
    CHECK(sample_candidates({0.1, 10.0}, 8, 3, a) == sample_candidates({0.1, 10.0}, 8, 3, b));
}

TEST_CASE("sample_candidates directions cover the simplex uniformly") {
    Rng rng(99);
    const std::size_t m = 1000, l = 4;
    const auto cands = sample_candidates({1.0, 1.0}, m, l, rng);
    std::vector<double> mean(l, 0.0);
    for (const auto& c : cands) {
        double sum = 0.0;
        for (double x : c) sum += x;
        for (std::size_t j = 0; j < l; ++j) mean[j] += c[j] / sum;
    }
    // coordinates of a uniform simplex draw have mean 1/L and sd sqrt(L-1)/(L*sqrt(L+1))
    const double se = std::sqrt(static_cast<double>(l - 1) / (l + 1)) /
                      static_cast<double>(l) / std::sqrt(static_cast<double>(m));
    for (std::size_t j = 0; j < l; ++j)
        CHECK(std::abs(mean[j] / static_cast<double>(m) - 0.25) < 3.0 * se);
}

TEST_CASE("sample_candidates rejects an invalid scale range") {
    Rng rng(1);
    CHECK_THROWS_AS(sample_candidates({0.0, 1.0}, 1, 1, rng), config_error);
    CHECK_THROWS_AS(sample_candidates({2.0, 1.0}, 1, 1, rng), config_error);
}

TEST_CASE("update_dynamics first event leaves candidate log-likelihoods unchanged") {
    const auto basis = narrow_basis();
    ClusterDynamics dyn({{0.5, 0.5, 0.5}, {0.1, 0.1, 0.1}});
    update_dynamics(dyn, basis, 3.25);
    CHECK(dyn.event_times() == std::vector<double>{3.25});
    for (double ll : dyn.candidate_loglik()) CHECK(ll == 0.0);
    CHECK(dyn.active_index() == 0);
}

TEST_CASE("update_dynamics incremental equals batch recomputation") {
    const auto basis = narrow_basis();
    Rng rng(2024);
    for (int rep = 0; rep < 12; ++rep) {
        auto candidates = sample_candidates({0.05, 5.0}, 4, basis.size(), rng);
        ClusterDynamics dyn(candidates);
        double t = 0.0;
        const int n_events = 5 + static_cast<int>(rng.uniform_index(46));
        for (int i = 0; i < n_events; ++i) {
            t += rng.exponential(0.8);
            update_dynamics(dyn, basis, t);
            if (i % 10 != 9 && i != n_events - 1) continue;
            for (std::size_t m = 0; m < candidates.size(); ++m) {
                const double batch =
                    hawkes_log_likelihood(dyn.event_times(), basis, candidates[m], t);
                const double inc = dyn.candidate_loglik()[m];
                if (batch == kNegInf) {
                    CHECK(inc == kNegInf);
                } else {
                    CHECK(inc == doctest::Approx(batch).epsilon(1e-9).scale(1.0));
                }
            }
        }
    }
}

TEST_CASE("a candidate that assigns zero intensity is eliminated, not selected") {
    KernelBasis basis;
    basis.means = {1.0, 15.0};
    basis.bandwidths = {0.1, 0.1};
    basis.horizon = 16.0;
    // second candidate puts all mass on the distant kernel; at dt = 1 the
    // Gaussian underflows to exactly zero
    ClusterDynamics dyn({{1.0, 0.0}, {0.0, 1.0}});
    update_dynamics(dyn, basis, 0.0);
    update_dynamics(dyn, basis, 1.0);
    CHECK(dyn.candidate_loglik()[1] == kNegInf);
    CHECK(std::isfinite(dyn.candidate_loglik()[0]));
    CHECK(dyn.active_index() == 0);
    // once eliminated it stays eliminated
    update_dynamics(dyn, basis, 2.0);
    CHECK(dyn.candidate_loglik()[1] == kNegInf);
    CHECK(dyn.active_index() == 0);
}

TEST_CASE("update_dynamics rejects out-of-order events") {
    ClusterDynamics dyn({{1.0, 1.0, 1.0}});
    update_dynamics(dyn, narrow_basis(), 5.0);
    CHECK_THROWS_AS(update_dynamics(dyn, narrow_basis(), 4.0), std::domain_error);
}
