#ifndef LOSSLAB_METRICS_HPP
#define LOSSLAB_METRICS_HPP

#include <cmath>
#include <numeric>
#include <vector>

#include "losslab/distribution.hpp"

namespace losslab {

/// Stationary performance quantities. Per class: mean number in system a_k,
/// throughput theta_k = mu_k a_k, blocking probability b_k. Aggregates: a, theta
/// and the overall blocking b with (sum_k lambda_k)(1 - b) = theta.
struct StationaryMetrics {
    std::vector<double> mean_per_class;       // a_k
    std::vector<double> throughput_per_class; // theta_k
    std::vector<double> blocking_per_class;   // b_k = 1 - theta_k / lambda_k
    std::vector<double> blocking_pasta;       // b_k as stationary mass of the blocking set
    double mean_total = 0.0;
    double throughput_total = 0.0;
    double blocking_total = 0.0;
};

/// Computes metrics from a stationary distribution. The blocking probability
/// is derived from the conservation law lambda_k (1 - b_k) = theta_k and
/// cross-checked against the stationary probability of the blocking states
/// (PASTA); disagreement beyond the tolerance raises NumericalError.
inline StationaryMetrics metrics(const StateDistribution& dist, double conservation_tol = 1e-9) {
    const SystemParams& prm = dist.space->params();
    const int K = prm.num_classes();
    StationaryMetrics m;
    m.mean_per_class.assign(static_cast<std::size_t>(K), 0.0);
    m.blocking_pasta.assign(static_cast<std::size_t>(K), 0.0);
    for (std::size_t i = 0; i < dist.p.size(); ++i) {
        if (dist.p[i] == 0.0) continue;
        const State& x = dist.space->state(static_cast<int>(i));
        for (int k = 0; k < K; ++k) {
            m.mean_per_class[static_cast<std::size_t>(k)] += dist.p[i] * (x.x1[k] + x.x2[k]);
            if (region_of(prm, x, k) == Region::Blocked)
                m.blocking_pasta[static_cast<std::size_t>(k)] += dist.p[i];
        }
    }
    m.throughput_per_class.resize(static_cast<std::size_t>(K));
    m.blocking_per_class.resize(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        const std::size_t kk = static_cast<std::size_t>(k);
        m.throughput_per_class[kk] = prm.mu[kk] * m.mean_per_class[kk];
        m.blocking_per_class[kk] = 1.0 - m.throughput_per_class[kk] / prm.lambda[kk];
        if (std::abs(m.blocking_per_class[kk] - m.blocking_pasta[kk]) > conservation_tol)
            throw NumericalError("conservation-law blocking disagrees with the blocking-set mass");
    }
    m.mean_total = std::accumulate(m.mean_per_class.begin(), m.mean_per_class.end(), 0.0);
    m.throughput_total =
        std::accumulate(m.throughput_per_class.begin(), m.throughput_per_class.end(), 0.0);
    const double lambda_sum = std::accumulate(prm.lambda.begin(), prm.lambda.end(), 0.0);
    m.blocking_total = 1.0 - m.throughput_total / lambda_sum;
    return m;
}

} // namespace losslab

#endif
