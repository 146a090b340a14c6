#ifndef LOSSLAB_PRODUCT_FORM_HPP
#define LOSSLAB_PRODUCT_FORM_HPP

#include <cmath>
#include <memory>
#include <utility>
#include <vector>

#include "losslab/distribution.hpp"

namespace losslab {

/// One entry of the aggregated maximum-packing stationary law: per-class
/// customer totals t and their probability.
struct AggregateEntry {
    std::vector<int> totals;
    double prob;
};

namespace detail {

inline void enumerate_totals(const SystemParams& p, std::vector<int>& t, int k, int overflow_used,
                             std::vector<std::vector<int>>& out) {
    if (k == p.num_classes()) {
        out.push_back(t);
        return;
    }
    const int max_t = p.m[k] + (p.n - overflow_used);
    for (int v = 0; v <= max_t; ++v) {
        t[k] = v;
        enumerate_totals(p, t, k + 1, overflow_used + std::max(v - p.m[k], 0), out);
    }
    t[k] = 0;
}

} // namespace detail

/// Stationary law of the aggregated maximum-packing process on the totals set
/// {t >= 0 : sum_k (t_k - m_k)^+ <= n}: a product of per-class Poisson weights
/// rho_k^{t_k} / t_k! truncated to the set. Weights are accumulated in log
/// space with a running maximum, so large loads cannot overflow.
inline std::vector<AggregateEntry> mp_aggregate_stationary(const SystemParams& p,
                                                           std::size_t max_states = Caps{}.max_states) {
    p.validate();
    std::vector<std::vector<int>> totals;
    {
        std::vector<int> t(static_cast<std::size_t>(p.num_classes()), 0);
        detail::enumerate_totals(p, t, 0, 0, totals);
    }
    if (totals.size() > max_states)
        throw CapacityError("aggregated packing space exceeds the state cap");

    std::vector<double> logw(totals.size());
    double max_logw = -HUGE_VAL;
    for (std::size_t i = 0; i < totals.size(); ++i) {
        double lw = 0.0;
        for (int k = 0; k < p.num_classes(); ++k) {
            const double rho = p.lambda[static_cast<std::size_t>(k)] / p.mu[static_cast<std::size_t>(k)];
            const double tk = totals[i][static_cast<std::size_t>(k)];
            lw += tk * std::log(rho) - std::lgamma(tk + 1.0);
        }
        logw[i] = lw;
        max_logw = std::max(max_logw, lw);
    }
    double norm = 0.0;
    for (double lw : logw) norm += std::exp(lw - max_logw);

    std::vector<AggregateEntry> out;
    out.reserve(totals.size());
    for (std::size_t i = 0; i < totals.size(); ++i)
        out.push_back({std::move(totals[i]), std::exp(logw[i] - max_logw) / norm});
    return out;
}

/// The same law mapped onto the full state space via canonical repacking;
/// transient states carry probability zero. When no space is supplied, one is
/// enumerated from the parameters.
inline StateDistribution mp_stationary(const SystemParams& p,
                                       std::shared_ptr<const StateSpace> space = nullptr,
                                       std::size_t max_states = Caps{}.max_states) {
    if (!space)
        space = std::make_shared<StateSpace>(StateSpace::enumerate(p, max_states));
    StateDistribution dist;
    dist.space = space;
    dist.p.assign(space->size(), 0.0);
    for (const AggregateEntry& e : mp_aggregate_stationary(p, max_states))
        dist.p[static_cast<std::size_t>(space->index_of(repack(p, e.totals)))] += e.prob;
    return dist;
}

} // namespace losslab

#endif
