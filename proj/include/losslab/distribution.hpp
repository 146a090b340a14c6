#ifndef LOSSLAB_DISTRIBUTION_HPP
#define LOSSLAB_DISTRIBUTION_HPP

#include <cmath>
#include <cstddef>
#include <memory>
#include <vector>

#include "losslab/state.hpp"

namespace losslab {

/// Probability distribution on {0, 1, ..., p.size()-1}.
struct IntDistribution {
    std::vector<double> p;

    double mean() const {
        double m = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) m += static_cast<double>(i) * p[i];
        return m;
    }
};

/// Probability distribution over an enumerated state space, aligned with its
/// canonical state IDs.
struct StateDistribution {
    std::shared_ptr<const StateSpace> space;
    std::vector<double> p;
};

/// ccdf[j] = P(X >= j), defined on 0..p.size() (the last entry is 0).
inline std::vector<double> ccdf(const IntDistribution& d) {
    std::vector<double> c(d.p.size() + 1, 0.0);
    for (std::size_t j = d.p.size(); j-- > 0;) c[j] = c[j + 1] + d.p[j];
    return c;
}

/// Pointwise stochastic dominance on integer supports: lo ≤_st hi.
inline bool ccdf_dominated(const IntDistribution& lo, const IntDistribution& hi,
                           double slack = 1e-12) {
    const auto cl = ccdf(lo), ch = ccdf(hi);
    const std::size_t len = std::max(cl.size(), ch.size());
    for (std::size_t j = 0; j < len; ++j) {
        const double a = j < cl.size() ? cl[j] : 0.0;
        const double b = j < ch.size() ? ch[j] : 0.0;
        if (a > b + slack) return false;
    }
    return true;
}

/// Distribution of the independent sum of two integer-valued variables.
inline IntDistribution convolve(const IntDistribution& a, const IntDistribution& b) {
    IntDistribution out;
    out.p.assign(a.p.size() + b.p.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.p.size(); ++i)
        for (std::size_t j = 0; j < b.p.size(); ++j)
            out.p[i + j] += a.p[i] * b.p[j];
    return out;
}

inline double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
    double tv = 0.0;
    const std::size_t len = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < len; ++i) {
        const double x = i < a.size() ? a[i] : 0.0;
        const double y = i < b.size() ? b[i] : 0.0;
        tv += std::abs(x - y);
    }
    return 0.5 * tv;
}

/// Pushforward of a state distribution under x ↦ total(x).
inline IntDistribution marginal_total(const StateDistribution& d) {
    int max_total = 0;
    for (const auto& x : d.space->states()) max_total = std::max(max_total, x.total());
    IntDistribution out;
    out.p.assign(static_cast<std::size_t>(max_total) + 1, 0.0);
    for (std::size_t i = 0; i < d.p.size(); ++i)
        out.p[static_cast<std::size_t>(d.space->state(static_cast<int>(i)).total())] += d.p[i];
    return out;
}

/// Pushforward under x ↦ x1[k] + x2[k] (class-k customers in the system).
inline IntDistribution marginal_class(const StateDistribution& d, int k) {
    const SystemParams& prm = d.space->params();
    IntDistribution out;
    out.p.assign(static_cast<std::size_t>(prm.m[k] + prm.n) + 1, 0.0);
    for (std::size_t i = 0; i < d.p.size(); ++i) {
        const State& x = d.space->state(static_cast<int>(i));
        out.p[static_cast<std::size_t>(x.x1[k] + x.x2[k])] += d.p[i];
    }
    return out;
}

} // namespace losslab

#endif
