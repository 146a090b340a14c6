#ifndef LOSSLAB_ERLANG_HPP
#define LOSSLAB_ERLANG_HPP

#include "losslab/distribution.hpp"
#include "losslab/errors.hpp"

namespace losslab {

/// An M/M/s/s (Erlang loss) system with offered load rho = lambda/mu.
struct ErlangSpec {
    int servers;
    double rho;

    void validate() const {
        if (servers < 0) throw ValidationError("Erlang server count must be nonnegative");
        if (!(rho > 0.0)) throw ValidationError("offered load must be strictly positive");
    }
};

/// Truncated-Poisson stationary distribution on {0, ..., s}. Uses the forward
/// recursion w_i = w_{i-1} * rho / i with on-the-fly rescaling, never raw
/// powers or factorials, so large s and rho are safe.
inline IntDistribution erlang_distribution(const ErlangSpec& spec) {
    spec.validate();
    IntDistribution d;
    d.p.assign(static_cast<std::size_t>(spec.servers) + 1, 0.0);
    double w = 1.0, sum = 0.0;
    for (int i = 0; i <= spec.servers; ++i) {
        if (i > 0) w *= spec.rho / static_cast<double>(i);
        if (w > 1e280 || sum > 1e280) {
            const double scale = 1e-280;
            for (int j = 0; j < i; ++j) d.p[static_cast<std::size_t>(j)] *= scale;
            w *= scale;
            sum *= scale;
        }
        d.p[static_cast<std::size_t>(i)] = w;
        sum += w;
    }
    for (auto& v : d.p) v /= sum;
    return d;
}

/// Erlang B blocking probability via the standard stable recursion
/// B(0) = 1, B(j) = rho·B(j-1) / (j + rho·B(j-1)).
inline double erlang_b(const ErlangSpec& spec) {
    spec.validate();
    double b = 1.0;
    for (int j = 1; j <= spec.servers; ++j)
        b = spec.rho * b / (static_cast<double>(j) + spec.rho * b);
    return b;
}

/// Mean number of busy servers, rho·(1 - B), from the conservation law
/// lambda(1 - B) = mu·mean.
inline double erlang_mean(const ErlangSpec& spec) {
    return spec.rho * (1.0 - erlang_b(spec));
}

} // namespace losslab

#endif
