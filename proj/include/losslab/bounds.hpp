#ifndef LOSSLAB_BOUNDS_HPP
#define LOSSLAB_BOUNDS_HPP

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "losslab/erlang.hpp"
#include "losslab/product_form.hpp"

namespace losslab {

/// Erlang envelope for one customer class: the class-k number in system is
/// stochastically between an m_k-server and an (m_k+n)-server loss system at
/// offered load lambda_k/mu_k.
struct PerClassBounds {
    int cls = 0;
    ErlangSpec lower_spec{0, 1.0};
    ErlangSpec upper_spec{0, 1.0};
    IntDistribution lower;
    IntDistribution upper;
    double mean_lo = 0.0, mean_hi = 0.0;
    double throughput_lo = 0.0, throughput_hi = 0.0;
    double blocking_lo = 0.0, blocking_hi = 0.0;
};

/// Bounds on the aggregate quantities. Lower bounds scan the configurations
/// where all shared servers have been turned into dedicated ones (with every
/// rate at mu_max); the upper bounds come from the maximum-packing law with
/// every rate at mu_min.
struct OverallBounds {
    double mean_lo = 0.0, mean_hi = 0.0;
    double throughput_lo = 0.0, throughput_hi = 0.0;
    double blocking_lo = 0.0, blocking_hi = 0.0;
    double blocking_lo_raw = 0.0; // before clamping to [0, 1]
    bool blocking_lo_clamped = false;
    double r_mu = 1.0;
    std::vector<int> config_mean;       // m' attaining the mean lower bound
    std::vector<int> config_throughput; // m' attaining the throughput lower bound
    std::vector<int> config_blocking;   // m' attaining the blocking upper bound
    IntDistribution lower_total; // law of the total in the attaining dedicated-only system
    IntDistribution upper_total; // total-marginal of the packing law at mu_min
};

struct BoundsReport {
    std::vector<PerClassBounds> per_class;
    OverallBounds overall;
};

/// All layer-1 configurations obtained by converting the n shared servers
/// into dedicated ones: m' >= m componentwise with sum m' = sum m + n.
/// Deterministic order: the first class takes the largest share first.
inline std::vector<std::vector<int>> enumerate_configs(const SystemParams& p,
                                                       std::size_t max_configs = Caps{}.max_configs) {
    p.validate();
    const int K = p.num_classes();
    const std::size_t count = StateSpace::simplex_count(K - 1, p.n); // C(n+K-1, K-1)
    if (count > max_configs)
        throw CapacityError("configuration set has " + std::to_string(count) +
                            " members, exceeding the cap");
    std::vector<std::vector<int>> out;
    out.reserve(count);
    std::vector<int> extra(static_cast<std::size_t>(K), 0);
    struct Rec {
        static void go(const SystemParams& p, std::vector<int>& extra, int k, int left,
                       std::vector<std::vector<int>>& out) {
            if (k == p.num_classes() - 1) {
                extra[static_cast<std::size_t>(k)] = left;
                std::vector<int> cfg(p.m);
                for (std::size_t i = 0; i < cfg.size(); ++i) cfg[i] += extra[i];
                out.push_back(std::move(cfg));
                return;
            }
            for (int v = left; v >= 0; --v) {
                extra[static_cast<std::size_t>(k)] = v;
                go(p, extra, k + 1, left - v, out);
            }
        }
    };
    Rec::go(p, extra, 0, p.n, out);
    return out;
}

inline PerClassBounds per_class_bounds(const SystemParams& p, int k) {
    p.validate();
    const std::size_t kk = static_cast<std::size_t>(k);
    const double rho = p.lambda[kk] / p.mu[kk];
    PerClassBounds b;
    b.cls = k;
    b.lower_spec = {p.m[kk], rho};
    b.upper_spec = {p.m[kk] + p.n, rho};
    b.lower = erlang_distribution(b.lower_spec);
    b.upper = erlang_distribution(b.upper_spec);
    b.mean_lo = erlang_mean(b.lower_spec);
    b.mean_hi = erlang_mean(b.upper_spec);
    b.throughput_lo = p.mu[kk] * b.mean_lo;
    b.throughput_hi = p.mu[kk] * b.mean_hi;
    // Blocking endpoints invert: more servers block less.
    b.blocking_lo = erlang_b(b.upper_spec);
    b.blocking_hi = erlang_b(b.lower_spec);
    return b;
}

inline OverallBounds overall_bounds(const SystemParams& p,
                                    std::size_t max_configs = Caps{}.max_configs,
                                    std::size_t max_states = Caps{}.max_states) {
    p.validate();
    const int K = p.num_classes();
    const double mu_min = p.mu_min(), mu_max = p.mu_max();
    const double lambda_sum = std::accumulate(p.lambda.begin(), p.lambda.end(), 0.0);

    OverallBounds b;
    b.r_mu = mu_max / mu_min;

    // Scan the dedicated-only configurations. With no shared servers the
    // classes decouple, so each candidate is a sum of independent Erlang
    // systems at rates mu_max.
    const auto configs = enumerate_configs(p, max_configs);
    double best_mean = -1.0, best_tp = -1.0, best_block = 2.0;
    for (const auto& cfg : configs) {
        double mean = 0.0, blocked = 0.0;
        for (int k = 0; k < K; ++k) {
            const std::size_t kk = static_cast<std::size_t>(k);
            const ErlangSpec s{cfg[kk], p.lambda[kk] / mu_max};
            mean += erlang_mean(s);
            blocked += p.lambda[kk] * erlang_b(s);
        }
        const double throughput = mu_max * mean;
        const double blocking = blocked / lambda_sum;
        if (mean > best_mean) {
            best_mean = mean;
            b.config_mean = cfg;
        }
        if (throughput / b.r_mu > best_tp) {
            best_tp = throughput / b.r_mu;
            b.config_throughput = cfg;
        }
        const double upper_blocking = 1.0 - (1.0 - blocking) / b.r_mu;
        if (upper_blocking < best_block) {
            best_block = upper_blocking;
            b.config_blocking = cfg;
        }
    }
    b.mean_lo = best_mean;
    b.throughput_lo = best_tp;
    b.blocking_hi = best_block;

    // Packing upper side at uniform mu_min.
    const SystemParams slow = p.with_uniform_mu(mu_min);
    const auto agg = mp_aggregate_stationary(slow, max_states);
    double mp_mean = 0.0;
    int max_total = 0;
    for (const AggregateEntry& e : agg) {
        const int t = std::accumulate(e.totals.begin(), e.totals.end(), 0);
        mp_mean += e.prob * t;
        max_total = std::max(max_total, t);
    }
    b.mean_hi = mp_mean;
    b.throughput_hi = b.r_mu * (mu_min * mp_mean); // = mu_max * mp_mean
    const double mp_blocking = 1.0 - mu_min * mp_mean / lambda_sum;
    b.blocking_lo_raw = 1.0 - b.r_mu * (1.0 - mp_blocking);
    b.blocking_lo_clamped = b.blocking_lo_raw < 0.0;
    b.blocking_lo = std::max(b.blocking_lo_raw, 0.0);

    // Bounding laws for the total number in system.
    b.lower_total.p = {1.0};
    for (int k = 0; k < K; ++k) {
        const std::size_t kk = static_cast<std::size_t>(k);
        b.lower_total = convolve(
            b.lower_total, erlang_distribution({b.config_mean[kk], p.lambda[kk] / mu_max}));
    }
    b.upper_total.p.assign(static_cast<std::size_t>(max_total) + 1, 0.0);
    for (const AggregateEntry& e : agg)
        b.upper_total.p[static_cast<std::size_t>(
            std::accumulate(e.totals.begin(), e.totals.end(), 0))] += e.prob;
    return b;
}

inline BoundsReport bounds_report(const SystemParams& p,
                                  std::size_t max_configs = Caps{}.max_configs,
                                  std::size_t max_states = Caps{}.max_states) {
    BoundsReport r;
    for (int k = 0; k < p.num_classes(); ++k) r.per_class.push_back(per_class_bounds(p, k));
    r.overall = overall_bounds(p, max_configs, max_states);
    return r;
}

inline nlohmann::json to_json(const PerClassBounds& b) {
    return nlohmann::json{
        {"class", b.cls},
        {"lower_servers", b.lower_spec.servers},
        {"upper_servers", b.upper_spec.servers},
        {"offered_load", b.lower_spec.rho},
        {"mean", {{"lower", b.mean_lo}, {"upper", b.mean_hi}}},
        {"throughput", {{"lower", b.throughput_lo}, {"upper", b.throughput_hi}}},
        {"blocking", {{"lower", b.blocking_lo}, {"upper", b.blocking_hi}}},
        {"lower_distribution", b.lower.p},
        {"upper_distribution", b.upper.p},
    };
}

inline nlohmann::json to_json(const OverallBounds& b) {
    return nlohmann::json{
        {"r_mu", b.r_mu},
        {"mean", {{"lower", b.mean_lo}, {"upper", b.mean_hi}}},
        {"throughput", {{"lower", b.throughput_lo}, {"upper", b.throughput_hi}}},
        {"blocking",
         {{"lower", b.blocking_lo},
          {"upper", b.blocking_hi},
          {"lower_raw", b.blocking_lo_raw},
          {"lower_clamped", b.blocking_lo_clamped}}},
        {"config_mean", b.config_mean},
        {"config_throughput", b.config_throughput},
        {"config_blocking", b.config_blocking},
        {"lower_total_distribution", b.lower_total.p},
        {"upper_total_distribution", b.upper_total.p},
    };
}

inline nlohmann::json to_json(const BoundsReport& r) {
    nlohmann::json per = nlohmann::json::array();
    for (const auto& b : r.per_class) per.push_back(to_json(b));
    return nlohmann::json{{"per_class", per}, {"overall", to_json(r.overall)}};
}

} // namespace losslab

#endif
