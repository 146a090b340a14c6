#ifndef LOSSLAB_COUPLING_HPP
#define LOSSLAB_COUPLING_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "losslab/rng.hpp"
#include "losslab/state.hpp"

namespace losslab {

/// State of the shared-layer-aggregated system: per-class dedicated counts
/// plus the total number of customers in the shared layer. With equal service
/// rates this aggregation is itself Markov, and it is the representation the
/// server-reconfiguration coupling lives on.
struct AggregatedState {
    std::vector<int> layer1;
    int shared = 0;

    int total() const {
        return std::accumulate(layer1.begin(), layer1.end(), 0) + shared;
    }
    static AggregatedState zero(int num_classes) {
        return {std::vector<int>(num_classes, 0), 0};
    }
    friend bool operator==(const AggregatedState&, const AggregatedState&) = default;
};

namespace detail {

enum class AggRegion { Layer1, Layer2, Blocked };

inline AggRegion agg_region(const std::vector<int>& m, int n, const AggregatedState& s, int k) {
    if (s.layer1[static_cast<std::size_t>(k)] < m[static_cast<std::size_t>(k)])
        return AggRegion::Layer1;
    if (s.shared < n) return AggRegion::Layer2;
    return AggRegion::Blocked;
}

} // namespace detail

struct TrainingStep {
    double time;
    AggregatedState x;
    AggregatedState y;
};

struct TrainingPath {
    int moved_class = 0;
    std::vector<TrainingStep> steps; // steps[0] is the initial pair at time 0
    std::size_t events = 0;
};

/// Joint simulation of the server-reconfiguration coupling: X is the (m, n)
/// system and Y the system where one dedicated class-j server has been turned
/// into a shared server (m' = m - e_j, n' = n + 1). Requires equal service
/// rates. The difference y - x must stay inside
///   Delta = { 0, e_shared, e_shared - e_j, 2 e_shared - e_j },
/// which forces |x(t)| <= |y(t)| along the whole path; any excursion outside
/// Delta throws CouplingViolation. Calls on_event(t, x, y) after every jump.
template <class OnEvent>
void run_training_coupling(const SystemParams& p, int moved_class, double horizon,
                           RngStream& rng, OnEvent&& on_event,
                           const AggregatedState* initial_x = nullptr,
                           const AggregatedState* initial_y = nullptr) {
    p.validate();
    if (!p.equal_service_rates())
        throw ValidationError("training coupling requires equal service rates");
    const int K = p.num_classes();
    if (moved_class < 0 || moved_class >= K)
        throw ValidationError("moved class index out of range");
    const std::size_t j = static_cast<std::size_t>(moved_class);
    if (p.m[j] < 1)
        throw ValidationError("the moved class must have a dedicated server");
    const double mu = p.mu[0];

    std::vector<int> m_mod(p.m);
    m_mod[j] -= 1;
    const int n_mod = p.n + 1;

    AggregatedState x = initial_x ? *initial_x : AggregatedState::zero(K);
    AggregatedState y = initial_y ? *initial_y : AggregatedState::zero(K);

    auto in_delta = [&](const AggregatedState& a, const AggregatedState& b) {
        int d1 = 0;
        for (int k = 0; k < K; ++k) {
            const std::size_t kk = static_cast<std::size_t>(k);
            const int d = b.layer1[kk] - a.layer1[kk];
            if (d == 0) continue;
            if (kk != j || d != -1) return false;
            d1 = -1;
        }
        const int d2 = b.shared - a.shared;
        if (d1 == 0) return d2 == 0 || d2 == 1;
        return d2 == 1 || d2 == 2;
    };
    auto check = [&](double t) {
        // The two witnesses below are what keep the joint departure rates
        // nonnegative; they follow from membership in Delta.
        if (!in_delta(x, y) || y.layer1[j] > x.layer1[j] ||
            y.layer1[j] + y.shared < x.layer1[j] + x.shared)
            throw CouplingViolation("training coupling left its admissible set at state x=" +
                                        std::to_string(x.layer1[j]) + "/" +
                                        std::to_string(x.shared) + " y=" +
                                        std::to_string(y.layer1[j]) + "/" +
                                        std::to_string(y.shared),
                                    t);
    };
    check(0.0);

    enum class Kind { BothL1, XL1YShared, XL1Only, BothShared, XSharedOnly, YSharedOnly,
                      BothDepartL1, XDepartL1YShared, BothDepartShared, YDepartShared };
    struct Joint {
        Kind kind;
        int cls;
        double rate;
    };
    std::vector<Joint> moves;
    using detail::AggRegion;
    using detail::agg_region;

    double t = 0.0;
    for (;;) {
        moves.clear();
        // Joint arrivals.
        double sum_both_shared = 0.0, sum_x_shared_only = 0.0, sum_y_shared_only = 0.0;
        for (int k = 0; k < K; ++k) {
            const AggRegion rx = agg_region(p.m, p.n, x, k);
            const AggRegion ry = agg_region(m_mod, n_mod, y, k);
            const double lam = p.lambda[static_cast<std::size_t>(k)];
            if (rx == AggRegion::Layer1 && ry == AggRegion::Layer1)
                moves.push_back({Kind::BothL1, k, lam});
            if (rx == AggRegion::Layer1 && ry == AggRegion::Layer2)
                moves.push_back({Kind::XL1YShared, k, lam});
            if (rx == AggRegion::Layer1 && ry == AggRegion::Blocked)
                moves.push_back({Kind::XL1Only, k, lam});
            if (rx == AggRegion::Layer2 && ry == AggRegion::Layer2) sum_both_shared += lam;
            if (rx == AggRegion::Layer2 && ry == AggRegion::Blocked) sum_x_shared_only += lam;
            if (rx == AggRegion::Blocked && ry == AggRegion::Layer2) sum_y_shared_only += lam;
        }
        if (sum_both_shared > 0) moves.push_back({Kind::BothShared, -1, sum_both_shared});
        if (sum_x_shared_only > 0) moves.push_back({Kind::XSharedOnly, -1, sum_x_shared_only});
        if (sum_y_shared_only > 0) moves.push_back({Kind::YSharedOnly, -1, sum_y_shared_only});
        // Joint departures; the asymmetric ones repair the layer-1 deficit of
        // Y against X and drain Y's shared surplus.
        for (int k = 0; k < K; ++k) {
            const int yk = y.layer1[static_cast<std::size_t>(k)];
            if (yk > 0) moves.push_back({Kind::BothDepartL1, k, mu * yk});
        }
        if (x.layer1[j] > y.layer1[j])
            moves.push_back({Kind::XDepartL1YShared, moved_class,
                             mu * (x.layer1[j] - y.layer1[j])});
        if (x.shared > 0) moves.push_back({Kind::BothDepartShared, -1, mu * x.shared});
        {
            const double surplus = mu * (y.layer1[j] + y.shared - x.layer1[j] - x.shared);
            if (surplus > 0) moves.push_back({Kind::YDepartShared, -1, surplus});
        }

        double total = 0.0;
        for (const Joint& m : moves) total += m.rate;
        if (total <= 0.0) return;
        t += rng.exponential(total);
        if (t > horizon) return;
        double pick = rng.uniform01() * total;
        std::size_t chosen = moves.size() - 1;
        for (std::size_t i = 0; i < moves.size(); ++i) {
            pick -= moves[i].rate;
            if (pick <= 0.0) {
                chosen = i;
                break;
            }
        }
        const Joint& mv = moves[chosen];
        const std::size_t c = mv.cls >= 0 ? static_cast<std::size_t>(mv.cls) : 0;
        switch (mv.kind) {
        case Kind::BothL1: ++x.layer1[c]; ++y.layer1[c]; break;
        case Kind::XL1YShared: ++x.layer1[c]; ++y.shared; break;
        case Kind::XL1Only: ++x.layer1[c]; break;
        case Kind::BothShared: ++x.shared; ++y.shared; break;
        case Kind::XSharedOnly: ++x.shared; break;
        case Kind::YSharedOnly: ++y.shared; break;
        case Kind::BothDepartL1: --x.layer1[c]; --y.layer1[c]; break;
        case Kind::XDepartL1YShared: --x.layer1[c]; --y.shared; break;
        case Kind::BothDepartShared: --x.shared; --y.shared; break;
        case Kind::YDepartShared: --y.shared; break;
        }
        check(t);
        on_event(t, x, y);
    }
}

inline TrainingPath simulate_training_coupling(const SystemParams& p, int moved_class,
                                               double horizon, std::uint64_t seed) {
    TrainingPath path;
    path.moved_class = moved_class;
    path.steps.push_back({0.0, AggregatedState::zero(p.num_classes()),
                          AggregatedState::zero(p.num_classes())});
    RngStream rng(seed);
    run_training_coupling(p, moved_class, horizon, rng,
                          [&](double t, const AggregatedState& x, const AggregatedState& y) {
                              path.steps.push_back({t, x, y});
                              ++path.events;
                          });
    return path;
}

struct PerClassStep {
    double time;
    State x;
    int y;
};

struct PerClassPath {
    int cls = 0;
    std::vector<PerClassStep> steps;
    std::size_t events = 0;
};

/// Joint simulation of the two-layer system X with a single (m_j + n)-server
/// Erlang loss system Y fed by class-j arrivals only. The invariant
/// x1[j] + x2[j] <= y <= m_j + n holds after every event, which is exactly
/// the pathwise form of the per-class upper Erlang bound. Violations throw
/// CouplingViolation. Calls on_event(t, x, y) after every jump.
template <class OnEvent>
void run_perclass_coupling(const SystemParams& p, int cls, double horizon, RngStream& rng,
                           OnEvent&& on_event, const State* initial_x = nullptr,
                           const int* initial_y = nullptr) {
    p.validate();
    const int K = p.num_classes();
    if (cls < 0 || cls >= K) throw ValidationError("class index out of range");
    const std::size_t j = static_cast<std::size_t>(cls);
    const int cap = p.m[j] + p.n;

    State x = initial_x ? *initial_x : State::zero(K);
    int y = initial_y ? *initial_y : 0;
    auto check = [&](double t) {
        if (x.x1[j] + x.x2[j] > y || y > cap)
            throw CouplingViolation("per-class coupling left its admissible set: class total " +
                                        std::to_string(x.x1[j] + x.x2[j]) + " vs bound " +
                                        std::to_string(y),
                                    t);
    };
    check(0.0);

    struct Joint {
        Move move;    // move on x; layer 0 means no change to x
        int dy;       // -1, 0, +1
        double rate;
    };
    std::vector<Joint> moves;
    double t = 0.0;
    for (;;) {
        moves.clear();
        const int shared = x.shared_total();
        for (int k = 0; k < K; ++k) {
            const std::size_t kk = static_cast<std::size_t>(k);
            const double lam = p.lambda[kk];
            const int arrival_layer = x.x1[k] < p.m[k] ? 1 : (shared < p.n ? 2 : 0);
            if (k == cls) {
                if (arrival_layer != 0)
                    moves.push_back({{arrival_layer, k, +1}, y < cap ? +1 : 0, lam});
                else if (y < cap)
                    moves.push_back({{0, 0, 0}, +1, lam});
                if (x.x1[k] > 0) moves.push_back({{1, k, -1}, -1, p.mu[kk] * x.x1[k]});
                if (x.x2[k] > 0) moves.push_back({{2, k, -1}, -1, p.mu[kk] * x.x2[k]});
                const int slack = y - x.x1[k] - x.x2[k];
                if (slack > 0) moves.push_back({{0, 0, 0}, -1, p.mu[kk] * slack});
            } else {
                if (arrival_layer != 0) moves.push_back({{arrival_layer, k, +1}, 0, lam});
                if (x.x1[k] > 0) moves.push_back({{1, k, -1}, 0, p.mu[kk] * x.x1[k]});
                if (x.x2[k] > 0) moves.push_back({{2, k, -1}, 0, p.mu[kk] * x.x2[k]});
            }
        }
        double total = 0.0;
        for (const Joint& m : moves) total += m.rate;
        if (total <= 0.0) return;
        t += rng.exponential(total);
        if (t > horizon) return;
        double pick = rng.uniform01() * total;
        std::size_t chosen = moves.size() - 1;
        for (std::size_t i = 0; i < moves.size(); ++i) {
            pick -= moves[i].rate;
            if (pick <= 0.0) {
                chosen = i;
                break;
            }
        }
        const Joint& mv = moves[chosen];
        if (mv.move.layer != 0) x = apply_move(x, mv.move);
        y += mv.dy;
        check(t);
        on_event(t, x, y);
    }
}

inline PerClassPath simulate_perclass_coupling(const SystemParams& p, int cls, double horizon,
                                               std::uint64_t seed) {
    PerClassPath path;
    path.cls = cls;
    path.steps.push_back({0.0, State::zero(p.num_classes()), 0});
    RngStream rng(seed);
    run_perclass_coupling(p, cls, horizon, rng, [&](double t, const State& x, int y) {
        path.steps.push_back({t, x, y});
        ++path.events;
    });
    return path;
}

} // namespace losslab

#endif
