#ifndef LOSSLAB_TRANSITIONS_HPP
#define LOSSLAB_TRANSITIONS_HPP

#include <vector>

#include "losslab/state.hpp"

namespace losslab {

/// Service discipline of the shared layer.
enum class Policy {
    Overflow,       // customers stay where they were admitted
    MaximumPacking, // shared-layer customers move to their dedicated layer as
                    // soon as a server there frees
};

/// One unit move: layer ∈ {1,2}, class index, delta ∈ {+1,-1}.
struct Move {
    int layer;
    int cls;
    int delta;

    friend bool operator==(const Move&, const Move&) = default;
};

struct Transition {
    Move move;
    double rate;
};

inline State apply_move(State x, const Move& mv) {
    (mv.layer == 1 ? x.x1 : x.x2)[mv.cls] += mv.delta;
    return x;
}

/// All transitions with strictly positive rate out of x under the given
/// policy. Arrival rates are identical for both policies; the policies differ
/// only in how departures are charged to the layers.
inline void transition_rates(const SystemParams& p, Policy policy, const State& x,
                             std::vector<Transition>& out) {
    out.clear();
    const int K = p.num_classes();
    const int shared = x.shared_total();
    for (int k = 0; k < K; ++k) {
        if (x.x1[k] < p.m[k])
            out.push_back({{1, k, +1}, p.lambda[k]});
        else if (shared < p.n)
            out.push_back({{2, k, +1}, p.lambda[k]});
    }
    for (int k = 0; k < K; ++k) {
        if (policy == Policy::Overflow) {
            if (x.x1[k] > 0) out.push_back({{1, k, -1}, p.mu[k] * x.x1[k]});
            if (x.x2[k] > 0) out.push_back({{2, k, -1}, p.mu[k] * x.x2[k]});
        } else {
            // Packing: a dedicated completion removes a shared-layer customer
            // of the same class when one exists (it relocates instantly).
            const double from_layer1 = (x.x2[k] == 0) ? p.mu[k] * x.x1[k] : 0.0;
            const double from_layer2 =
                (x.x2[k] > 0 ? p.mu[k] * x.x1[k] : 0.0) + p.mu[k] * x.x2[k];
            if (from_layer1 > 0.0) out.push_back({{1, k, -1}, from_layer1});
            if (from_layer2 > 0.0) out.push_back({{2, k, -1}, from_layer2});
        }
    }
}

inline std::vector<Transition> transition_rates(const SystemParams& p, Policy policy,
                                                const State& x) {
    std::vector<Transition> out;
    transition_rates(p, policy, x, out);
    return out;
}

} // namespace losslab

#endif
