#ifndef LOSSLAB_GENERATOR_HPP
#define LOSSLAB_GENERATOR_HPP

#include <memory>
#include <utility>
#include <vector>

#include "losslab/transitions.hpp"

namespace losslab {

/// Sparse CTMC generator over an enumerated state space. Only off-diagonal
/// entries are stored; the diagonal is implied as minus the row sum.
struct GeneratorMatrix {
    std::shared_ptr<const StateSpace> space;
    Policy policy = Policy::Overflow;
    std::vector<std::vector<std::pair<int, double>>> rows; // (target id, rate)
    std::vector<double> exit_rate;                         // row sums

    std::size_t size() const { return rows.size(); }
};

inline GeneratorMatrix build_generator(std::shared_ptr<const StateSpace> space, Policy policy) {
    GeneratorMatrix g;
    g.space = std::move(space);
    g.policy = policy;
    const std::size_t n = g.space->size();
    g.rows.resize(n);
    g.exit_rate.assign(n, 0.0);
    std::vector<Transition> moves;
    for (std::size_t i = 0; i < n; ++i) {
        const State& x = g.space->state(static_cast<int>(i));
        transition_rates(g.space->params(), policy, x, moves);
        g.rows[i].reserve(moves.size());
        for (const Transition& t : moves) {
            const int j = g.space->index_of(apply_move(x, t.move));
            g.rows[i].emplace_back(j, t.rate);
            g.exit_rate[i] += t.rate;
        }
    }
    return g;
}

inline GeneratorMatrix build_generator(const SystemParams& p, Policy policy,
                                       std::size_t max_states = Caps{}.max_states) {
    auto space = std::make_shared<StateSpace>(StateSpace::enumerate(p, max_states));
    return build_generator(std::move(space), policy);
}

} // namespace losslab

#endif
