#ifndef LOSSLAB_SIM_HPP
#define LOSSLAB_SIM_HPP

#include <cstdint>
#include <vector>

#include "losslab/rng.hpp"
#include "losslab/transitions.hpp"

namespace losslab {

struct PathPoint {
    double time;
    State state;
};

/// A simulated trajectory: points[0] is the initial state at time 0 and each
/// later point records the state right after a jump.
struct EventPath {
    std::vector<PathPoint> points;

    const State& final_state() const { return points.back().state; }
};

/// Exact-jump CTMC simulation: samples the exponential holding time at the
/// total outflow rate and picks the move proportionally to its rate. Calls
/// on_event(time, state) after every jump; stops at the horizon (the state
/// then persists to the horizon, which matters for time averages).
template <class OnEvent>
void run_ctmc(const SystemParams& p, Policy policy, State x, double horizon, RngStream& rng,
              OnEvent&& on_event) {
    p.validate();
    double t = 0.0;
    std::vector<Transition> moves;
    for (;;) {
        transition_rates(p, policy, x, moves);
        double total = 0.0;
        for (const Transition& m : moves) total += m.rate;
        if (total <= 0.0) return; // absorbing (cannot happen with positive rates)
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
        x = apply_move(x, moves[chosen].move);
        on_event(t, x);
    }
}

inline EventPath simulate(const SystemParams& p, Policy policy, double horizon,
                          std::uint64_t seed, const State* initial = nullptr) {
    State x = initial ? *initial : State::zero(p.num_classes());
    EventPath path;
    path.points.push_back({0.0, x});
    RngStream rng(seed);
    run_ctmc(p, policy, x, horizon, rng,
             [&](double t, const State& s) { path.points.push_back({t, s}); });
    return path;
}

struct TimeAverages {
    double total = 0.0;                 // time-averaged |x|
    std::vector<double> per_class;      // time-averaged x1[k] + x2[k]
    std::size_t events = 0;
};

/// Streaming time averages over one run; nothing is stored.
inline TimeAverages simulate_time_average(const SystemParams& p, Policy policy, double horizon,
                                          std::uint64_t seed, std::uint64_t stream = 0) {
    TimeAverages avg;
    avg.per_class.assign(static_cast<std::size_t>(p.num_classes()), 0.0);
    State x = State::zero(p.num_classes());
    double last_t = 0.0;
    State last_x = x;
    auto accumulate = [&](double until) {
        const double dt = until - last_t;
        avg.total += dt * last_x.total();
        for (int k = 0; k < p.num_classes(); ++k)
            avg.per_class[static_cast<std::size_t>(k)] +=
                dt * (last_x.x1[k] + last_x.x2[k]);
    };
    RngStream rng(seed, stream);
    run_ctmc(p, policy, x, horizon, rng, [&](double t, const State& s) {
        accumulate(t);
        last_t = t;
        last_x = s;
        ++avg.events;
    });
    accumulate(horizon);
    avg.total /= horizon;
    for (auto& v : avg.per_class) v /= horizon;
    return avg;
}

/// State occupancy sampled at equally spaced epochs after a burn-in period;
/// returns per-state counts aligned with the space's IDs. Used for
/// goodness-of-fit checks against exact stationary laws.
inline std::vector<std::int64_t> sample_occupancy(const StateSpace& space, Policy policy,
                                                  double burn_in, double spacing,
                                                  std::size_t samples, std::uint64_t seed,
                                                  std::uint64_t stream = 0) {
    std::vector<std::int64_t> counts(space.size(), 0);
    const SystemParams& p = space.params();
    State x = State::zero(p.num_classes());
    const double horizon = burn_in + spacing * static_cast<double>(samples);
    double next_sample = burn_in;
    std::size_t taken = 0;
    State current = x;
    RngStream rng(seed, stream);
    auto take_until = [&](double t, const State& s) {
        while (taken < samples && next_sample < t) {
            ++counts[static_cast<std::size_t>(space.index_of(current))];
            ++taken;
            next_sample += spacing;
        }
        current = s;
    };
    run_ctmc(p, policy, x, horizon, rng, take_until);
    while (taken < samples) {
        ++counts[static_cast<std::size_t>(space.index_of(current))];
        ++taken;
    }
    return counts;
}

} // namespace losslab

#endif
