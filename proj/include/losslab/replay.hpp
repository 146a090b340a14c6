#ifndef LOSSLAB_REPLAY_HPP
#define LOSSLAB_REPLAY_HPP

#include <algorithm>
#include <vector>

#include "losslab/sim.hpp"

namespace losslab {

struct ScheduledArrival {
    double time;
    int cls;
    double duration;
};

/// A fixed arrival schedule with per-customer service durations, replayed
/// deterministically through a routing rule.
struct ReplaySchedule {
    std::vector<ScheduledArrival> arrivals;
};

enum class ReplayRule {
    Overflow,
    MaximumPacking,
    AcceptClass1Only, // single-class comparator: rejects all but class 1
};

/// Deterministic replay. Ties at equal timestamps are resolved as departures
/// before arrivals, with a packing relocation applied immediately after the
/// departure that enabled it; a relocation shows up as the net unit move
/// -e_{2,k} (the dedicated layer stays full). Events at t <= until are
/// applied, so the reported states are right-continuous.
inline EventPath replay(const SystemParams& p, ReplayRule rule, const ReplaySchedule& schedule,
                        double until) {
    p.validate();
    for (const auto& a : schedule.arrivals) {
        if (a.time < 0.0 || a.duration < 0.0)
            throw ScheduleError("arrival times and durations must be nonnegative");
        if (a.cls < 0 || a.cls >= p.num_classes())
            throw ScheduleError("arrival class out of range");
    }
    std::vector<ScheduledArrival> arrivals(schedule.arrivals);
    std::stable_sort(arrivals.begin(), arrivals.end(),
                     [](const ScheduledArrival& a, const ScheduledArrival& b) {
                         return a.time < b.time;
                     });

    struct Active {
        double departure;
        int cls;
        int layer;
        int seq; // acceptance order; fixes tie-breaking and relocation choice
    };
    std::vector<Active> active;
    State x = State::zero(p.num_classes());
    EventPath path;
    path.points.push_back({0.0, x});
    int next_seq = 0;
    std::size_t next_arrival = 0;

    auto earliest_departure = [&]() {
        int best = -1;
        for (std::size_t i = 0; i < active.size(); ++i)
            if (best < 0 || active[i].departure < active[static_cast<std::size_t>(best)].departure ||
                (active[i].departure == active[static_cast<std::size_t>(best)].departure &&
                 active[i].seq < active[static_cast<std::size_t>(best)].seq))
                best = static_cast<int>(i);
        return best;
    };

    for (;;) {
        const int dep = earliest_departure();
        const double dep_time = dep >= 0 ? active[static_cast<std::size_t>(dep)].departure : HUGE_VAL;
        const double arr_time =
            next_arrival < arrivals.size() ? arrivals[next_arrival].time : HUGE_VAL;
        const double t = std::min(dep_time, arr_time);
        if (t > until || t == HUGE_VAL) break;

        if (dep_time <= arr_time) {
            const Active leaving = active[static_cast<std::size_t>(dep)];
            active.erase(active.begin() + dep);
            const int k = leaving.cls;
            bool relocated = false;
            if (rule == ReplayRule::MaximumPacking && leaving.layer == 1) {
                // Move the longest-waiting shared-layer customer of this class
                // into the freed dedicated server.
                int candidate = -1;
                for (std::size_t i = 0; i < active.size(); ++i)
                    if (active[i].cls == k && active[i].layer == 2 &&
                        (candidate < 0 || active[i].seq < active[static_cast<std::size_t>(candidate)].seq))
                        candidate = static_cast<int>(i);
                if (candidate >= 0) {
                    active[static_cast<std::size_t>(candidate)].layer = 1;
                    relocated = true;
                }
            }
            if (relocated) {
                x.x2[k] -= 1; // net effect: dedicated stays full, shared frees
            } else {
                (leaving.layer == 1 ? x.x1 : x.x2)[k] -= 1;
            }
            path.points.push_back({t, x});
        } else {
            const ScheduledArrival& a = arrivals[next_arrival++];
            const int k = a.cls;
            int layer = 0;
            if (rule == ReplayRule::AcceptClass1Only && k != 0) {
                layer = 0; // rejected by the comparator's acceptance rule
            } else if (x.x1[k] < p.m[k]) {
                layer = 1;
            } else if (x.shared_total() < p.n) {
                layer = 2;
            }
            if (layer != 0) {
                active.push_back({a.time + a.duration, k, layer, next_seq++});
                (layer == 1 ? x.x1 : x.x2)[k] += 1;
                path.points.push_back({t, x});
            }
        }
    }
    return path;
}

/// The two built-in demonstration schedules. Both show that a deterministic
/// path-by-path comparison can put the "larger" system below the original one
/// at some instant, which is why the orderings need probabilistic couplings.
struct NamedReplay {
    SystemParams params;
    ReplaySchedule schedule;
    double until;
};

inline NamedReplay named_replay_example1() {
    NamedReplay r;
    r.params = {{1, 0}, 1, {1.0, 1.0}, {1.0, 1.0}};
    r.schedule.arrivals = {{0.0, 0, 3.0}, {2.0, 0, 3.0}, {3.0, 1, 3.0}, {4.0, 0, 3.0}};
    r.until = 6.0;
    return r;
}

inline NamedReplay named_replay_example2() {
    NamedReplay r;
    r.params = {{0, 0}, 1, {1.0, 1.0}, {1.0, 1.0}};
    r.schedule.arrivals = {{0.0, 1, 2.0}, {1.0, 0, 2.0}, {2.0, 0, 2.0}};
    r.until = 3.0;
    return r;
}

} // namespace losslab

#endif
