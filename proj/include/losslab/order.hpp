#ifndef LOSSLAB_ORDER_HPP
#define LOSSLAB_ORDER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "losslab/generator.hpp"
#include "losslab/distribution.hpp"

namespace losslab {

/// Which preorder generates the upper sets under test.
enum class PreorderKind {
    Layered, // x1 componentwise and total
    TotalOnly, // total only; the layered conditions are known to fail for it
};

inline bool preorder_holds(PreorderKind kind, const State& x, const State& y) {
    return kind == PreorderKind::Layered ? preorder_leq(x, y) : total_leq(x, y);
}

struct OrderViolation {
    State x;
    State y;
    std::string condition;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct ComparisonVerdict {
    bool holds = true;
    std::vector<OrderViolation> violations;

    void record(const State& x, const State& y, std::string condition, double lhs, double rhs) {
        holds = false;
        violations.push_back({x, y, std::move(condition), lhs, rhs});
    }
};

inline nlohmann::json to_json(const State& x) {
    return nlohmann::json{{"x1", x.x1}, {"x2", x.x2}};
}

inline nlohmann::json to_json(const ComparisonVerdict& v) {
    nlohmann::json viol = nlohmann::json::array();
    for (const auto& w : v.violations)
        viol.push_back(nlohmann::json{{"x", to_json(w.x)},
                                      {"y", to_json(w.y)},
                                      {"condition", w.condition},
                                      {"lhs", w.lhs},
                                      {"rhs", w.rhs}});
    return nlohmann::json{{"holds", v.holds}, {"violations", viol}};
}

namespace detail {

/// Per-state rate tables split by direction, indexed (layer-1 class k) and
/// summed, as the comparison conditions need them.
struct RateProfile {
    std::vector<double> up_layer1;   // lambda_{1,k}(x)
    std::vector<double> down_layer1; // phi_{1,k}(x)
    double up_sum = 0.0;
    double down_sum = 0.0;
};

inline RateProfile rate_profile(const SystemParams& p, Policy policy, const State& x) {
    RateProfile r;
    const std::size_t K = static_cast<std::size_t>(p.num_classes());
    r.up_layer1.assign(K, 0.0);
    r.down_layer1.assign(K, 0.0);
    for (const Transition& t : transition_rates(p, policy, x)) {
        if (t.move.delta > 0) {
            r.up_sum += t.rate;
            if (t.move.layer == 1) r.up_layer1[static_cast<std::size_t>(t.move.cls)] = t.rate;
        } else {
            r.down_sum += t.rate;
            if (t.move.layer == 1) r.down_layer1[static_cast<std::size_t>(t.move.cls)] = t.rate;
        }
    }
    return r;
}

} // namespace detail

/// Exhaustively verifies the two comparison conditions between system X
/// (rates lambda, phi) and system Y (rates lambda', phi') over all ordered
/// state pairs x ⪯ y of the shared state space:
///   (i)  for every class k with x1[k] = y1[k]:
///          lambda_{1,k}(x) <= lambda'_{1,k}(y)  and  phi_{1,k}(x) >= phi'_{1,k}(y);
///   (ii) whenever |x| = |y|:
///          sum lambda(x) <= sum lambda'(y)      and  sum phi(x) >= sum phi'(y).
/// Both systems must share m and n. Every violating pair is reported.
inline ComparisonVerdict check_theorem1(const SystemParams& px, Policy polx,
                                        const SystemParams& py, Policy poly,
                                        std::size_t max_pairs = Caps{}.max_pairs,
                                        double rate_slack = Tolerances{}.rate_slack) {
    px.validate();
    py.validate();
    if (!same_geometry(px, py))
        throw ValidationError("check_theorem1: systems must share the same m and n");
    const StateSpace space = StateSpace::enumerate(px);
    const std::size_t n = space.size();
    if (n * n > max_pairs)
        throw CapacityError("pair scan of " + std::to_string(n * n) +
                            " pairs exceeds the budget");

    std::vector<detail::RateProfile> rx(n), ry(n);
    std::vector<int> totals(n);
    for (std::size_t i = 0; i < n; ++i) {
        rx[i] = detail::rate_profile(px, polx, space.state(static_cast<int>(i)));
        ry[i] = detail::rate_profile(py, poly, space.state(static_cast<int>(i)));
        totals[i] = space.state(static_cast<int>(i)).total();
    }

    const int K = px.num_classes();
    ComparisonVerdict verdict;
    for (std::size_t ix = 0; ix < n; ++ix) {
        const State& x = space.state(static_cast<int>(ix));
        for (std::size_t iy = 0; iy < n; ++iy) {
            if (totals[ix] > totals[iy]) continue;
            const State& y = space.state(static_cast<int>(iy));
            bool below = true;
            for (int k = 0; k < K; ++k)
                if (x.x1[k] > y.x1[k]) { below = false; break; }
            if (!below) continue;

            for (int k = 0; k < K; ++k) {
                const std::size_t kk = static_cast<std::size_t>(k);
                if (x.x1[k] != y.x1[k]) continue;
                if (rx[ix].up_layer1[kk] > ry[iy].up_layer1[kk] + rate_slack)
                    verdict.record(x, y, "arrival_dedicated[k=" + std::to_string(k) + "]",
                                   rx[ix].up_layer1[kk], ry[iy].up_layer1[kk]);
                if (rx[ix].down_layer1[kk] < ry[iy].down_layer1[kk] - rate_slack)
                    verdict.record(x, y, "departure_dedicated[k=" + std::to_string(k) + "]",
                                   rx[ix].down_layer1[kk], ry[iy].down_layer1[kk]);
            }
            if (totals[ix] == totals[iy]) {
                if (rx[ix].up_sum > ry[iy].up_sum + rate_slack)
                    verdict.record(x, y, "arrival_sum", rx[ix].up_sum, ry[iy].up_sum);
                if (rx[ix].down_sum < ry[iy].down_sum - rate_slack)
                    verdict.record(x, y, "departure_sum", rx[ix].down_sum, ry[iy].down_sum);
            }
        }
    }
    return verdict;
}

/// Enumerates all upper sets of the preorder over the generator's state space
/// (bitmask scan; feasible only for small spaces) and checks the generator
/// criterion p(x, U) <= q(y, U) for every pair x ⪯ y and every upper set U
/// with x in U or y outside U, where p(x, U) is the total rate from x into U,
/// counted negatively through the diagonal when x lies inside U.
inline ComparisonVerdict check_massey(const GeneratorMatrix& gp, const GeneratorMatrix& gq,
                                      PreorderKind kind,
                                      std::size_t max_states = Caps{}.massey_max_states,
                                      double rate_slack = Tolerances{}.rate_slack) {
    if (!same_geometry(gp.space->params(), gq.space->params()))
        throw ValidationError("check_massey: generators must share the same state space");
    const StateSpace& space = *gp.space;
    const std::size_t n = space.size();
    if (n > max_states || n > 32)
        throw CapacityError("upper-set enumeration over " + std::to_string(n) +
                            " states exceeds the cap of " + std::to_string(max_states));

    std::vector<std::uint32_t> up_mask(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (preorder_holds(kind, space.state(static_cast<int>(i)),
                               space.state(static_cast<int>(j))))
                up_mask[i] |= std::uint32_t{1} << j;

    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (up_mask[i] & (std::uint32_t{1} << j))
                pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));

    auto rate_into = [&](const GeneratorMatrix& g, int s, std::uint32_t mask) {
        const std::size_t si = static_cast<std::size_t>(s);
        double r = (mask >> s) & 1u ? -g.exit_rate[si] : 0.0;
        for (const auto& [t, rate] : g.rows[si])
            if ((mask >> t) & 1u) r += rate;
        return r;
    };

    ComparisonVerdict verdict;
    const std::uint32_t full = n == 32 ? ~std::uint32_t{0}
                                       : ((std::uint32_t{1} << n) - 1);
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
        bool upper = true;
        for (std::uint32_t rest = mask; rest;) {
            const int i = std::countr_zero(rest);
            rest &= rest - 1;
            if ((up_mask[static_cast<std::size_t>(i)] & mask) !=
                up_mask[static_cast<std::size_t>(i)]) {
                upper = false;
                break;
            }
        }
        if (!upper) continue;
        for (const auto& [ix, iy] : pairs) {
            const bool x_in = (mask >> ix) & 1u;
            const bool y_in = (mask >> iy) & 1u;
            if (!(x_in || !y_in)) continue;
            const double lhs = rate_into(gp, ix, mask);
            const double rhs = rate_into(gq, iy, mask);
            if (lhs > rhs + rate_slack)
                verdict.record(space.state(ix), space.state(iy),
                               "upper_set_flow[mask=" + std::to_string(mask) + "]", lhs, rhs);
        }
        if (mask == full) break; // avoid wrap-around when n == 32
    }
    return verdict;
}

/// Stochastic dominance d1 ≤_st d2 between integer-valued distributions:
/// pointwise CCDF comparison with a small slack for float noise.
inline ComparisonVerdict dominates_st(const IntDistribution& d1, const IntDistribution& d2,
                                      double slack = Tolerances{}.ccdf_slack) {
    const auto c1 = ccdf(d1), c2 = ccdf(d2);
    ComparisonVerdict verdict;
    const std::size_t len = std::max(c1.size(), c2.size());
    for (std::size_t j = 0; j < len; ++j) {
        const double a = j < c1.size() ? c1[j] : 0.0;
        const double b = j < c2.size() ? c2[j] : 0.0;
        if (a > b + slack) {
            State marker = State::zero(1);
            marker.x1[0] = static_cast<int>(j);
            verdict.record(marker, marker, "ccdf[j=" + std::to_string(j) + "]", a, b);
        }
    }
    return verdict;
}

/// Stochastic dominance between distributions on a shared state space with
/// respect to the preorder: d1(U) <= d2(U) for every upper set U. Upper sets
/// are enumerated as in check_massey, so the same state cap applies.
inline ComparisonVerdict dominates_st(const StateDistribution& d1, const StateDistribution& d2,
                                      PreorderKind kind,
                                      std::size_t max_states = Caps{}.massey_max_states,
                                      double slack = Tolerances{}.ccdf_slack) {
    if (!same_geometry(d1.space->params(), d2.space->params()))
        throw ValidationError("dominates_st: distributions must share the state space");
    const StateSpace& space = *d1.space;
    const std::size_t n = space.size();
    if (n > max_states || n > 32)
        throw CapacityError("upper-set enumeration over " + std::to_string(n) +
                            " states exceeds the cap");

    std::vector<std::uint32_t> up_mask(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (preorder_holds(kind, space.state(static_cast<int>(i)),
                               space.state(static_cast<int>(j))))
                up_mask[i] |= std::uint32_t{1} << j;

    ComparisonVerdict verdict;
    const std::uint32_t full = n == 32 ? ~std::uint32_t{0}
                                       : ((std::uint32_t{1} << n) - 1);
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
        bool upper = true;
        double mass1 = 0.0, mass2 = 0.0;
        for (std::uint32_t rest = mask; rest;) {
            const int i = std::countr_zero(rest);
            rest &= rest - 1;
            if ((up_mask[static_cast<std::size_t>(i)] & mask) !=
                up_mask[static_cast<std::size_t>(i)]) {
                upper = false;
                break;
            }
            mass1 += d1.p[static_cast<std::size_t>(i)];
            mass2 += d2.p[static_cast<std::size_t>(i)];
        }
        if (upper && mass1 > mass2 + slack) {
            State marker = State::zero(d1.space->params().num_classes());
            verdict.record(marker, marker, "upper_set_mass[mask=" + std::to_string(mask) + "]",
                           mass1, mass2);
        }
        if (mask == full) break;
    }
    return verdict;
}

} // namespace losslab

#endif
