#ifndef LOSSLAB_STATE_HPP
#define LOSSLAB_STATE_HPP

#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "losslab/config.hpp"
#include "losslab/errors.hpp"
#include "losslab/params.hpp"

namespace losslab {

/// Occupancy of a two-layer loss system: x1[k] class-k customers in the
/// dedicated layer, x2[k] in the shared layer.
struct State {
    std::vector<int> x1;
    std::vector<int> x2;

    int total() const {
        return std::accumulate(x1.begin(), x1.end(), 0) +
               std::accumulate(x2.begin(), x2.end(), 0);
    }
    int shared_total() const { return std::accumulate(x2.begin(), x2.end(), 0); }

    static State zero(int num_classes) {
        return State{std::vector<int>(num_classes, 0), std::vector<int>(num_classes, 0)};
    }

    friend bool operator==(const State& a, const State& b) = default;
};

/// Lexicographic order of the concatenated vector (x1, x2); this is the
/// canonical enumeration order of the state space.
inline bool lex_less(const State& a, const State& b) {
    if (a.x1 != b.x1) return a.x1 < b.x1;
    return a.x2 < b.x2;
}

/// The comparison preorder: x ⪯ y iff x1[k] ≤ y1[k] for every class and the
/// total customer count of x does not exceed that of y. Reflexive and
/// transitive, but not antisymmetric (shared-layer customers of different
/// classes are interchangeable in the total).
inline bool preorder_leq(const State& x, const State& y) {
    for (std::size_t k = 0; k < x.x1.size(); ++k)
        if (x.x1[k] > y.x1[k]) return false;
    return x.total() <= y.total();
}

/// The coarser preorder that only compares total customer counts.
inline bool total_leq(const State& x, const State& y) {
    return x.total() <= y.total();
}

/// Where an arriving class-k customer goes in state x.
enum class Region {
    Layer1,  // a dedicated class-k server is free
    Layer2,  // dedicated servers full, a shared server is free
    Blocked, // both layers full for class k
};

inline Region region_of(const SystemParams& p, const State& x, int k) {
    if (x.x1[k] < p.m[k]) return Region::Layer1;
    if (x.shared_total() < p.n) return Region::Layer2;
    return Region::Blocked;
}

/// True iff x can be a recurrent state of the maximum-packing system:
/// no class may have a free dedicated server while occupying shared ones.
inline bool in_smp(const SystemParams& p, const State& x) {
    for (int k = 0; k < p.num_classes(); ++k)
        if (x.x1[k] < p.m[k] && x.x2[k] > 0) return false;
    return true;
}

/// Canonical packing of per-class totals into a state: dedicated servers are
/// filled first, the excess goes to the shared layer. Requires the totals to
/// fit, i.e. sum_k (t_k - m_k)^+ ≤ n.
inline State repack(const SystemParams& p, const std::vector<int>& totals) {
    if (static_cast<int>(totals.size()) != p.num_classes())
        throw DomainError("repack: totals length must equal the class count");
    State x = State::zero(p.num_classes());
    int overflowed = 0;
    for (int k = 0; k < p.num_classes(); ++k) {
        if (totals[k] < 0) throw DomainError("repack: totals must be nonnegative");
        x.x1[k] = std::min(totals[k], p.m[k]);
        x.x2[k] = std::max(totals[k] - p.m[k], 0);
        overflowed += x.x2[k];
    }
    if (overflowed > p.n)
        throw DomainError("repack: totals exceed the shared-layer capacity");
    return x;
}

/// Enumerated state space with the canonical lexicographic ordering; a
/// state's position in the list is its ID. Index lookup is arithmetic
/// (mixed-radix rank for layer 1, simplex rank for layer 2), so no hash
/// table is kept.
class StateSpace {
public:
    static std::size_t count_states(const SystemParams& p) {
        // Layer-1 box times the lattice simplex {x2 >= 0 : sum <= n}.
        const std::size_t cap = static_cast<std::size_t>(-1) / 4;
        std::size_t count = 1;
        for (int mk : p.m) {
            if (count > cap / (static_cast<std::size_t>(mk) + 1)) return cap;
            count *= static_cast<std::size_t>(mk) + 1;
        }
        const std::size_t simplex = simplex_count(p.num_classes(), p.n);
        if (simplex != 0 && count > cap / simplex) return cap;
        return count * simplex;
    }

    static StateSpace enumerate(const SystemParams& p, std::size_t max_states = Caps{}.max_states) {
        p.validate();
        const std::size_t total = count_states(p);
        if (total > max_states)
            throw CapacityError("state space has " + std::to_string(total) +
                                " states, exceeding the cap of " + std::to_string(max_states));
        StateSpace s;
        s.params_ = p;
        s.states_.reserve(total);
        State x = State::zero(p.num_classes());
        enumerate_layer1(p, x, 0, s.states_);
        s.build_rank_tables();
        return s;
    }

    const SystemParams& params() const { return params_; }
    const std::vector<State>& states() const { return states_; }
    std::size_t size() const { return states_.size(); }
    const State& state(int id) const { return states_[static_cast<std::size_t>(id)]; }

    bool contains(const State& x) const {
        const int K = params_.num_classes();
        if (static_cast<int>(x.x1.size()) != K || static_cast<int>(x.x2.size()) != K)
            return false;
        int shared = 0;
        for (int k = 0; k < K; ++k) {
            if (x.x1[k] < 0 || x.x1[k] > params_.m[k] || x.x2[k] < 0) return false;
            shared += x.x2[k];
        }
        return shared <= params_.n;
    }

    int index_of(const State& x) const {
        if (!contains(x))
            throw DomainError("index_of: state is not a member of the state space");
        const int K = params_.num_classes();
        std::size_t rank1 = 0;
        for (int k = 0; k < K; ++k)
            rank1 = rank1 * static_cast<std::size_t>(params_.m[k] + 1) +
                    static_cast<std::size_t>(x.x1[k]);
        // Lexicographic rank of x2 within the simplex {sum <= n}.
        std::size_t rank2 = 0;
        int budget = params_.n;
        for (int k = 0; k < K; ++k) {
            for (int v = 0; v < x.x2[k]; ++v)
                rank2 += simplex_count(K - 1 - k, budget - v);
            budget -= x.x2[k];
        }
        return static_cast<int>(rank1 * simplex_size_ + rank2);
    }

    /// Number of nonnegative integer d-tuples with sum at most r.
    static std::size_t simplex_count(int d, int r) {
        if (r < 0) return 0;
        if (d == 0) return 1;
        // C(r + d, d)
        std::size_t result = 1;
        for (int i = 1; i <= d; ++i)
            result = result * static_cast<std::size_t>(r + i) / static_cast<std::size_t>(i);
        return result;
    }

private:
    static void enumerate_layer1(const SystemParams& p, State& x, int k,
                                 std::vector<State>& out) {
        if (k == p.num_classes()) {
            enumerate_layer2(p, x, 0, p.n, out);
            return;
        }
        for (int v = 0; v <= p.m[k]; ++v) {
            x.x1[k] = v;
            enumerate_layer1(p, x, k + 1, out);
        }
        x.x1[k] = 0;
    }

    static void enumerate_layer2(const SystemParams& p, State& x, int k, int budget,
                                 std::vector<State>& out) {
        if (k == p.num_classes()) {
            out.push_back(x);
            return;
        }
        for (int v = 0; v <= budget; ++v) {
            x.x2[k] = v;
            enumerate_layer2(p, x, k + 1, budget - v, out);
        }
        x.x2[k] = 0;
    }

    void build_rank_tables() { simplex_size_ = simplex_count(params_.num_classes(), params_.n); }

    SystemParams params_;
    std::vector<State> states_;
    std::size_t simplex_size_ = 1;
};

inline std::string to_string(const State& x) {
    std::string s = "(";
    for (std::size_t k = 0; k < x.x1.size(); ++k)
        s += (k ? "," : "") + std::to_string(x.x1[k]);
    s += "|";
    for (std::size_t k = 0; k < x.x2.size(); ++k)
        s += (k ? "," : "") + std::to_string(x.x2[k]);
    return s + ")";
}

} // namespace losslab

#endif
