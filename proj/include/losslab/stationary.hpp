#ifndef LOSSLAB_STATIONARY_HPP
#define LOSSLAB_STATIONARY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "losslab/distribution.hpp"
#include "losslab/generator.hpp"

namespace losslab {

struct SolveOptions {
    double residual_tol = 1e-10;
    std::size_t direct_max_states = 50'000; // sparse LU above this falls back to iteration
    std::size_t max_iterations = 5'000'000; // uniformized power-iteration budget
};

struct SolveInfo {
    double residual = 0.0;
    bool used_direct = true;
    std::size_t recurrent_states = 0;
};

namespace detail {

/// Strongly connected components of the positive-rate digraph (iterative
/// Tarjan). Returns a component id per state; ids are in reverse topological
/// order (a component only reaches components with smaller or equal id).
inline std::vector<int> scc_components(const GeneratorMatrix& g, int& num_components) {
    const int n = static_cast<int>(g.size());
    std::vector<int> index(n, -1), lowlink(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0;
    num_components = 0;

    struct Frame {
        int v;
        std::size_t edge;
    };
    std::vector<Frame> call;
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        call.push_back({root, 0});
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& edges = g.rows[static_cast<std::size_t>(f.v)];
            if (f.edge < edges.size()) {
                const int w = edges[f.edge++].first;
                if (index[w] == -1) {
                    call.push_back({w, 0});
                    index[w] = lowlink[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                } else if (on_stack[w]) {
                    lowlink[f.v] = std::min(lowlink[f.v], index[w]);
                }
            } else {
                if (lowlink[f.v] == index[f.v]) {
                    for (;;) {
                        const int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = num_components;
                        if (w == f.v) break;
                    }
                    ++num_components;
                }
                const int v = f.v;
                call.pop_back();
                if (!call.empty())
                    lowlink[call.back().v] = std::min(lowlink[call.back().v], lowlink[v]);
            }
        }
    }
    return comp;
}

} // namespace detail

/// States of the unique closed communicating class, in canonical order.
/// For the overflow policy this is all of S; for maximum packing the states
/// with a free dedicated server and shared-layer customers of the same class
/// are transient and excluded.
inline std::vector<int> recurrent_class(const GeneratorMatrix& g) {
    int num_components = 0;
    const std::vector<int> comp = detail::scc_components(g, num_components);
    std::vector<bool> closed(static_cast<std::size_t>(num_components), true);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (const auto& [j, rate] : g.rows[i])
            if (comp[i] != comp[static_cast<std::size_t>(j)])
                closed[static_cast<std::size_t>(comp[i])] = false;
    int closed_id = -1;
    for (int c = 0; c < num_components; ++c) {
        if (!closed[static_cast<std::size_t>(c)]) continue;
        if (closed_id != -1)
            throw NumericalError("generator has more than one closed communicating class");
        closed_id = c;
    }
    if (closed_id == -1)
        throw NumericalError("generator has no closed communicating class");
    std::vector<int> rec;
    for (int i = 0; i < static_cast<int>(g.size()); ++i)
        if (comp[static_cast<std::size_t>(i)] == closed_id) rec.push_back(i);
    return rec;
}

/// ‖πQ‖_∞ over the full state space.
inline double residual_inf(const GeneratorMatrix& g, const std::vector<double>& p) {
    std::vector<double> flow(g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (p[i] == 0.0) continue;
        flow[i] -= p[i] * g.exit_rate[i];
        for (const auto& [j, rate] : g.rows[i]) flow[static_cast<std::size_t>(j)] += p[i] * rate;
    }
    double r = 0.0;
    for (double f : flow) r = std::max(r, std::abs(f));
    return r;
}

namespace detail {

inline bool solve_direct(const GeneratorMatrix& g, const std::vector<int>& rec,
                         std::vector<double>& pi_rec) {
    const int r = static_cast<int>(rec.size());
    std::vector<int> local(g.size(), -1);
    for (int a = 0; a < r; ++a) local[static_cast<std::size_t>(rec[a])] = a;

    // Global balance transposed, with the last equation replaced by
    // normalization: rows of M are M[b][a] = Q(rec[a] -> rec[b]).
    std::vector<Eigen::Triplet<double>> trip;
    for (int a = 0; a < r; ++a) {
        const std::size_t i = static_cast<std::size_t>(rec[a]);
        trip.emplace_back(r - 1, a, 1.0); // normalization row
        for (const auto& [j, rate] : g.rows[i]) {
            const int b = local[static_cast<std::size_t>(j)];
            if (b < 0) return false; // closed class guarantees b >= 0
            if (b != r - 1) trip.emplace_back(b, a, rate);
        }
        if (a != r - 1) trip.emplace_back(a, a, -g.exit_rate[i]);
    }
    Eigen::SparseMatrix<double> M(r, r);
    M.setFromTriplets(trip.begin(), trip.end());
    M.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(M);
    lu.factorize(M);
    if (lu.info() != Eigen::Success) return false;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(r);
    b[r - 1] = 1.0;
    const Eigen::VectorXd x = lu.solve(b);
    if (lu.info() != Eigen::Success) return false;

    pi_rec.assign(static_cast<std::size_t>(r), 0.0);
    double sum = 0.0;
    for (int a = 0; a < r; ++a) {
        double v = x[a];
        if (v < 0.0) {
            if (v < -1e-9) return false; // numerically broken solve
            v = 0.0;
        }
        pi_rec[static_cast<std::size_t>(a)] = v;
        sum += v;
    }
    if (!(sum > 0.0)) return false;
    for (auto& v : pi_rec) v /= sum;
    return true;
}

inline void solve_power(const GeneratorMatrix& g, const std::vector<int>& rec,
                        std::vector<double>& pi_rec, const SolveOptions& opt,
                        std::vector<double>& scratch_full) {
    const std::size_t r = rec.size();
    double max_exit = 0.0;
    for (int i : rec) max_exit = std::max(max_exit, g.exit_rate[static_cast<std::size_t>(i)]);
    const double uniform_rate = max_exit * 1.05 + 1e-12;

    std::vector<int> local(g.size(), -1);
    for (std::size_t a = 0; a < r; ++a) local[static_cast<std::size_t>(rec[a])] = static_cast<int>(a);

    if (pi_rec.size() != r) pi_rec.assign(r, 1.0 / static_cast<double>(r));
    std::vector<double> next(r, 0.0);
    auto residual_now = [&]() {
        scratch_full.assign(g.size(), 0.0);
        for (std::size_t a = 0; a < r; ++a)
            scratch_full[static_cast<std::size_t>(rec[a])] = pi_rec[a];
        return residual_inf(g, scratch_full);
    };
    for (std::size_t iter = 0; iter < opt.max_iterations; ++iter) {
        // One step of pi <- pi (I + Q / uniform_rate).
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t a = 0; a < r; ++a) {
            const std::size_t i = static_cast<std::size_t>(rec[a]);
            const double pa = pi_rec[a];
            next[a] += pa * (1.0 - g.exit_rate[i] / uniform_rate);
            for (const auto& [j, rate] : g.rows[i])
                next[static_cast<std::size_t>(local[static_cast<std::size_t>(j)])] +=
                    pa * rate / uniform_rate;
        }
        pi_rec.swap(next);
        if (iter % 64 == 63 && residual_now() <= opt.residual_tol) {
            double sum = 0.0;
            for (double v : pi_rec) sum += v;
            for (auto& v : pi_rec) v /= sum;
            return;
        }
    }
    throw ConvergenceError("stationary solve did not reach the residual tolerance within " +
                           std::to_string(opt.max_iterations) + " iterations");
}

} // namespace detail

/// Stationary distribution of the generator: solves πQ = 0, Σπ = 1 restricted
/// to the closed communicating class; transient states get probability zero.
/// A direct sparse-LU solve is used for spaces up to direct_max_states, with
/// uniformized power iteration as the fallback. Throws ConvergenceError when
/// the residual tolerance cannot be reached.
inline StateDistribution stationary(const GeneratorMatrix& g, const SolveOptions& opt = {},
                                    SolveInfo* info = nullptr) {
    const std::vector<int> rec = recurrent_class(g);
    std::vector<double> pi_rec;
    bool direct_ok = false;
    if (rec.size() <= opt.direct_max_states)
        direct_ok = detail::solve_direct(g, rec, pi_rec);

    StateDistribution dist;
    dist.space = g.space;
    dist.p.assign(g.size(), 0.0);
    std::vector<double> scratch;
    auto fill = [&]() {
        std::fill(dist.p.begin(), dist.p.end(), 0.0);
        for (std::size_t a = 0; a < rec.size(); ++a)
            dist.p[static_cast<std::size_t>(rec[a])] = pi_rec[a];
    };
    double res = 0.0;
    if (direct_ok) {
        fill();
        res = residual_inf(g, dist.p);
    }
    if (!direct_ok || res > opt.residual_tol) {
        // Refine (or compute from scratch) iteratively.
        detail::solve_power(g, rec, pi_rec, opt, scratch);
        fill();
        res = residual_inf(g, dist.p);
        direct_ok = false;
    }
    if (res > opt.residual_tol)
        throw ConvergenceError("stationary residual " + std::to_string(res) +
                               " exceeds tolerance");
    if (info) {
        info->residual = res;
        info->used_direct = direct_ok;
        info->recurrent_states = rec.size();
    }
    return dist;
}

inline StateDistribution stationary(const SystemParams& p, Policy policy,
                                    const SolveOptions& opt = {}, SolveInfo* info = nullptr) {
    return stationary(build_generator(p, policy), opt, info);
}

} // namespace losslab

#endif
