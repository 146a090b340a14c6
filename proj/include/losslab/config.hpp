#ifndef LOSSLAB_CONFIG_HPP
#define LOSSLAB_CONFIG_HPP

#include <cstddef>

namespace losslab {

/// All numeric tolerances in one place.
struct Tolerances {
    double stationary_residual = 1e-10; // ‖πQ‖_∞ target for solves
    double golden = 1e-6;               // reference-value comparisons (6 printed decimals)
    double total_variation = 1e-9;      // product form vs generic solver
    double ccdf_slack = 1e-12;          // pointwise CCDF dominance slack
    double rate_slack = 1e-12;          // rate inequality slack in order checks
    double conservation = 1e-9;         // PASTA / conservation-law cross-checks
};

/// Size guards for enumeration-heavy operations.
struct Caps {
    std::size_t max_states = 2'000'000;     // state-space enumeration
    std::size_t max_configs = 1'000'000;    // layer-1 reconfiguration set
    std::size_t max_pairs = 100'000'000;    // ordered-pair scans
    std::size_t massey_max_states = 18;     // upper-set enumeration
};

} // namespace losslab

#endif
