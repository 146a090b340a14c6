#ifndef LOSSLAB_PARAMS_HPP
#define LOSSLAB_PARAMS_HPP

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "losslab/errors.hpp"

namespace losslab {

/// Parameters of a two-layer loss system: K customer classes, m_k dedicated
/// (layer-1) servers per class, n shared (layer-2) servers, Poisson arrivals
/// at rate lambda_k and exponential service at rate mu_k per customer.
struct SystemParams {
    std::vector<int> m;
    int n = 0;
    std::vector<double> lambda;
    std::vector<double> mu;

    int num_classes() const { return static_cast<int>(m.size()); }

    void validate() const {
        const std::size_t k = m.size();
        if (k == 0)
            throw ValidationError("system must have at least one customer class");
        if (lambda.size() != k || mu.size() != k)
            throw ValidationError("m, lambda, mu must have equal lengths");
        if (n < 0)
            throw ValidationError("shared server count n must be nonnegative");
        for (std::size_t i = 0; i < k; ++i) {
            if (m[i] < 0)
                throw ValidationError("dedicated server counts must be nonnegative");
            if (!(lambda[i] > 0.0))
                throw ValidationError("arrival rates must be strictly positive");
            if (!(mu[i] > 0.0))
                throw ValidationError("service rates must be strictly positive");
        }
    }

    double mu_min() const { return *std::min_element(mu.begin(), mu.end()); }
    double mu_max() const { return *std::max_element(mu.begin(), mu.end()); }

    /// Copy with every service rate replaced by the same value.
    SystemParams with_uniform_mu(double rate) const {
        SystemParams p = *this;
        std::fill(p.mu.begin(), p.mu.end(), rate);
        return p;
    }

    bool equal_service_rates() const {
        return mu_min() == mu_max();
    }

    /// True when both systems share the same state space (same m and n).
    friend bool same_geometry(const SystemParams& a, const SystemParams& b) {
        return a.m == b.m && a.n == b.n;
    }
};

namespace detail {

/// Accepts JSON numbers, decimal strings ("0.2"), and fraction strings ("1/5").
inline double parse_rate(const nlohmann::json& v, const char* what) {
    if (v.is_number())
        return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        const auto slash = s.find('/');
        char* end = nullptr;
        if (slash == std::string::npos) {
            const double x = std::strtod(s.c_str(), &end);
            if (end == s.c_str() || *end != '\0')
                throw ValidationError(std::string(what) + ": cannot parse '" + s + "'");
            return x;
        }
        const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        const double p = std::strtod(num.c_str(), &end);
        if (end == num.c_str() || *end != '\0')
            throw ValidationError(std::string(what) + ": cannot parse '" + s + "'");
        const double q = std::strtod(den.c_str(), &end);
        if (end == den.c_str() || *end != '\0' || q == 0.0)
            throw ValidationError(std::string(what) + ": cannot parse '" + s + "'");
        return p / q;
    }
    throw ValidationError(std::string(what) + ": expected number or numeric string");
}

} // namespace detail

/// Reads {"m": [..], "n": int, "lambda": [..], "mu": [..]}; K is inferred from
/// the vector lengths. Rates may be given as numbers or as decimal/fraction
/// strings so inputs like "1/5" stay faithful to their intended value.
inline SystemParams params_from_json(const nlohmann::json& j) {
    SystemParams p;
    if (!j.is_object() || !j.contains("m") || !j.contains("n") ||
        !j.contains("lambda") || !j.contains("mu"))
        throw ValidationError("system document must contain m, n, lambda, mu");
    if (!j["m"].is_array() || !j["lambda"].is_array() || !j["mu"].is_array())
        throw ValidationError("m, lambda, mu must be arrays");
    for (const auto& v : j["m"]) {
        if (!v.is_number_integer() || v.get<long long>() < 0)
            throw ValidationError("m entries must be nonnegative integers");
        p.m.push_back(v.get<int>());
    }
    if (!j["n"].is_number_integer())
        throw ValidationError("n must be an integer");
    p.n = j["n"].get<int>();
    for (const auto& v : j["lambda"])
        p.lambda.push_back(detail::parse_rate(v, "lambda"));
    for (const auto& v : j["mu"])
        p.mu.push_back(detail::parse_rate(v, "mu"));
    p.validate();
    return p;
}

inline nlohmann::json params_to_json(const SystemParams& p) {
    return nlohmann::json{{"m", p.m}, {"n", p.n}, {"lambda", p.lambda}, {"mu", p.mu}};
}

} // namespace losslab

#endif
