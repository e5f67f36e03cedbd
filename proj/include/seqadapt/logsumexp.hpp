#ifndef SEQADAPT_LOGSUMEXP_HPP
#define SEQADAPT_LOGSUMEXP_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace seqadapt {

/// log(sum_i exp(v_i)) with max-shift so huge exponents never overflow.
inline double log_sum_exp(std::span<const double> values) {
    const double max_value = *std::max_element(values.begin(), values.end());
    if (!std::isfinite(max_value)) return max_value;
    double sum = 0.0;
    for (double v : values) sum += std::exp(v - max_value);
    return max_value + std::log(sum);
}

/// Subtracts log_sum_exp in place, leaving normalized log-masses.
inline void log_normalize(std::vector<double>& log_weights) {
    const double lse = log_sum_exp(log_weights);
    for (double& w : log_weights) w -= lse;
}

} // namespace seqadapt

#endif
