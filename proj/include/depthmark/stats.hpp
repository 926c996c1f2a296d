#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace depthmark {

/// Two-sided paired Wilcoxon signed-rank test. Zero differences are dropped,
/// ties get average ranks, and the normal approximation uses tie-corrected
/// variance with a 0.5 continuity correction. All-zero input gives p = 1.
double wilcoxon_signed_rank(std::span<const double> diffs);

/// Percentile 95% bootstrap confidence interval for the mean difference.
std::pair<double, double> bootstrap_mean_ci(std::span<const double> diffs, int n_resamples,
                                            std::uint64_t rng_seed);

/// Two-sided exact binomial test of `wins` successes out of wins + losses at
/// p = 1/2 (point-probability rule). No discordances gives p = 1.
double exact_discordance_test(int wins, int losses);

double normal_cdf(double z);

}  // namespace depthmark
