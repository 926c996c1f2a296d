#include "depthmark/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "depthmark/core.hpp"

namespace depthmark {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double wilcoxon_signed_rank(std::span<const double> diffs) {
    if (diffs.empty()) throw std::invalid_argument("empty sample");

    std::vector<std::pair<double, int>> nonzero;  // (|d|, sign)
    for (double d : diffs)
        if (d != 0.0) nonzero.push_back({std::abs(d), d > 0.0 ? 1 : -1});
    if (nonzero.empty()) return 1.0;

    std::sort(nonzero.begin(), nonzero.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    const std::size_t n = nonzero.size();
    double w_plus = 0.0;
    double tie_correction = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && nonzero[j].first == nonzero[i].first) ++j;
        double t = static_cast<double>(j - i);
        double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
        for (std::size_t k = i; k < j; ++k)
            if (nonzero[k].second > 0) w_plus += avg_rank;
        tie_correction += (t * t * t - t);
        i = j;
    }

    double nn = static_cast<double>(n);
    double mu = nn * (nn + 1.0) / 4.0;
    double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_correction / 48.0;
    if (var <= 0.0) return 1.0;  // all differences tied at one magnitude with n == 1

    double delta = w_plus - mu;
    double correction = (delta > 0.0) ? -0.5 : (delta < 0.0 ? 0.5 : 0.0);
    double z = (delta + correction) / std::sqrt(var);
    double p = 2.0 * normal_cdf(-std::abs(z));
    return std::min(1.0, std::max(p, std::numeric_limits<double>::min()));
}

std::pair<double, double> bootstrap_mean_ci(std::span<const double> diffs, int n_resamples,
                                            std::uint64_t rng_seed) {
    if (diffs.empty()) throw std::invalid_argument("empty sample");
    if (n_resamples < 1) throw std::invalid_argument("n_resamples must be positive");

    rng gen(rng_seed);
    const std::size_t n = diffs.size();
    std::vector<double> means(n_resamples);
    for (int b = 0; b < n_resamples; ++b) {
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) sum += diffs[gen.below(n)];
        means[b] = sum / static_cast<double>(n);
    }
    std::sort(means.begin(), means.end());

    auto quantile = [&means](double q) {
        double pos = q * static_cast<double>(means.size() - 1);
        std::size_t lo = static_cast<std::size_t>(pos);
        std::size_t hi = std::min(lo + 1, means.size() - 1);
        double frac = pos - static_cast<double>(lo);
        return means[lo] * (1.0 - frac) + means[hi] * frac;
    };
    return {quantile(0.025), quantile(0.975)};
}

double exact_discordance_test(int wins, int losses) {
    if (wins < 0 || losses < 0) throw std::invalid_argument("negative counts");
    const int n = wins + losses;
    if (n == 0) return 1.0;

    // log C(n, i) - n log 2, accumulated in log space for large n
    auto log_pmf = [n](int i) {
        return std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) -
               n * std::log(2.0);
    };
    const double lp_obs = log_pmf(wins);
    const double slack = std::log1p(1e-7);  // tolerate rounding of equal tail masses
    double p = 0.0;
    for (int i = 0; i <= n; ++i)
        if (log_pmf(i) <= lp_obs + slack) p += std::exp(log_pmf(i));
    return std::min(1.0, p);
}

}  // namespace depthmark
