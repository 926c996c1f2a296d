#include "depthmark/landmarks.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "depthmark/geometry.hpp"

namespace depthmark {

landmark_set maxmin(const point_cloud& cloud, int budget, int first) {
    const int n = static_cast<int>(cloud.size());
    if (budget < 1) throw std::invalid_argument("budget must be positive");
    if (budget > n) throw std::invalid_argument("budget exceeds cloud");
    if (first < 0 || first >= n) throw std::invalid_argument("first index out of range");

    landmark_set out;
    out.method = "maxmin";
    out.indices.reserve(budget);
    out.indices.push_back(first);

    std::vector<double> min_dist(n);
    for (int i = 0; i < n; ++i) min_dist[i] = dist(cloud.points[i], cloud.points[first]);

    while (static_cast<int>(out.indices.size()) < budget) {
        int arg = 0;
        for (int i = 1; i < n; ++i)
            if (min_dist[i] > min_dist[arg]) arg = i;  // ties keep the lowest index
        out.indices.push_back(arg);
        for (int i = 0; i < n; ++i)
            min_dist[i] = std::min(min_dist[i], dist(cloud.points[i], cloud.points[arg]));
    }
    for (int idx : out.indices) out.coords.push_back(cloud.points[idx]);
    return out;
}

cell_partition assign_cells(const point_cloud& cloud, const landmark_set& seeds) {
    const int n = static_cast<int>(cloud.size());
    const int m = static_cast<int>(seeds.indices.size());
    if (m == 0) throw std::invalid_argument("empty seed set");

    cell_partition part;
    part.seed_indices = seeds.indices;
    part.assignment.assign(n, -1);
    part.cells.assign(m, {});

    for (int i = 0; i < n; ++i) {
        int best = 0;
        double best_d = dist(cloud.points[i], seeds.coords[0]);
        for (int j = 1; j < m; ++j) {
            double d = dist(cloud.points[i], seeds.coords[j]);
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        part.assignment[i] = best;
    }
    // A seed stays in its own cell even if another seed shares its coordinates.
    for (int j = 0; j < m; ++j) part.assignment[seeds.indices[j]] = j;

    for (int i = 0; i < n; ++i) part.cells[part.assignment[i]].push_back(i);
    return part;
}

std::vector<int> deepest_per_cell(const point_cloud& cloud, const cell_partition& part,
                                  const depth_params& dp) {
    std::vector<int> deepest;
    deepest.reserve(part.cells.size());
    for (const std::vector<int>& cell : part.cells) {
        if (cloud.dim == 2)
            deepest.push_back(deepest_point(cloud, cell));
        else
            deepest.push_back(deepest_point_directional(cloud, cell, dp.n_dirs, dp.seed));
    }
    return deepest;
}

std::vector<double> support_weighted_alphas(const point_cloud& cloud, const cell_partition& part,
                                            double alpha_max, double tau) {
    if (!(alpha_max > 0.0 && alpha_max <= 1.0))
        throw std::invalid_argument("alpha_max must lie in (0, 1]");
    if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");

    const double n_mean =
        static_cast<double>(cloud.size()) / static_cast<double>(part.cells.size());
    std::vector<double> alphas;
    alphas.reserve(part.cells.size());
    for (const std::vector<int>& cell : part.cells) {
        double ratio = static_cast<double>(cell.size()) / (tau * n_mean);
        alphas.push_back(alpha_max * std::min(1.0, ratio));
    }
    return alphas;
}

std::vector<vec3> recenter_targets(const point_cloud& cloud, const cell_partition& part,
                                   std::span<const double> alphas, const depth_params& dp) {
    if (alphas.size() != part.cells.size())
        throw std::invalid_argument("one alpha per cell required");
    std::vector<int> deepest = deepest_per_cell(cloud, part, dp);
    std::vector<vec3> targets;
    targets.reserve(part.cells.size());
    for (std::size_t i = 0; i < part.cells.size(); ++i) {
        const vec3& s = cloud.points[part.seed_indices[i]];
        const vec3& a = cloud.points[deepest[i]];
        targets.push_back((1.0 - alphas[i]) * s + alphas[i] * a);
    }
    return targets;
}

landmark_set project_to_cells(const point_cloud& cloud, const cell_partition& part,
                              std::span<const vec3> targets) {
    if (targets.size() != part.cells.size())
        throw std::invalid_argument("one target per cell required");
    landmark_set out;
    for (std::size_t i = 0; i < part.cells.size(); ++i) {
        int best = part.cells[i][0];
        double best_d = dist(cloud.points[best], targets[i]);
        for (int idx : part.cells[i]) {
            double d = dist(cloud.points[idx], targets[i]);
            if (d < best_d || (d == best_d && idx < best)) {
                best_d = d;
                best = idx;
            }
        }
        out.indices.push_back(best);
        out.coords.push_back(cloud.points[best]);
    }
    return out;
}

landmark_set recenter_full(const point_cloud& cloud, const cell_partition& part,
                           const depth_params& dp) {
    landmark_set out;
    out.method = "full_recenter";
    out.indices = deepest_per_cell(cloud, part, dp);
    for (int idx : out.indices) out.coords.push_back(cloud.points[idx]);
    return out;
}

landmark_set recenter_fixed_step(const point_cloud& cloud, const cell_partition& part, double alpha,
                                 const depth_params& dp) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
    std::vector<double> alphas(part.cells.size(), alpha);
    std::vector<vec3> targets = recenter_targets(cloud, part, alphas, dp);
    landmark_set out = project_to_cells(cloud, part, targets);
    out.method = "fixed_step";
    out.alpha_max = alpha;
    return out;
}

landmark_set recenter_support_weighted(const point_cloud& cloud, const cell_partition& part,
                                       double alpha_max, double tau, const depth_params& dp) {
    std::vector<double> alphas = support_weighted_alphas(cloud, part, alpha_max, tau);
    std::vector<vec3> targets = recenter_targets(cloud, part, alphas, dp);
    landmark_set out = project_to_cells(cloud, part, targets);
    out.method = "support_weighted";
    out.alpha_max = alpha_max;
    out.tau = tau;
    return out;
}

landmark_set random_landmarks(const point_cloud& cloud, int budget, std::uint64_t rng_seed) {
    const int n = static_cast<int>(cloud.size());
    if (budget < 1) throw std::invalid_argument("budget must be positive");
    if (budget > n) throw std::invalid_argument("budget exceeds cloud");

    rng gen(rng_seed);
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    landmark_set out;
    out.method = "random";
    for (int t = 0; t < budget; ++t) {
        std::size_t j = t + static_cast<std::size_t>(gen.below(n - t));
        std::swap(pool[t], pool[j]);
        out.indices.push_back(pool[t]);
        out.coords.push_back(cloud.points[pool[t]]);
    }
    return out;
}

namespace {

// Greedy scan in permutation order: admit anything farther than eps from all
// admitted points.
std::vector<int> greedy_net(const point_cloud& cloud, const std::vector<int>& perm, double eps) {
    std::vector<int> admitted;
    for (int idx : perm) {
        bool ok = true;
        for (int a : admitted) {
            if (dist(cloud.points[idx], cloud.points[a]) <= eps) {
                ok = false;
                break;
            }
        }
        if (ok) admitted.push_back(idx);
    }
    return admitted;
}

}  // namespace

landmark_set epsnet_matched(const point_cloud& cloud, int budget, std::uint64_t rng_seed) {
    const int n = static_cast<int>(cloud.size());
    if (budget < 1) throw std::invalid_argument("budget must be positive");
    if (budget > n) throw std::invalid_argument("budget exceeds cloud");

    rng gen(rng_seed);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int t = 0; t < n - 1; ++t)
        std::swap(perm[t], perm[t + static_cast<std::size_t>(gen.below(n - t))]);

    double diameter = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            diameter = std::max(diameter, dist(cloud.points[i], cloud.points[j]));

    if (static_cast<int>(greedy_net(cloud, perm, 0.0).size()) < budget)
        throw std::invalid_argument("budget exceeds distinct points");

    // Net size shrinks as eps grows; bisect toward the crossover. lo always
    // admits at least `budget` points.
    double lo = 0.0, hi = diameter;
    std::vector<int> admitted;
    double chosen_eps = 0.0;
    bool exact = false;
    for (int iter = 0; iter < 40; ++iter) {
        double mid = 0.5 * (lo + hi);
        std::vector<int> net = greedy_net(cloud, perm, mid);
        if (static_cast<int>(net.size()) == budget) {
            admitted = std::move(net);
            chosen_eps = mid;
            exact = true;
            break;
        }
        if (static_cast<int>(net.size()) > budget)
            lo = mid;
        else
            hi = mid;
    }
    if (!exact) {
        admitted = greedy_net(cloud, perm, lo);
        admitted.resize(budget);  // keep the first `budget` admitted
        chosen_eps = lo;
    }

    landmark_set out;
    out.method = "epsnet_matched";
    out.epsilon = chosen_eps;
    out.indices = std::move(admitted);
    for (int idx : out.indices) out.coords.push_back(cloud.points[idx]);
    return out;
}

landmark_set dense_core_maxmin(const point_cloud& cloud, int budget, int k, double keep_fraction) {
    const int n = static_cast<int>(cloud.size());
    if (budget < 1) throw std::invalid_argument("budget must be positive");
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (!(keep_fraction > 0.0 && keep_fraction <= 1.0))
        throw std::invalid_argument("keep_fraction must lie in (0, 1]");
    if (n < 2) throw std::invalid_argument("dense core needs at least two points");

    const int k_eff = std::min(k, n - 1);
    std::vector<std::pair<double, int>> knn_radius(n);
    std::vector<double> dists(n - 1);
    for (int i = 0; i < n; ++i) {
        int w = 0;
        for (int j = 0; j < n; ++j)
            if (j != i) dists[w++] = dist(cloud.points[i], cloud.points[j]);
        std::nth_element(dists.begin(), dists.begin() + (k_eff - 1), dists.end());
        knn_radius[i] = {dists[k_eff - 1], i};
    }
    std::sort(knn_radius.begin(), knn_radius.end());

    int keep = static_cast<int>(std::llround(keep_fraction * n));
    keep = std::min(std::max(keep, 1), n);
    if (keep < budget) throw std::invalid_argument("dense core too small");

    std::vector<int> kept(keep);
    for (int i = 0; i < keep; ++i) kept[i] = knn_radius[i].second;
    std::sort(kept.begin(), kept.end());

    point_cloud core;
    core.dim = cloud.dim;
    for (int idx : kept) {
        core.points.push_back(cloud.points[idx]);
        core.labels.push_back(cloud.labels[idx]);
    }
    landmark_set inner = maxmin(core, budget, 0);  // kept[0] is the lowest surviving index

    landmark_set out;
    out.method = "dense_core";
    for (int idx : inner.indices) {
        out.indices.push_back(kept[idx]);
        out.coords.push_back(cloud.points[kept[idx]]);
    }
    return out;
}

int outlier_landmark_count(const point_cloud& cloud, const landmark_set& landmarks) {
    int c = 0;
    for (int idx : landmarks.indices)
        c += (cloud.labels.at(static_cast<std::size_t>(idx)) == point_label::outlier);
    return c;
}

}  // namespace depthmark
