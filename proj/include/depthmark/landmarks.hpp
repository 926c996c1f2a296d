#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "depthmark/core.hpp"

namespace depthmark {

/// Nearest-seed assignment of every cloud point. Cell i always contains its
/// own seed, even when the cloud holds duplicate coordinates.
struct cell_partition {
    std::vector<int> assignment;          // cloud index -> cell position
    std::vector<std::vector<int>> cells;  // cell position -> cloud indices, ascending
    std::vector<int> seed_indices;        // cell position -> cloud index of the seed
};

struct landmark_set {
    std::vector<int> indices;  // cloud indices, one per landmark
    std::vector<vec3> coords;
    std::string method;
    double alpha_max = 0.0;  // recentering step cap, where applicable
    double tau = 0.0;        // support gate, where applicable
    double epsilon = 0.0;    // net separation actually used, epsnet only
};

/// Parameters for the sampled-direction depth score used when dim == 3.
struct depth_params {
    int n_dirs = 64;
    std::uint64_t seed = 0;
};

/// Greedy farthest-point selection of `budget` landmarks starting from cloud
/// index `first`; argmax ties go to the lowest cloud index.
landmark_set maxmin(const point_cloud& cloud, int budget, int first);

cell_partition assign_cells(const point_cloud& cloud, const landmark_set& seeds);

/// Deepest data point of each cell (exact planar depth in 2D, sampled
/// directional depth in 3D).
std::vector<int> deepest_per_cell(const point_cloud& cloud, const cell_partition& part,
                                  const depth_params& dp = {});

/// Unprojected targets z_i = (1 - alpha_i) s_i + alpha_i a_i, one per cell.
std::vector<vec3> recenter_targets(const point_cloud& cloud, const cell_partition& part,
                                   std::span<const double> alphas, const depth_params& dp = {});

/// Per-cell coefficients alpha_i = alpha_max * min(1, n_i / (tau * n_mean)).
std::vector<double> support_weighted_alphas(const point_cloud& cloud, const cell_partition& part,
                                            double alpha_max, double tau);

/// Nearest cell point to each target, ties to the lowest cloud index.
landmark_set project_to_cells(const point_cloud& cloud, const cell_partition& part,
                              std::span<const vec3> targets);

/// Replace each seed by the deepest point of its cell.
landmark_set recenter_full(const point_cloud& cloud, const cell_partition& part,
                           const depth_params& dp = {});

/// Move each seed a fixed fraction alpha toward its cell's deepest point and
/// project back onto the cell. alpha = 0 reproduces the seeds, alpha = 1 the
/// full recentering.
landmark_set recenter_fixed_step(const point_cloud& cloud, const cell_partition& part, double alpha,
                                 const depth_params& dp = {});

/// Fixed-step map with the per-cell support-gated coefficient.
landmark_set recenter_support_weighted(const point_cloud& cloud, const cell_partition& part,
                                       double alpha_max, double tau, const depth_params& dp = {});

/// `budget` distinct indices drawn uniformly without replacement.
landmark_set random_landmarks(const point_cloud& cloud, int budget, std::uint64_t rng_seed);

/// Budget-matched greedy covering net: scan a seeded random permutation,
/// admit points farther than epsilon from everything admitted so far, and
/// bisect on epsilon until the net size hits the budget (truncating from the
/// tightest feasible net when the exact size is unreachable).
landmark_set epsnet_matched(const point_cloud& cloud, int budget, std::uint64_t rng_seed);

/// Keep the keep_fraction of points with the smallest k-NN radius, then run
/// maxmin on the survivors starting from the lowest surviving cloud index.
landmark_set dense_core_maxmin(const point_cloud& cloud, int budget, int k = 10,
                               double keep_fraction = 0.8);

int outlier_landmark_count(const point_cloud& cloud, const landmark_set& landmarks);

}  // namespace depthmark
