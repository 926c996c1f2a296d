#pragma once

#include <cstdint>
#include <span>

#include "depthmark/core.hpp"

namespace depthmark {

/// Exact planar halfspace (Tukey) depth of `query` with respect to `pts`:
/// the minimum, over all closed halfplanes containing `query`, of the number
/// of points of `pts` inside the halfplane. Candidate halfplane boundaries
/// pass through `query`; both orientations and both half-open refinements of
/// each boundary ray are enumerated, which realizes every value a closed
/// halfplane can attain. O(k^2) for k points.
int halfspace_depth_2d(std::span<const vec3> pts, const vec3& query);

/// Cloud-level wrapper; rejects non-planar clouds.
int halfspace_depth_2d(const point_cloud& cloud, const vec3& query);

/// Index (into `cell`) semantics: returns the *cloud* index of the cell point
/// maximizing halfspace depth within the cell, ties to the lowest cloud index.
int deepest_point(const point_cloud& cloud, std::span<const int> cell);

/// Approximate depth for d >= 3: minimum count over 2*n_dirs closed halfspaces
/// whose normals are sampled uniformly on the sphere (seeded, deterministic).
/// Always an upper bound on the exact halfspace depth.
int directional_depth_approx(std::span<const vec3> pts, const vec3& query, int n_dirs,
                             std::uint64_t rng_seed, int dim = 3);

int directional_depth_approx(const point_cloud& cloud, const vec3& query, int n_dirs,
                             std::uint64_t rng_seed);

/// Deepest cell point under the sampled-direction depth score; used in R^3
/// where the exact planar routine does not apply.
int deepest_point_directional(const point_cloud& cloud, std::span<const int> cell, int n_dirs,
                              std::uint64_t rng_seed);

/// r_L(X): largest distance from a cloud point to its nearest landmark.
double cover_radius(const point_cloud& cloud, std::span<const vec3> landmarks);

/// Mean distance from signal-labeled points to their nearest landmark.
double mean_signal_cover(const point_cloud& cloud, std::span<const vec3> landmarks);

}  // namespace depthmark
