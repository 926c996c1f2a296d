#include "depthmark/geometry.hpp"

#include <algorithm>
#include <limits>

namespace depthmark {

int halfspace_depth_2d(std::span<const vec3> pts, const vec3& query) {
    if (pts.empty()) throw std::invalid_argument("empty point set");

    int n_eq = 0;
    for (const vec3& p : pts) n_eq += (p.x == query.x && p.y == query.y);

    // The minimum over closed halfplanes through `query` is attained on an
    // open angular arc of boundary directions. Each arc is adjacent to a
    // direction through some data point, so it suffices to enumerate, for
    // every p, the counts strictly left/right of the line query->p combined
    // with the points on the forward/backward ray.
    int best = std::numeric_limits<int>::max();
    for (const vec3& p : pts) {
        vec3 b = p - query;
        if (b.x == 0.0 && b.y == 0.0) continue;
        int left = 0, right = 0, fwd = 0, bwd = 0;
        for (const vec3& q : pts) {
            vec3 d = q - query;
            if (d.x == 0.0 && d.y == 0.0) continue;  // copies of query counted via n_eq
            double c = cross2(b, d);
            if (c > 0.0)
                ++left;
            else if (c < 0.0)
                ++right;
            else if (dot(d, b) > 0.0)
                ++fwd;
            else
                ++bwd;
        }
        best = std::min(best, std::min(left, right) + std::min(fwd, bwd));
    }
    if (best == std::numeric_limits<int>::max()) return n_eq;  // all points coincide with query
    return n_eq + best;
}

int halfspace_depth_2d(const point_cloud& cloud, const vec3& query) {
    if (cloud.points.empty()) throw std::invalid_argument("empty point set");
    if (cloud.dim != 2) throw std::invalid_argument("dimension mismatch");
    return halfspace_depth_2d(std::span<const vec3>(cloud.points), query);
}

int deepest_point(const point_cloud& cloud, std::span<const int> cell) {
    if (cell.empty()) throw std::invalid_argument("empty cell");
    if (cloud.dim != 2) throw std::invalid_argument("dimension mismatch");
    std::vector<vec3> cell_pts;
    cell_pts.reserve(cell.size());
    for (int idx : cell) cell_pts.push_back(cloud.points.at(static_cast<std::size_t>(idx)));

    int best_idx = -1, best_depth = -1;
    for (std::size_t i = 0; i < cell.size(); ++i) {
        int d = halfspace_depth_2d(std::span<const vec3>(cell_pts), cell_pts[i]);
        if (d > best_depth || (d == best_depth && cell[i] < best_idx)) {
            best_depth = d;
            best_idx = cell[i];
        }
    }
    return best_idx;
}

int directional_depth_approx(std::span<const vec3> pts, const vec3& query, int n_dirs,
                             std::uint64_t rng_seed, int dim) {
    if (pts.empty()) throw std::invalid_argument("empty point set");
    if (n_dirs < 1) throw std::invalid_argument("n_dirs must be positive");

    rng gen(rng_seed);
    int best = std::numeric_limits<int>::max();
    for (int k = 0; k < n_dirs; ++k) {
        vec3 u;
        do {
            u.x = gen.gaussian();
            u.y = gen.gaussian();
            u.z = (dim == 3) ? gen.gaussian() : 0.0;
        } while (squared_norm(u) < 1e-24);
        double inv = 1.0 / norm(u);
        u = inv * u;

        int pos = 0, neg = 0;
        for (const vec3& p : pts) {
            double s = dot(p - query, u);
            if (s >= 0.0) ++pos;
            if (s <= 0.0) ++neg;  // the closed halfspace with normal -u
        }
        best = std::min(best, std::min(pos, neg));
    }
    return best;
}

int directional_depth_approx(const point_cloud& cloud, const vec3& query, int n_dirs,
                             std::uint64_t rng_seed) {
    return directional_depth_approx(std::span<const vec3>(cloud.points), query, n_dirs, rng_seed,
                                    cloud.dim);
}

int deepest_point_directional(const point_cloud& cloud, std::span<const int> cell, int n_dirs,
                              std::uint64_t rng_seed) {
    if (cell.empty()) throw std::invalid_argument("empty cell");
    std::vector<vec3> cell_pts;
    cell_pts.reserve(cell.size());
    for (int idx : cell) cell_pts.push_back(cloud.points.at(static_cast<std::size_t>(idx)));

    // One direction sample shared by all candidates keeps the scores comparable.
    int best_idx = -1, best_depth = -1;
    for (std::size_t i = 0; i < cell.size(); ++i) {
        int d = directional_depth_approx(std::span<const vec3>(cell_pts), cell_pts[i], n_dirs,
                                         rng_seed, cloud.dim);
        if (d > best_depth || (d == best_depth && cell[i] < best_idx)) {
            best_depth = d;
            best_idx = cell[i];
        }
    }
    return best_idx;
}

namespace {

double min_dist_to(const vec3& p, std::span<const vec3> landmarks) {
    double best = std::numeric_limits<double>::infinity();
    for (const vec3& l : landmarks) best = std::min(best, dist(p, l));
    return best;
}

}  // namespace

double cover_radius(const point_cloud& cloud, std::span<const vec3> landmarks) {
    if (landmarks.empty()) throw std::invalid_argument("empty landmark set");
    double worst = 0.0;
    for (const vec3& p : cloud.points) worst = std::max(worst, min_dist_to(p, landmarks));
    return worst;
}

double mean_signal_cover(const point_cloud& cloud, std::span<const vec3> landmarks) {
    if (landmarks.empty()) throw std::invalid_argument("empty landmark set");
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        if (cloud.labels[i] != point_label::signal) continue;
        sum += min_dist_to(cloud.points[i], landmarks);
        ++count;
    }
    if (count == 0) throw std::invalid_argument("no signal points");
    return sum / count;
}

}  // namespace depthmark
