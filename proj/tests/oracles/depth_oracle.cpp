#include "oracles/depth_oracle.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace depthmark::oracle {

int halfspace_depth_2d_oracle(std::span<const vec3> pts, const vec3& query) {
    if (pts.empty()) throw std::invalid_argument("empty point set");

    int n_eq = 0;
    for (const vec3& p : pts) n_eq += (p.x == query.x && p.y == query.y);

    std::vector<vec3> endpoints(pts.begin(), pts.end());
    endpoints.push_back(query);

    int best = std::numeric_limits<int>::max();
    for (std::size_t ia = 0; ia < endpoints.size(); ++ia) {
        for (std::size_t ib = 0; ib < endpoints.size(); ++ib) {
            if (ia == ib) continue;
            const vec3& a = endpoints[ia];
            vec3 t = endpoints[ib] - a;
            if (t.x == 0.0 && t.y == 0.0) continue;
            vec3 nvec{-t.y, t.x, 0.0};

            double sy = dot(query - a, nvec);
            if (sy < 0.0) continue;  // the reversed pair covers the other side

            int closed = 0, strict = 0, fwd = 0, bwd = 0;
            for (const vec3& p : pts) {
                double s = dot(p - a, nvec);
                if (s > 0.0) {
                    ++closed;
                    ++strict;
                } else if (s == 0.0) {
                    ++closed;
                    double r = dot(p - query, t);
                    if (r > 0.0)
                        ++fwd;
                    else if (r < 0.0)
                        ++bwd;
                    // r == 0 on the line means p == query, counted via n_eq
                }
            }
            best = std::min(best, closed);
            if (sy > 0.0) {
                // translate the boundary toward query: drops the on-line points
                best = std::min(best, strict);
            } else {
                // rotate about query: keeps one ray of the on-line points
                best = std::min({best, strict + fwd + n_eq, strict + bwd + n_eq});
            }
        }
    }
    if (best == std::numeric_limits<int>::max()) return n_eq;  // all points coincide
    return best;
}

namespace {

bool is_zero(const vec3& v) { return v.x == 0.0 && v.y == 0.0 && v.z == 0.0; }

// min over unit tangents t in the plane perpendicular to u of the count
// #{e in zs : <e, t> > 0}, where every达到able count is an open-arc value of
// the circle arrangement; arcs are resolved at critical tangents with exact
// side rules.
int strict_min_in_plane(const std::vector<vec3>& zs, const vec3& u) {
    int best = std::numeric_limits<int>::max();
    for (std::size_t ei = 0; ei < zs.size(); ++ei) {
        vec3 t0 = cross(u, zs[ei]);
        if (is_zero(t0)) continue;  // e parallel to u cannot happen for e != 0 in the plane
        for (double sign : {1.0, -1.0}) {
            vec3 s = sign * t0;
            vec3 w = cross(u, s);  // 90-degree rotation of s within the plane
            int pos = 0, ccw = 0, cw = 0;
            for (std::size_t fi = 0; fi < zs.size(); ++fi) {
                const vec3& f = zs[fi];
                // the tangent is perpendicular to its defining vector by
                // construction; rounding in the cross product must not hide it
                double sf = (fi == ei) ? 0.0 : dot(f, s);
                if (sf > 0.0)
                    ++pos;
                else if (sf == 0.0) {
                    double wf = dot(f, w);
                    if (wf > 0.0)
                        ++ccw;
                    else if (wf < 0.0)
                        ++cw;
                }
            }
            best = std::min({best, pos + ccw, pos + cw});
        }
    }
    return best == std::numeric_limits<int>::max() ? 0 : best;
}

}  // namespace

int halfspace_depth_3d_oracle(std::span<const vec3> pts, const vec3& query) {
    if (pts.empty()) throw std::invalid_argument("empty point set");

    int n_eq = 0;
    std::vector<vec3> ds;
    for (const vec3& p : pts) {
        vec3 d = p - query;
        if (is_zero(d))
            ++n_eq;
        else
            ds.push_back(d);
    }
    if (ds.empty()) return n_eq;

    int best = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < ds.size(); ++i) {
        for (std::size_t j = i + 1; j < ds.size(); ++j) {
            vec3 v = cross(ds[i], ds[j]);
            if (is_zero(v)) continue;
            for (double sign : {1.0, -1.0}) {
                vec3 u = sign * v;
                int pos = 0;
                std::vector<vec3> zs;
                for (std::size_t k = 0; k < ds.size(); ++k) {
                    // the defining pair lies in the zero set by construction;
                    // rounding in the cross product must not hide that
                    if (k == i || k == j) {
                        zs.push_back(ds[k]);
                        continue;
                    }
                    double s = dot(ds[k], u);
                    if (s > 0.0)
                        ++pos;
                    else if (s == 0.0)
                        zs.push_back(ds[k]);
                }
                best = std::min(best, pos + strict_min_in_plane(zs, u));
            }
        }
    }
    if (best == std::numeric_limits<int>::max()) {
        // every difference vector is parallel: halfspaces can only split the line
        int fwd = 0, bwd = 0;
        for (const vec3& d : ds) (dot(d, ds[0]) > 0.0 ? fwd : bwd)++;
        best = std::min(fwd, bwd);
    }
    return n_eq + best;
}

}  // namespace depthmark::oracle
