#include "depthmark/witness.hpp"

#include <algorithm>
#include <ostream>

namespace depthmark {

dist_matrix landmark_witness_distances(std::span<const vec3> landmarks,
                                       std::span<const vec3> witnesses) {
    dist_matrix d(static_cast<int>(landmarks.size()), static_cast<int>(witnesses.size()));
    for (int a = 0; a < d.rows; ++a)
        for (int i = 0; i < d.cols; ++i) d.at(a, i) = dist(landmarks[a], witnesses[i]);
    return d;
}

std::vector<double> witness_offsets(const dist_matrix& distances, int nu) {
    if (nu < 0) throw std::invalid_argument("nu must be nonnegative");
    if (nu > distances.rows) throw std::invalid_argument("nu exceeds landmark count");

    std::vector<double> offsets(distances.cols, 0.0);
    if (nu == 0) return offsets;

    std::vector<double> column(distances.rows);
    for (int i = 0; i < distances.cols; ++i) {
        for (int a = 0; a < distances.rows; ++a) column[a] = distances.at(a, i);
        std::nth_element(column.begin(), column.begin() + (nu - 1), column.end());
        offsets[i] = column[nu - 1];
    }
    return offsets;
}

dist_matrix edge_values(const dist_matrix& distances, std::span<const double> offsets) {
    if (distances.cols == 0) throw std::invalid_argument("empty witness set");
    if (static_cast<int>(offsets.size()) != distances.cols)
        throw std::invalid_argument("one offset per witness required");

    const int m = distances.rows;
    dist_matrix e(m, m);
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < distances.cols; ++i) {
                double v = std::max(distances.at(a, i), distances.at(b, i)) - offsets[i];
                best = std::min(best, std::max(v, 0.0));
            }
            e.at(a, b) = e.at(b, a) = best;
        }
    }
    return e;
}

namespace {

bool simplex_order(const simplex& a, const simplex& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.verts < b.verts;
}

}  // namespace

filtration flag_filtration(int vertex_count, const dist_matrix& edge_vals, double r_max,
                           int max_dim) {
    if (max_dim < 1 || max_dim > 3) throw std::invalid_argument("max_dim must be 1, 2 or 3");
    if (edge_vals.rows != vertex_count || edge_vals.cols != vertex_count)
        throw std::invalid_argument("edge matrix does not match vertex count");

    filtration f;
    f.vertex_count = vertex_count;
    for (int v = 0; v < vertex_count; ++v) {
        simplex s;
        s.verts[0] = v;
        s.dim = 0;
        s.value = 0.0;
        f.simplices.push_back(s);
    }

    // Edges at exactly r_max stay in (closed cap).
    std::vector<std::vector<int>> nbr(vertex_count);
    for (int a = 0; a < vertex_count; ++a) {
        for (int b = a + 1; b < vertex_count; ++b) {
            if (edge_vals.at(a, b) > r_max) continue;
            simplex s;
            s.verts = {a, b, -1, -1};
            s.dim = 1;
            s.value = edge_vals.at(a, b);
            f.simplices.push_back(s);
            nbr[a].push_back(b);  // ascending by construction
        }
    }

    if (max_dim >= 2) {
        for (int a = 0; a < vertex_count; ++a) {
            for (int b : nbr[a]) {
                for (int c : nbr[b]) {
                    if (!std::binary_search(nbr[a].begin(), nbr[a].end(), c)) continue;
                    double v = std::max({edge_vals.at(a, b), edge_vals.at(b, c), edge_vals.at(a, c)});
                    simplex s;
                    s.verts = {a, b, c, -1};
                    s.dim = 2;
                    s.value = v;
                    f.simplices.push_back(s);
                    if (max_dim >= 3) {
                        for (int d : nbr[c]) {
                            if (!std::binary_search(nbr[a].begin(), nbr[a].end(), d)) continue;
                            if (!std::binary_search(nbr[b].begin(), nbr[b].end(), d)) continue;
                            double w = std::max({v, edge_vals.at(a, d), edge_vals.at(b, d),
                                                 edge_vals.at(c, d)});
                            simplex t;
                            t.verts = {a, b, c, d};
                            t.dim = 3;
                            t.value = w;
                            f.simplices.push_back(t);
                        }
                    }
                }
            }
        }
    }

    std::sort(f.simplices.begin(), f.simplices.end(), simplex_order);
    return f;
}

filtration build_lazy_witness(std::span<const vec3> landmarks, std::span<const vec3> witnesses,
                              const witness_config& cfg) {
    if (landmarks.empty()) throw std::invalid_argument("empty landmark set");
    if (witnesses.empty()) throw std::invalid_argument("empty witness set");
    if (!(cfg.r_max > 0.0)) throw std::invalid_argument("r_max must be positive");

    dist_matrix d = landmark_witness_distances(landmarks, witnesses);
    std::vector<double> offsets = witness_offsets(d, cfg.nu);
    dist_matrix e = edge_values(d, offsets);
    return flag_filtration(static_cast<int>(landmarks.size()), e, cfg.r_max, cfg.max_dim);
}

std::size_t simplex_count(const filtration& f) { return f.simplices.size(); }

void write_filtration(std::ostream& os, const filtration& f) {
    for (const simplex& s : f.simplices) {
        for (int k = 0; k <= s.dim; ++k) {
            if (k > 0) os << ' ';
            os << s.verts[k];
        }
        os << " : " << s.value << '\n';
    }
}

}  // namespace depthmark
