#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "depthmark/core.hpp"

namespace depthmark {

struct witness_config {
    int nu = 1;
    double r_max = 2.1;
    int max_dim = 2;  // top simplex dimension; 2 for H1 runs, 3 when H2 matters
};

/// Row-major matrix; rows index landmarks, columns index witnesses.
struct dist_matrix {
    int rows = 0, cols = 0;
    std::vector<double> data;

    dist_matrix() = default;
    dist_matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
};

dist_matrix landmark_witness_distances(std::span<const vec3> landmarks,
                                       std::span<const vec3> witnesses);

/// Per-witness offset m_i: the nu-th smallest landmark distance seen from
/// witness i (all zeros when nu == 0).
std::vector<double> witness_offsets(const dist_matrix& distances, int nu);

/// Edge insertion values E(a,b) = min_i (max(D(a,i), D(b,i)) - m_i)_+ as a
/// symmetric matrix with zero diagonal.
dist_matrix edge_values(const dist_matrix& distances, std::span<const double> offsets);

/// Simplex with vertices sorted ascending; unused slots are -1.
struct simplex {
    std::array<int, 4> verts{-1, -1, -1, -1};
    int dim = 0;
    double value = 0.0;
};

/// Simplices sorted by (value, dimension, lexicographic vertices), so faces
/// always precede cofaces.
struct filtration {
    int vertex_count = 0;
    std::vector<simplex> simplices;
};

/// Clique (flag) filtration of the graph with edges E(a,b) <= r_max: vertices
/// at value 0, edges at E(a,b), higher simplices at the max of their edges.
filtration flag_filtration(int vertex_count, const dist_matrix& edge_vals, double r_max,
                           int max_dim);

/// Full lazy-witness pipeline: distances, offsets, edge values, clique
/// expansion capped at cfg.r_max.
filtration build_lazy_witness(std::span<const vec3> landmarks, std::span<const vec3> witnesses,
                              const witness_config& cfg);

std::size_t simplex_count(const filtration& f);

/// One simplex per line, "v1 v2 ... : value", in filtration order.
void write_filtration(std::ostream& os, const filtration& f);

}  // namespace depthmark
