#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "depthmark/witness.hpp"

namespace depthmark {

struct bar {
    int dim = 0;
    double birth = 0.0;
    double death = 0.0;  // +infinity for essential classes
};

struct persistence_diagram {
    std::vector<bar> bars;
};

/// Standard persistence pairing over GF(2) by column reduction of the
/// boundary matrix in filtration order. Zero-length bars are discarded;
/// unpaired creators become infinite bars. Throws "not a filtration" when a
/// face is missing or ordered after one of its cofaces.
persistence_diagram compute_persistence(const filtration& f);

/// Finite bars of the given dimension with lifetime >= tau_life.
int thresholded_count(const persistence_diagram& d, int dim, double tau_life);

inline int thresholded_h1_count(const persistence_diagram& d, double tau_life) {
    return thresholded_count(d, 1, tau_life);
}

/// k largest finite lifetimes in the given dimension, descending, zero-padded.
std::vector<double> top_lifetimes(const persistence_diagram& d, int dim, int k);

/// top1 / top2 of the finite lifetimes; +infinity when top2 is zero.
double lifetime_ratio(const persistence_diagram& d, int dim);

/// Bottleneck distance (sup norm, diagonal matching allowed) between the two
/// diagrams restricted to `dim`, after dropping infinite bars and finite bars
/// shorter than `trim`. Exact: binary search over the finite candidate set
/// with a bipartite feasibility matching.
double bottleneck_trimmed(const persistence_diagram& a, const persistence_diagram& b, int dim,
                          double trim);

/// One bar per line: "dim birth death", with "inf" for infinite deaths.
void write_diagram(std::ostream& os, const persistence_diagram& d);
persistence_diagram read_diagram(std::istream& is);

}  // namespace depthmark
