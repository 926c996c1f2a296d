#pragma once

#include "depthmark/persistence.hpp"
#include "depthmark/witness.hpp"

namespace depthmark::oracle {

// Independent reduction: simplices re-sorted by (value, dim, reverse
// lexicographic vertices) -- still a valid filtration order -- and reduced
// with a dense bitset boundary matrix. The resulting diagram must agree with
// the production reduction as a multiset.
persistence_diagram naive_persistence_oracle(const filtration& f);

// Sorts bars by (dim, birth, death) and compares exactly.
bool same_diagram(const persistence_diagram& a, const persistence_diagram& b);

// Alternating sum over dimensions of bars alive at t (birth <= t < death)
// against the Euler characteristic of the complex at t.
bool euler_consistent(const filtration& f, const persistence_diagram& d, double t);

}  // namespace depthmark::oracle
