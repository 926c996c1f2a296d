#pragma once

#include "depthmark/persistence.hpp"

namespace depthmark::oracle {

// Exhaustive bottleneck distance between the dim-restricted, trimmed bar sets
// (same filtering rule as the production routine): recursively assigns every
// bar of `a` to an unused bar of `b` or to the diagonal, sends leftover bars
// of `b` to the diagonal, and minimizes the maximum matching cost. Only
// viable for small diagrams.
double bottleneck_oracle(const persistence_diagram& a, const persistence_diagram& b, int dim,
                         double trim);

}  // namespace depthmark::oracle
