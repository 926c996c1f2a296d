#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "depthmark/core.hpp"

namespace depthmark {

enum class dataset_family { circle, two_circles, figure_eight, torus, silhouette };
enum class contamination_model { clean, uniform_box, clustered };

std::string family_name(dataset_family f);
std::string contamination_name(contamination_model c);
dataset_family family_from_name(const std::string& s);
contamination_model contamination_from_name(const std::string& s);

/// Expected number of threshold-surviving loops for a family.
int default_target_h1(dataset_family f);

struct dataset_spec {
    dataset_family family = dataset_family::circle;
    int n_signal = 400;
    double noise_sigma = 0.05;
    contamination_model contamination = contamination_model::clean;
    double outlier_fraction = 0.10;
    std::uint64_t rng_seed = 0;
    int target_h1 = 1;  // (beta_1, beta_2) = (2, 1) for the torus
    int target_h2 = 0;
    double torus_major = 1.0;
    double torus_minor = 0.35;
};

/// Deterministic per seed. Signal points come first (so the clean signal
/// cloud is the leading slice), contaminants after, labeled accordingly.
/// Noise displaces each signal point along its surface normal.
point_cloud generate(const dataset_spec& spec);

/// Contamination applied after the fact (silhouette pipeline). `count` points
/// uniform in the signal bounding box inflated by 25%.
void add_uniform_outliers(point_cloud& cloud, int count, rng& gen);

/// Same count split across 3 Gaussian clusters (sigma 0.05) centered
/// uniformly in the inflated signal box.
void add_cluster_outliers(point_cloud& cloud, int count, rng& gen);

/// Translate the signal centroid to the origin and scale so the signal
/// bounding box has max side length 2. Degenerate boxes keep scale 1.
point_cloud normalize(const point_cloud& cloud);

/// Foreground = pixels brighter than mid-gray; boundary = foreground pixels
/// with a background 4-neighbor (out-of-image counts as background). Picks
/// n_boundary boundary pixels uniformly at random (seeded), then normalizes.
point_cloud load_silhouette_pgm(const std::string& path, int n_boundary, std::uint64_t rng_seed);

/// CSV with header "x,y,label" or "x,y,z,label"; labels "signal"/"outlier".
void write_cloud_csv(std::ostream& os, const point_cloud& cloud);
point_cloud read_cloud_csv(std::istream& is);

struct manifest_entry {
    std::string path;
    std::string shape_class;
    int target_h1 = 1;
};

/// One silhouette per line: "path class [target_h1]". '#' comments allowed.
std::vector<manifest_entry> read_manifest(const std::string& path);

}  // namespace depthmark
