#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "depthmark/core.hpp"
#include "depthmark/datagen.hpp"
#include "depthmark/landmarks.hpp"
#include "depthmark/persistence.hpp"
#include "depthmark/witness.hpp"

namespace depthmark {

enum class method_kind {
    maxmin,
    random_lm,
    full_recenter,
    fixed_step,
    support_weighted,
    epsnet_matched,
    dense_core
};

struct method_spec {
    method_kind kind = method_kind::maxmin;
    double alpha = 0.0;      // fixed_step
    double alpha_max = 0.0;  // support_weighted
    double tau = 0.0;
    int knn = 10;  // dense_core
    double keep_fraction = 0.8;
    int depth_dirs = 64;

    std::string tag() const;
};

method_kind method_kind_from_name(const std::string& name);

/// One landmark set per method contract; `rng_seed` feeds the seeded methods
/// and the 3D depth score. Recentering starts from maxmin seeds at index 0.
landmark_set select_landmarks(const point_cloud& cloud, const method_spec& m, int budget,
                              std::uint64_t rng_seed);

struct trial_record {
    std::string dataset;
    std::string noise;
    int budget = 0;
    int trial = 0;
    std::string method;
    double alpha_max = 0.0, tau = 0.0;
    int nu = 1;
    double r_max = 2.1, life_threshold = 0.25, trim = 0.05;
    std::string cloud_hash;
    int h1_count = 0;
    int h1_count_correct = 0;
    double top1_life = 0.0, top2_life = 0.0, life_ratio = 0.0;
    double trimmed_bottleneck = 0.0;
    int outlier_landmarks = 0;
    double mean_signal_cover = 0.0;
    long long simplex_count = 0;
    double wall_time_seconds = 0.0;  // goes to timings.csv, never records.csv
};

struct bench_config {
    std::uint64_t master_seed = 1;
    int trials = 20;
    std::vector<int> budgets = {20, 30, 40};
    int nu = 1;
    double r_max = 2.1;
    double life_threshold = 0.25;
    double trim = 0.05;
    double alpha_max = 0.6;
    double tau = 1.0;
    int n_signal = 400;
    double noise_sigma = 0.05;
    double outlier_fraction = 0.10;
    int depth_dirs = 64;
    int n_boundary = 300;  // silhouette boundary samples per trial
    std::string manifest_path;
    int threads = 0;  // 0 = hardware; DEPTHMARK_THREADS caps either way
};

/// Every method inside one (dataset, noise, budget, trial) cell consumes the
/// identical cloud; the comparator diagram is the lazy-witness diagram of the
/// trial's clean signal cloud under maxmin landmarks at the same budget.
std::vector<trial_record> run_matched_trial(const point_cloud& cloud, const point_cloud& clean,
                                            int target_h1, const std::vector<method_spec>& methods,
                                            const witness_config& wcfg, double life_threshold,
                                            double trim, std::uint64_t trial_seed,
                                            const std::string& dataset, const std::string& noise,
                                            int budget, int trial);

std::vector<trial_record> run_benchmark_synthetic(const bench_config& cfg);
std::vector<trial_record> run_benchmark_mpeg7(const bench_config& cfg);

/// Parameter sweep over the support-weighted grid
/// alpha_max in {0.3, 0.5, 0.6, 0.8} x tau in {0.5, 1.0, 1.5}.
std::vector<trial_record> run_benchmark_sweep(const bench_config& cfg);

struct torus_config {
    std::vector<double> radius_band = {0.52, 0.56, 0.60};
    double h1_life_threshold = 0.15;  // pilot-calibrated; `pilot` recomputes them
    double h2_life_threshold = 0.08;
    double alpha_max = 0.55;
    double tau = 1.0;
    int budget = 60;
    int trials = 20;
    int n_signal = 800;
    double noise_sigma = 0.02;
    double mild_fraction = 0.05;      // clustered contamination, mild regime
    double moderate_fraction = 0.10;  // clustered contamination, moderate regime
    int nu = 1;
    int depth_dirs = 64;
    int threads = 0;
};

struct torus_hits {
    bool h1_hit = false;
    bool h2_hit = false;
    bool torus_hit = false;  // both counts right at a common radius
};

/// Folds per-radius thresholded (H1, H2) counts into hit flags: H1 and H2
/// hits may come from any radius, but the torus hit requires the joint
/// signature (2, 1) at one radius.
torus_hits combine_torus_hits(std::span<const std::pair<int, int>> counts_per_radius);

/// Evaluates one landmark set over the multiscale radius band: for each
/// radius R the witness diagram is rebuilt with r_max = R; a torus hit needs
/// thresholded counts (H1, H2) = (2, 1) at some single radius.
torus_hits evaluate_torus_trial(const point_cloud& cloud, const landmark_set& landmarks,
                                const torus_config& cfg);

struct torus_trial_result {
    std::string noise;
    int trial = 0;
    std::string method;
    bool h1_hit = false, h2_hit = false, torus_hit = false;
    double mean_signal_cover = 0.0;
    int outlier_landmarks = 0;
    std::string cloud_hash;
};

/// Maxmin versus support-weighted over {clean, mild cluster, moderate
/// cluster} torus regimes.
std::vector<torus_trial_result> run_torus_benchmark(const torus_config& cfg,
                                                    std::uint64_t master_seed);

struct pilot_result {
    double h1_life_threshold = 0.0;
    double h2_life_threshold = 0.0;
    double hit_rate = 0.0;
};

/// Grid search over lifetime-threshold pairs maximizing the maxmin torus-hit
/// rate on clean torus trials; ties go to the first grid point scanned.
pilot_result pilot_torus_thresholds(const torus_config& cfg, std::uint64_t master_seed);

struct paired_stats {
    std::string metric;
    std::string method;
    std::string baseline;
    double mean_diff = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0;
    double wilcoxon_p = 1.0;
    int discordant_wins = 0, discordant_losses = 0;
    double discordance_p = 1.0;
    int n_pairs = 0;
    int settings_won = 0, settings_total = 0;
};

/// Pairs every non-baseline method against the baseline on (dataset, noise,
/// budget, trial). Covers the mean-cover and accuracy metrics.
std::vector<paired_stats> compute_paired_stats(const std::vector<trial_record>& records,
                                               const std::string& baseline,
                                               std::uint64_t stats_seed);

void write_records_csv(std::ostream& os, const std::vector<trial_record>& records);
std::vector<trial_record> read_records_csv(std::istream& is);
void write_timings_csv(std::ostream& os, const std::vector<trial_record>& records);
void write_torus_records_csv(std::ostream& os, const std::vector<torus_trial_result>& results);

/// Writes records.csv, timings.csv, aggregate.csv, breakdown_dataset_noisy
/// tables, paired_stats.json and the plot-ready long CSV under out_dir.
void aggregate_and_report(const std::vector<trial_record>& records, const std::string& out_dir,
                          std::uint64_t stats_seed, const std::string& benchmark_name);

/// Worker pool over [0, n_jobs); DEPTHMARK_THREADS caps the pool size.
void run_parallel(int n_jobs, int threads, const std::function<void(int)>& job);
int resolve_threads(int requested);

}  // namespace depthmark
