#include "depthmark/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <tuple>

#include "depthmark/geometry.hpp"

namespace depthmark {

std::string method_spec::tag() const {
    switch (kind) {
        case method_kind::maxmin: return "maxmin";
        case method_kind::random_lm: return "random";
        case method_kind::full_recenter: return "full_recenter";
        case method_kind::fixed_step: return "fixed_step";
        case method_kind::support_weighted: return "support_weighted";
        case method_kind::epsnet_matched: return "epsnet_matched";
        case method_kind::dense_core: return "dense_core";
    }
    throw std::invalid_argument("unknown method kind");
}

method_kind method_kind_from_name(const std::string& name) {
    if (name == "maxmin") return method_kind::maxmin;
    if (name == "random") return method_kind::random_lm;
    if (name == "full_recenter") return method_kind::full_recenter;
    if (name == "fixed_step") return method_kind::fixed_step;
    if (name == "support_weighted") return method_kind::support_weighted;
    if (name == "epsnet_matched") return method_kind::epsnet_matched;
    if (name == "dense_core") return method_kind::dense_core;
    throw std::invalid_argument("unknown method: " + name);
}

landmark_set select_landmarks(const point_cloud& cloud, const method_spec& m, int budget,
                              std::uint64_t rng_seed) {
    depth_params dp{m.depth_dirs, rng_seed};
    switch (m.kind) {
        case method_kind::maxmin:
            return maxmin(cloud, budget, 0);
        case method_kind::random_lm:
            return random_landmarks(cloud, budget, rng_seed);
        case method_kind::full_recenter: {
            landmark_set seeds = maxmin(cloud, budget, 0);
            return recenter_full(cloud, assign_cells(cloud, seeds), dp);
        }
        case method_kind::fixed_step: {
            landmark_set seeds = maxmin(cloud, budget, 0);
            return recenter_fixed_step(cloud, assign_cells(cloud, seeds), m.alpha, dp);
        }
        case method_kind::support_weighted: {
            landmark_set seeds = maxmin(cloud, budget, 0);
            return recenter_support_weighted(cloud, assign_cells(cloud, seeds), m.alpha_max, m.tau,
                                             dp);
        }
        case method_kind::epsnet_matched:
            return epsnet_matched(cloud, budget, rng_seed);
        case method_kind::dense_core:
            return dense_core_maxmin(cloud, budget, m.knn, m.keep_fraction);
    }
    throw std::invalid_argument("unknown method kind");
}

int resolve_threads(int requested) {
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("DEPTHMARK_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

void run_parallel(int n_jobs, int threads, const std::function<void(int)>& job) {
    threads = std::min(resolve_threads(threads), n_jobs);
    if (threads <= 1) {
        for (int i = 0; i < n_jobs; ++i) job(i);
        return;
    }
    std::atomic<int> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= n_jobs) return;
                try {
                    job(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next.store(n_jobs);  // drain remaining work
                    return;
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

namespace {

std::string hash_hex(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[h & 0xf];
        h >>= 4;
    }
    return s;
}

point_cloud signal_slice(const point_cloud& cloud) {
    point_cloud clean;
    clean.dim = cloud.dim;
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        if (cloud.labels[i] != point_label::signal) continue;
        clean.points.push_back(cloud.points[i]);
        clean.labels.push_back(point_label::signal);
    }
    return clean;
}

}  // namespace

std::vector<trial_record> run_matched_trial(const point_cloud& cloud, const point_cloud& clean,
                                            int target_h1, const std::vector<method_spec>& methods,
                                            const witness_config& wcfg, double life_threshold,
                                            double trim, std::uint64_t trial_seed,
                                            const std::string& dataset, const std::string& noise,
                                            int budget, int trial) {
    const std::string cloud_hash = hash_hex(hash_cloud(cloud));

    landmark_set ref_landmarks = maxmin(clean, budget, 0);
    filtration ref_filt = build_lazy_witness(ref_landmarks.coords, clean.points, wcfg);
    persistence_diagram ref_diag = compute_persistence(ref_filt);

    std::vector<trial_record> out;
    out.reserve(methods.size());
    for (const method_spec& m : methods) {
        auto t0 = std::chrono::steady_clock::now();
        std::uint64_t method_seed = mix_seed(trial_seed, m.tag());
        landmark_set landmarks = select_landmarks(cloud, m, budget, method_seed);
        filtration filt = build_lazy_witness(landmarks.coords, cloud.points, wcfg);
        persistence_diagram diag = compute_persistence(filt);
        auto t1 = std::chrono::steady_clock::now();

        trial_record rec;
        rec.dataset = dataset;
        rec.noise = noise;
        rec.budget = budget;
        rec.trial = trial;
        rec.method = m.tag();
        rec.alpha_max = (m.kind == method_kind::fixed_step) ? m.alpha : m.alpha_max;
        rec.tau = m.tau;
        rec.nu = wcfg.nu;
        rec.r_max = wcfg.r_max;
        rec.life_threshold = life_threshold;
        rec.trim = trim;
        rec.cloud_hash = cloud_hash;
        rec.h1_count = thresholded_h1_count(diag, life_threshold);
        rec.h1_count_correct = (rec.h1_count == target_h1) ? 1 : 0;
        std::vector<double> top = top_lifetimes(diag, 1, 2);
        rec.top1_life = top[0];
        rec.top2_life = top[1];
        rec.life_ratio = lifetime_ratio(diag, 1);
        rec.trimmed_bottleneck = bottleneck_trimmed(diag, ref_diag, 1, trim);
        rec.outlier_landmarks = outlier_landmark_count(cloud, landmarks);
        rec.mean_signal_cover = mean_signal_cover(cloud, landmarks.coords);
        rec.simplex_count = static_cast<long long>(simplex_count(filt));
        rec.wall_time_seconds = std::chrono::duration<double>(t1 - t0).count();
        out.push_back(std::move(rec));
    }
    return out;
}

namespace {

struct trial_job {
    dataset_spec spec;
    std::string dataset, noise;
    int budget = 0, trial = 0;
    std::uint64_t seed = 0;
    std::string silhouette_path;  // silhouette jobs only
    int n_boundary = 0;
};

std::vector<trial_record> run_jobs(const std::vector<trial_job>& jobs,
                                   const std::vector<method_spec>& methods,
                                   const witness_config& wcfg, const bench_config& cfg) {
    std::vector<std::vector<trial_record>> slots(jobs.size());
    run_parallel(static_cast<int>(jobs.size()), cfg.threads, [&](int i) {
        const trial_job& job = jobs[i];
        point_cloud cloud;
        if (job.spec.family == dataset_family::silhouette) {
            cloud = load_silhouette_pgm(job.silhouette_path, job.n_boundary,
                                        mix_seed(job.seed, "boundary"));
            rng gen(mix_seed(job.seed, "noise"));
            int n_out =
                static_cast<int>(std::llround(job.spec.outlier_fraction * cloud.points.size()));
            if (job.spec.contamination == contamination_model::uniform_box)
                add_uniform_outliers(cloud, n_out, gen);
            else if (job.spec.contamination == contamination_model::clustered)
                add_cluster_outliers(cloud, n_out, gen);
        } else {
            dataset_spec spec = job.spec;
            spec.rng_seed = job.seed;
            cloud = generate(spec);
        }
        point_cloud clean = signal_slice(cloud);
        slots[i] = run_matched_trial(cloud, clean, job.spec.target_h1, methods, wcfg,
                                     cfg.life_threshold, cfg.trim, job.seed, job.dataset, job.noise,
                                     job.budget, job.trial);
    });

    std::vector<trial_record> records;
    for (std::vector<trial_record>& s : slots)
        for (trial_record& r : s) records.push_back(std::move(r));
    std::sort(records.begin(), records.end(), [](const trial_record& a, const trial_record& b) {
        return std::tie(a.dataset, a.noise, a.budget, a.trial, a.method, a.alpha_max, a.tau) <
               std::tie(b.dataset, b.noise, b.budget, b.trial, b.method, b.alpha_max, b.tau);
    });
    return records;
}

std::uint64_t trial_seed_for(std::uint64_t master, const std::string& dataset,
                             const std::string& noise, int budget, int trial) {
    std::uint64_t s = mix_seed(master, dataset);
    s = mix_seed(s, noise);
    s = mix_seed(s, static_cast<std::uint64_t>(budget));
    s = mix_seed(s, static_cast<std::uint64_t>(trial));
    return s;
}

}  // namespace

std::vector<trial_record> run_benchmark_synthetic(const bench_config& cfg) {
    std::vector<method_spec> methods;
    methods.push_back({method_kind::maxmin});
    method_spec sw{method_kind::support_weighted};
    sw.alpha_max = cfg.alpha_max;
    sw.tau = cfg.tau;
    sw.depth_dirs = cfg.depth_dirs;
    methods.push_back(sw);
    methods.push_back({method_kind::epsnet_matched});
    methods.push_back({method_kind::dense_core});

    witness_config wcfg{cfg.nu, cfg.r_max, 2};

    std::vector<trial_job> jobs;
    for (dataset_family family :
         {dataset_family::circle, dataset_family::two_circles, dataset_family::figure_eight}) {
        for (contamination_model noise :
             {contamination_model::uniform_box, contamination_model::clustered}) {
            for (int budget : cfg.budgets) {
                for (int trial = 0; trial < cfg.trials; ++trial) {
                    trial_job job;
                    job.spec.family = family;
                    job.spec.n_signal = cfg.n_signal;
                    job.spec.noise_sigma = cfg.noise_sigma;
                    job.spec.contamination = noise;
                    job.spec.outlier_fraction = cfg.outlier_fraction;
                    job.spec.target_h1 = default_target_h1(family);
                    job.dataset = family_name(family);
                    job.noise = contamination_name(noise);
                    job.budget = budget;
                    job.trial = trial;
                    job.seed = trial_seed_for(cfg.master_seed, job.dataset, job.noise, budget, trial);
                    jobs.push_back(job);
                }
            }
        }
    }
    return run_jobs(jobs, methods, wcfg, cfg);
}

std::vector<trial_record> run_benchmark_mpeg7(const bench_config& cfg) {
    if (cfg.manifest_path.empty()) throw std::invalid_argument("mpeg7 preset needs a manifest");
    std::vector<manifest_entry> entries = read_manifest(cfg.manifest_path);

    std::vector<method_spec> methods;
    methods.push_back({method_kind::maxmin});
    method_spec sw{method_kind::support_weighted};
    sw.alpha_max = cfg.alpha_max;
    sw.tau = cfg.tau;
    sw.depth_dirs = cfg.depth_dirs;
    methods.push_back(sw);
    methods.push_back({method_kind::epsnet_matched});
    methods.push_back({method_kind::dense_core});

    witness_config wcfg{cfg.nu, cfg.r_max, 2};

    auto stem = [](const std::string& path) {
        std::size_t slash = path.find_last_of('/');
        std::string name = (slash == std::string::npos) ? path : path.substr(slash + 1);
        std::size_t dot = name.find_last_of('.');
        return (dot == std::string::npos) ? name : name.substr(0, dot);
    };

    std::vector<trial_job> jobs;
    for (const manifest_entry& entry : entries) {
        for (contamination_model noise : {contamination_model::clean,
                                          contamination_model::clustered,
                                          contamination_model::uniform_box}) {
            for (int budget : cfg.budgets) {
                for (int trial = 0; trial < cfg.trials; ++trial) {
                    trial_job job;
                    job.spec.family = dataset_family::silhouette;
                    job.spec.contamination = noise;
                    job.spec.outlier_fraction = cfg.outlier_fraction;
                    job.spec.target_h1 = entry.target_h1;
                    job.silhouette_path = entry.path;
                    job.n_boundary = cfg.n_boundary;
                    job.dataset = entry.shape_class + "/" + stem(entry.path);
                    job.noise = contamination_name(noise);
                    job.budget = budget;
                    job.trial = trial;
                    job.seed = trial_seed_for(cfg.master_seed, job.dataset, job.noise, budget, trial);
                    jobs.push_back(job);
                }
            }
        }
    }
    return run_jobs(jobs, methods, wcfg, cfg);
}

std::vector<trial_record> run_benchmark_sweep(const bench_config& cfg) {
    std::vector<method_spec> methods;
    methods.push_back({method_kind::maxmin});
    for (double a : {0.3, 0.5, 0.6, 0.8}) {
        for (double t : {0.5, 1.0, 1.5}) {
            method_spec sw{method_kind::support_weighted};
            sw.alpha_max = a;
            sw.tau = t;
            sw.depth_dirs = cfg.depth_dirs;
            methods.push_back(sw);
        }
    }

    witness_config wcfg{cfg.nu, cfg.r_max, 2};

    std::vector<trial_job> jobs;
    for (dataset_family family : {dataset_family::circle, dataset_family::two_circles}) {
        for (contamination_model noise :
             {contamination_model::uniform_box, contamination_model::clustered}) {
            for (int budget : cfg.budgets) {
                for (int trial = 0; trial < cfg.trials; ++trial) {
                    trial_job job;
                    job.spec.family = family;
                    job.spec.n_signal = cfg.n_signal;
                    job.spec.noise_sigma = cfg.noise_sigma;
                    job.spec.contamination = noise;
                    job.spec.outlier_fraction = cfg.outlier_fraction;
                    job.spec.target_h1 = default_target_h1(family);
                    job.dataset = family_name(family);
                    job.noise = contamination_name(noise);
                    job.budget = budget;
                    job.trial = trial;
                    job.seed = trial_seed_for(cfg.master_seed, job.dataset, job.noise, budget, trial);
                    jobs.push_back(job);
                }
            }
        }
    }
    return run_jobs(jobs, methods, wcfg, cfg);
}

torus_hits combine_torus_hits(std::span<const std::pair<int, int>> counts_per_radius) {
    if (counts_per_radius.empty()) throw std::invalid_argument("empty radius band");
    torus_hits hits;
    for (const auto& [h1_count, h2_count] : counts_per_radius) {
        bool h1 = h1_count == 2;
        bool h2 = h2_count == 1;
        hits.h1_hit = hits.h1_hit || h1;
        hits.h2_hit = hits.h2_hit || h2;
        hits.torus_hit = hits.torus_hit || (h1 && h2);
    }
    return hits;
}

torus_hits evaluate_torus_trial(const point_cloud& cloud, const landmark_set& landmarks,
                                const torus_config& cfg) {
    if (cfg.radius_band.empty()) throw std::invalid_argument("empty radius band");
    std::vector<std::pair<int, int>> counts;
    for (double radius : cfg.radius_band) {
        witness_config wcfg{cfg.nu, radius, 3};
        filtration filt = build_lazy_witness(landmarks.coords, cloud.points, wcfg);
        persistence_diagram diag = compute_persistence(filt);
        counts.emplace_back(thresholded_count(diag, 1, cfg.h1_life_threshold),
                            thresholded_count(diag, 2, cfg.h2_life_threshold));
    }
    return combine_torus_hits(counts);
}

std::vector<torus_trial_result> run_torus_benchmark(const torus_config& cfg,
                                                    std::uint64_t master_seed) {
    struct regime {
        std::string name;
        contamination_model model;
        double fraction;
    };
    const std::vector<regime> regimes = {
        {"clean", contamination_model::clean, 0.0},
        {"mild_cluster", contamination_model::clustered, cfg.mild_fraction},
        {"moderate_cluster", contamination_model::clustered, cfg.moderate_fraction},
    };

    method_spec mm{method_kind::maxmin};
    method_spec sw{method_kind::support_weighted};
    sw.alpha_max = cfg.alpha_max;
    sw.tau = cfg.tau;
    sw.depth_dirs = cfg.depth_dirs;
    const std::vector<method_spec> methods = {mm, sw};

    struct torus_job {
        regime reg;
        int trial;
        std::uint64_t seed;
    };
    std::vector<torus_job> jobs;
    for (const regime& reg : regimes)
        for (int trial = 0; trial < cfg.trials; ++trial)
            jobs.push_back(
                {reg, trial, trial_seed_for(master_seed, "torus", reg.name, cfg.budget, trial)});

    std::vector<std::vector<torus_trial_result>> slots(jobs.size());
    run_parallel(static_cast<int>(jobs.size()), cfg.threads, [&](int i) {
        const torus_job& job = jobs[i];
        dataset_spec spec;
        spec.family = dataset_family::torus;
        spec.n_signal = cfg.n_signal;
        spec.noise_sigma = cfg.noise_sigma;
        spec.contamination = job.reg.model;
        spec.outlier_fraction = job.reg.fraction;
        spec.rng_seed = job.seed;
        point_cloud cloud = generate(spec);
        std::string cloud_hash = hash_hex(hash_cloud(cloud));

        for (const method_spec& m : methods) {
            landmark_set landmarks =
                select_landmarks(cloud, m, cfg.budget, mix_seed(job.seed, m.tag()));
            torus_hits hits = evaluate_torus_trial(cloud, landmarks, cfg);
            torus_trial_result res;
            res.noise = job.reg.name;
            res.trial = job.trial;
            res.method = m.tag();
            res.h1_hit = hits.h1_hit;
            res.h2_hit = hits.h2_hit;
            res.torus_hit = hits.torus_hit;
            res.mean_signal_cover = mean_signal_cover(cloud, landmarks.coords);
            res.outlier_landmarks = outlier_landmark_count(cloud, landmarks);
            res.cloud_hash = cloud_hash;
            slots[i].push_back(std::move(res));
        }
    });

    std::vector<torus_trial_result> results;
    for (std::vector<torus_trial_result>& s : slots)
        for (torus_trial_result& r : s) results.push_back(std::move(r));
    std::sort(results.begin(), results.end(),
              [](const torus_trial_result& a, const torus_trial_result& b) {
                  return std::tie(a.noise, a.trial, a.method) < std::tie(b.noise, b.trial, b.method);
              });
    return results;
}

pilot_result pilot_torus_thresholds(const torus_config& cfg, std::uint64_t master_seed) {
    // Clean torus trials with maxmin landmarks, diagrams cached per radius.
    struct trial_diagrams {
        std::vector<persistence_diagram> per_radius;
    };
    std::vector<trial_diagrams> trials(cfg.trials);
    run_parallel(cfg.trials, cfg.threads, [&](int t) {
        dataset_spec spec;
        spec.family = dataset_family::torus;
        spec.n_signal = cfg.n_signal;
        spec.noise_sigma = cfg.noise_sigma;
        spec.contamination = contamination_model::clean;
        spec.rng_seed = trial_seed_for(master_seed, "torus", "pilot", cfg.budget, t);
        point_cloud cloud = generate(spec);
        landmark_set landmarks = maxmin(cloud, cfg.budget, 0);
        for (double radius : cfg.radius_band) {
            witness_config wcfg{cfg.nu, radius, 3};
            trials[t].per_radius.push_back(
                compute_persistence(build_lazy_witness(landmarks.coords, cloud.points, wcfg)));
        }
    });

    const std::vector<double> h1_grid = {0.10, 0.15, 0.20, 0.25, 0.30, 0.35};
    const std::vector<double> h2_grid = {0.02, 0.04, 0.06, 0.08, 0.10, 0.15};
    pilot_result best;
    best.hit_rate = -1.0;
    for (double h1 : h1_grid) {
        for (double h2 : h2_grid) {
            int hits = 0;
            for (const trial_diagrams& td : trials) {
                bool hit = false;
                for (const persistence_diagram& diag : td.per_radius)
                    hit = hit || (thresholded_count(diag, 1, h1) == 2 &&
                                  thresholded_count(diag, 2, h2) == 1);
                hits += hit;
            }
            double rate = static_cast<double>(hits) / cfg.trials;
            if (rate > best.hit_rate) {
                best.hit_rate = rate;
                best.h1_life_threshold = h1;
                best.h2_life_threshold = h2;
            }
        }
    }
    return best;
}

}  // namespace depthmark
