// Command-line front end: dataset generation, landmark selection, witness
// persistence, and the matched-trial benchmark presets.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "depthmark/bench.hpp"
#include "depthmark/geometry.hpp"
#include "depthmark/stats.hpp"

namespace dm = depthmark;

namespace {

std::ofstream open_out(const std::string& path) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    return os;
}

dm::point_cloud load_cloud(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    return dm::read_cloud_csv(is);
}

void write_landmarks_csv(std::ostream& os, const dm::landmark_set& l, int dim) {
    os << (dim == 3 ? "index,x,y,z" : "index,x,y") << '\n';
    for (std::size_t i = 0; i < l.indices.size(); ++i) {
        os << l.indices[i] << ',' << l.coords[i].x << ',' << l.coords[i].y;
        if (dim == 3) os << ',' << l.coords[i].z;
        os << '\n';
    }
}

std::vector<dm::vec3> read_landmarks_csv(const std::string& path, int dim) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("empty landmark CSV");
    std::vector<dm::vec3> coords;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tok;
        std::getline(ss, tok, ',');  // index, unused here
        dm::vec3 p;
        std::getline(ss, tok, ',');
        p.x = std::stod(tok);
        std::getline(ss, tok, ',');
        p.y = std::stod(tok);
        if (dim == 3) {
            std::getline(ss, tok, ',');
            p.z = std::stod(tok);
        }
        coords.push_back(p);
    }
    return coords;
}

void report_torus(const std::vector<dm::torus_trial_result>& results, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream os = open_out(out_dir + "/torus_records.csv");
        dm::write_torus_records_csv(os, results);
    }
    // per (noise, method) hit-rate and cover summary
    struct acc {
        int n = 0, torus = 0, h1 = 0, h2 = 0;
        double cover = 0.0;
    };
    std::map<std::pair<std::string, std::string>, acc> rows;
    for (const auto& r : results) {
        acc& a = rows[{r.noise, r.method}];
        a.n++;
        a.torus += r.torus_hit;
        a.h1 += r.h1_hit;
        a.h2 += r.h2_hit;
        a.cover += r.mean_signal_cover;
    }
    std::ofstream os = open_out(out_dir + "/torus_summary.csv");
    os << "Noise,Method,Torus hit,H1 hit,H2 hit,Mean cover\n";
    for (const auto& [key, a] : rows) {
        os << key.first << ',' << key.second << ',' << static_cast<double>(a.torus) / a.n << ','
           << static_cast<double>(a.h1) / a.n << ',' << static_cast<double>(a.h2) / a.n << ','
           << a.cover / a.n << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"depth-corrected landmark selection for lazy witness persistence"};
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen_cmd = app.add_subcommand("gen", "generate a labeled point cloud CSV");
    std::string gen_family = "circle", gen_noise = "clean", gen_out = "cloud.csv";
    int gen_n = 400;
    double gen_sigma = 0.05, gen_fraction = 0.10;
    std::uint64_t gen_seed = 1;
    gen_cmd->add_option("--family", gen_family, "circle|two_circles|figure_eight|torus");
    gen_cmd->add_option("--n-signal", gen_n, "signal point count");
    gen_cmd->add_option("--sigma", gen_sigma, "surface-normal noise sigma");
    gen_cmd->add_option("--contamination", gen_noise, "clean|uniform|cluster");
    gen_cmd->add_option("--outlier-fraction", gen_fraction, "outliers as a fraction of n-signal");
    gen_cmd->add_option("--seed", gen_seed, "rng seed");
    gen_cmd->add_option("--out", gen_out, "output CSV path");

    // ---- select ----
    auto* sel_cmd = app.add_subcommand("select", "select landmarks from a cloud CSV");
    std::string sel_cloud, sel_method = "maxmin", sel_out = "landmarks.csv";
    int sel_budget = 30, sel_k = 10;
    double sel_alpha = 0.6, sel_alpha_max = 0.6, sel_tau = 1.0, sel_keep = 0.8;
    std::uint64_t sel_seed = 1;
    sel_cmd->add_option("--cloud", sel_cloud, "input cloud CSV")->required();
    sel_cmd->add_option("--method", sel_method,
                        "maxmin|random|full_recenter|fixed_step|support_weighted|epsnet_matched|"
                        "dense_core");
    sel_cmd->add_option("--budget", sel_budget, "landmark count");
    sel_cmd->add_option("--alpha", sel_alpha, "fixed-step coefficient");
    sel_cmd->add_option("--alpha-max", sel_alpha_max, "support-weighted step cap");
    sel_cmd->add_option("--tau", sel_tau, "support gate");
    sel_cmd->add_option("--k", sel_k, "dense-core neighbor count");
    sel_cmd->add_option("--keep-fraction", sel_keep, "dense-core keep fraction");
    sel_cmd->add_option("--seed", sel_seed, "rng seed for seeded methods");
    sel_cmd->add_option("--out", sel_out, "output landmark CSV");

    // ---- persist ----
    auto* per_cmd = app.add_subcommand("persist", "witness persistence diagram from cloud + landmarks");
    std::string per_cloud, per_landmarks, per_out = "diagram.txt", per_filt_out;
    int per_nu = 1, per_max_dim = 2;
    double per_rmax = 2.1;
    per_cmd->add_option("--cloud", per_cloud, "witness cloud CSV")->required();
    per_cmd->add_option("--landmarks", per_landmarks, "landmark CSV from `select`")->required();
    per_cmd->add_option("--nu", per_nu, "witness offset order");
    per_cmd->add_option("--rmax", per_rmax, "maximal filtration scale");
    per_cmd->add_option("--max-dim", per_max_dim, "top simplex dimension (2 or 3)");
    per_cmd->add_option("--out", per_out, "output diagram path");
    per_cmd->add_option("--filtration-out", per_filt_out, "optional filtration dump path");

    // ---- bench ----
    auto* bench_cmd = app.add_subcommand("bench", "matched-trial benchmark presets");
    bench_cmd->require_subcommand(1);
    dm::bench_config bcfg;
    std::string bench_out = "bench_out";
    bool full_scale = false;
    auto add_bench_flags = [&](CLI::App* cmd) {
        cmd->add_option("--master-seed", bcfg.master_seed, "master seed");
        cmd->add_option("--trials", bcfg.trials, "trials per setting");
        cmd->add_option("--budgets", bcfg.budgets, "landmark budgets")->delimiter(',');
        cmd->add_option("--nu", bcfg.nu, "witness offset order");
        cmd->add_option("--rmax", bcfg.r_max, "maximal filtration scale");
        cmd->add_option("--alpha-max", bcfg.alpha_max, "support-weighted step cap");
        cmd->add_option("--tau", bcfg.tau, "support gate");
        cmd->add_option("--life-thresh", bcfg.life_threshold, "bar lifetime threshold");
        cmd->add_option("--trim", bcfg.trim, "bottleneck trim");
        cmd->add_option("--n-signal", bcfg.n_signal, "signal points per cloud");
        cmd->add_option("--sigma", bcfg.noise_sigma, "signal noise sigma");
        cmd->add_option("--outlier-fraction", bcfg.outlier_fraction, "contamination fraction");
        cmd->add_option("--threads", bcfg.threads, "worker threads (DEPTHMARK_THREADS caps)");
        cmd->add_option("--out", bench_out, "output directory");
        cmd->add_flag("--full", full_scale, "full trial counts (50 synthetic / 20 silhouette)");
    };
    auto* bench_syn = bench_cmd->add_subcommand("synthetic", "circle / two circles / figure eight");
    add_bench_flags(bench_syn);
    auto* bench_mpeg = bench_cmd->add_subcommand("mpeg7", "silhouette benchmark (needs --manifest)");
    add_bench_flags(bench_mpeg);
    bench_mpeg->add_option("--manifest", bcfg.manifest_path, "silhouette manifest path");
    bench_mpeg->add_option("--n-boundary", bcfg.n_boundary, "boundary samples per silhouette");

    dm::torus_config tcfg;
    auto* bench_torus = bench_cmd->add_subcommand("torus", "3D torus extension");
    std::uint64_t torus_master = 1;
    std::string torus_out = "torus_out";
    std::string pilot_file;
    bench_torus->add_option("--master-seed", torus_master, "master seed");
    bench_torus->add_option("--trials", tcfg.trials, "trials per noise regime");
    bench_torus->add_option("--budget", tcfg.budget, "landmark budget");
    bench_torus->add_option("--n-signal", tcfg.n_signal, "torus sample size");
    bench_torus->add_option("--sigma", tcfg.noise_sigma, "surface-normal noise sigma");
    bench_torus->add_option("--alpha-max", tcfg.alpha_max, "support-weighted step cap");
    bench_torus->add_option("--tau", tcfg.tau, "support gate");
    bench_torus->add_option("--radius-band", tcfg.radius_band, "multiscale radii")->delimiter(',');
    bench_torus->add_option("--h1-life", tcfg.h1_life_threshold, "H1 lifetime threshold");
    bench_torus->add_option("--h2-life", tcfg.h2_life_threshold, "H2 lifetime threshold");
    bench_torus->add_option("--thresholds", pilot_file, "JSON produced by `pilot`");
    bench_torus->add_option("--threads", tcfg.threads, "worker threads");
    bench_torus->add_option("--out", torus_out, "output directory");

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "support-weighted parameter grid");
    add_bench_flags(sweep_cmd);

    // ---- pilot ----
    auto* pilot_cmd = app.add_subcommand("pilot", "calibrate torus lifetime thresholds");
    dm::torus_config pcfg;
    std::uint64_t pilot_master = 1;
    std::string pilot_out = "pilot_thresholds.json";
    pilot_cmd->add_option("--master-seed", pilot_master, "master seed");
    pilot_cmd->add_option("--trials", pcfg.trials, "clean torus trials");
    pilot_cmd->add_option("--budget", pcfg.budget, "landmark budget");
    pilot_cmd->add_option("--n-signal", pcfg.n_signal, "torus sample size");
    pilot_cmd->add_option("--sigma", pcfg.noise_sigma, "surface-normal noise sigma");
    pilot_cmd->add_option("--radius-band", pcfg.radius_band, "multiscale radii")->delimiter(',');
    pilot_cmd->add_option("--threads", pcfg.threads, "worker threads");
    pilot_cmd->add_option("--out", pilot_out, "output JSON path");

    // ---- stats ----
    auto* stats_cmd = app.add_subcommand("stats", "paired statistics from record CSVs");
    std::vector<std::string> stats_inputs;
    std::string stats_baseline = "maxmin", stats_out = "paired_stats.json";
    std::uint64_t stats_seed = 1;
    stats_cmd->add_option("--records", stats_inputs, "records.csv paths")->required();
    stats_cmd->add_option("--baseline", stats_baseline, "baseline method");
    stats_cmd->add_option("--master-seed", stats_seed, "bootstrap seed");
    stats_cmd->add_option("--out", stats_out, "output JSON path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen_cmd) {
            dm::dataset_spec spec;
            spec.family = dm::family_from_name(gen_family);
            spec.n_signal = gen_n;
            spec.noise_sigma = gen_sigma;
            spec.contamination = dm::contamination_from_name(gen_noise);
            spec.outlier_fraction = gen_fraction;
            spec.rng_seed = gen_seed;
            spec.target_h1 = dm::default_target_h1(spec.family);
            dm::point_cloud cloud = dm::generate(spec);
            std::ofstream os = open_out(gen_out);
            dm::write_cloud_csv(os, cloud);
            std::cout << "wrote " << cloud.size() << " points to " << gen_out << "\n";
        } else if (*sel_cmd) {
            dm::point_cloud cloud = load_cloud(sel_cloud);
            dm::method_spec m;
            m.kind = dm::method_kind_from_name(sel_method);
            m.alpha = sel_alpha;
            m.alpha_max = sel_alpha_max;
            m.tau = sel_tau;
            m.knn = sel_k;
            m.keep_fraction = sel_keep;
            dm::landmark_set l = dm::select_landmarks(cloud, m, sel_budget, sel_seed);
            std::ofstream os = open_out(sel_out);
            write_landmarks_csv(os, l, cloud.dim);
            std::cout << "wrote " << l.indices.size() << " landmarks to " << sel_out << "\n";
        } else if (*per_cmd) {
            dm::point_cloud cloud = load_cloud(per_cloud);
            std::vector<dm::vec3> landmarks = read_landmarks_csv(per_landmarks, cloud.dim);
            dm::witness_config wcfg{per_nu, per_rmax, per_max_dim};
            dm::filtration filt = dm::build_lazy_witness(landmarks, cloud.points, wcfg);
            if (!per_filt_out.empty()) {
                std::ofstream fs = open_out(per_filt_out);
                dm::write_filtration(fs, filt);
            }
            dm::persistence_diagram diag = dm::compute_persistence(filt);
            std::ofstream os = open_out(per_out);
            dm::write_diagram(os, diag);
            std::cout << "wrote " << diag.bars.size() << " bars (" << dm::simplex_count(filt)
                      << " simplices) to " << per_out << "\n";
        } else if (*bench_syn || *bench_mpeg || *sweep_cmd) {
            std::vector<dm::trial_record> records;
            std::string name;
            if (*bench_syn) {
                if (bench_syn->count("--trials") == 0) bcfg.trials = full_scale ? 50 : 20;
                records = dm::run_benchmark_synthetic(bcfg);
                name = "synthetic";
            } else if (*bench_mpeg) {
                if (bench_mpeg->count("--trials") == 0) bcfg.trials = full_scale ? 20 : 5;
                if (bench_mpeg->count("--tau") == 0) bcfg.tau = 0.5;
                records = dm::run_benchmark_mpeg7(bcfg);
                name = "mpeg7";
            } else {
                records = dm::run_benchmark_sweep(bcfg);
                name = "sweep";
            }
            dm::aggregate_and_report(records, bench_out, bcfg.master_seed, name);
            std::cout << records.size() << " records -> " << bench_out << "\n";
        } else if (*bench_torus) {
            if (!pilot_file.empty()) {
                std::ifstream is(pilot_file);
                if (!is) throw std::runtime_error("cannot open " + pilot_file);
                nlohmann::json j = nlohmann::json::parse(is);
                tcfg.h1_life_threshold = j.at("h1_life_threshold").get<double>();
                tcfg.h2_life_threshold = j.at("h2_life_threshold").get<double>();
            }
            std::vector<dm::torus_trial_result> results = dm::run_torus_benchmark(tcfg, torus_master);
            report_torus(results, torus_out);
            std::cout << results.size() << " torus records -> " << torus_out << "\n";
        } else if (*pilot_cmd) {
            dm::pilot_result res = dm::pilot_torus_thresholds(pcfg, pilot_master);
            nlohmann::json j{{"h1_life_threshold", res.h1_life_threshold},
                             {"h2_life_threshold", res.h2_life_threshold},
                             {"maxmin_hit_rate", res.hit_rate}};
            std::ofstream os = open_out(pilot_out);
            os << j.dump(2) << '\n';
            std::cout << "thresholds (h1=" << res.h1_life_threshold
                      << ", h2=" << res.h2_life_threshold << ", hit rate " << res.hit_rate
                      << ") -> " << pilot_out << "\n";
        } else if (*stats_cmd) {
            std::vector<dm::trial_record> records;
            for (const std::string& path : stats_inputs) {
                std::ifstream is(path);
                if (!is) throw std::runtime_error("cannot open " + path);
                std::vector<dm::trial_record> part = dm::read_records_csv(is);
                records.insert(records.end(), part.begin(), part.end());
            }
            std::vector<dm::paired_stats> stats =
                dm::compute_paired_stats(records, stats_baseline, stats_seed);
            nlohmann::json arr = nlohmann::json::array();
            for (const dm::paired_stats& ps : stats)
                arr.push_back({{"metric", ps.metric},
                               {"method", ps.method},
                               {"baseline", ps.baseline},
                               {"mean_diff", ps.mean_diff},
                               {"ci_lo", ps.ci_lo},
                               {"ci_hi", ps.ci_hi},
                               {"wilcoxon_p", ps.wilcoxon_p},
                               {"discordant_wins", ps.discordant_wins},
                               {"discordant_losses", ps.discordant_losses},
                               {"discordance_p", ps.discordance_p},
                               {"n_pairs", ps.n_pairs},
                               {"settings_won", ps.settings_won},
                               {"settings_total", ps.settings_total}});
            std::ofstream os = open_out(stats_out);
            os << arr.dump(2) << '\n';
            std::cout << stats.size() << " paired comparisons -> " << stats_out << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
