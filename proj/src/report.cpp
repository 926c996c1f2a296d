#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "depthmark/bench.hpp"
#include "depthmark/stats.hpp"

#include "json.hpp"

namespace depthmark {

namespace {

void put_double(std::ostream& os, double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    os.write(buf, ptr - buf);
    (void)ec;
}

double parse_double(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    return std::stod(s);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, ',')) fields.push_back(cur);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

const char* kRecordsHeader =
    "dataset,noise,budget,trial,method,alpha_max,tau,nu,r_max,life_threshold,trim,cloud_hash,"
    "h1_count,h1_count_correct,top1_life,top2_life,life_ratio,trimmed_bottleneck,"
    "outlier_landmarks,mean_signal_cover,simplex_count";

}  // namespace

void write_records_csv(std::ostream& os, const std::vector<trial_record>& records) {
    os << kRecordsHeader << '\n';
    for (const trial_record& r : records) {
        os << r.dataset << ',' << r.noise << ',' << r.budget << ',' << r.trial << ',' << r.method
           << ',';
        put_double(os, r.alpha_max);
        os << ',';
        put_double(os, r.tau);
        os << ',' << r.nu << ',';
        put_double(os, r.r_max);
        os << ',';
        put_double(os, r.life_threshold);
        os << ',';
        put_double(os, r.trim);
        os << ',' << r.cloud_hash << ',' << r.h1_count << ',' << r.h1_count_correct << ',';
        put_double(os, r.top1_life);
        os << ',';
        put_double(os, r.top2_life);
        os << ',';
        put_double(os, r.life_ratio);
        os << ',';
        put_double(os, r.trimmed_bottleneck);
        os << ',' << r.outlier_landmarks << ',';
        put_double(os, r.mean_signal_cover);
        os << ',' << r.simplex_count << '\n';
    }
}

std::vector<trial_record> read_records_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("empty records CSV");
    if (line != kRecordsHeader) throw std::runtime_error("bad records CSV header");

    std::vector<trial_record> records;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 21) throw std::runtime_error("bad records CSV row: " + line);
        trial_record r;
        r.dataset = f[0];
        r.noise = f[1];
        r.budget = std::stoi(f[2]);
        r.trial = std::stoi(f[3]);
        r.method = f[4];
        r.alpha_max = parse_double(f[5]);
        r.tau = parse_double(f[6]);
        r.nu = std::stoi(f[7]);
        r.r_max = parse_double(f[8]);
        r.life_threshold = parse_double(f[9]);
        r.trim = parse_double(f[10]);
        r.cloud_hash = f[11];
        r.h1_count = std::stoi(f[12]);
        r.h1_count_correct = std::stoi(f[13]);
        r.top1_life = parse_double(f[14]);
        r.top2_life = parse_double(f[15]);
        r.life_ratio = parse_double(f[16]);
        r.trimmed_bottleneck = parse_double(f[17]);
        r.outlier_landmarks = std::stoi(f[18]);
        r.mean_signal_cover = parse_double(f[19]);
        r.simplex_count = std::stoll(f[20]);
        records.push_back(std::move(r));
    }
    return records;
}

void write_timings_csv(std::ostream& os, const std::vector<trial_record>& records) {
    os << "dataset,noise,budget,trial,method,wall_time_seconds\n";
    for (const trial_record& r : records) {
        os << r.dataset << ',' << r.noise << ',' << r.budget << ',' << r.trial << ',' << r.method
           << ',';
        put_double(os, r.wall_time_seconds);
        os << '\n';
    }
}

void write_torus_records_csv(std::ostream& os, const std::vector<torus_trial_result>& results) {
    os << "noise,trial,method,torus_hit,h1_hit,h2_hit,mean_signal_cover,outlier_landmarks,"
          "cloud_hash\n";
    for (const torus_trial_result& r : results) {
        os << r.noise << ',' << r.trial << ',' << r.method << ',' << (r.torus_hit ? 1 : 0) << ','
           << (r.h1_hit ? 1 : 0) << ',' << (r.h2_hit ? 1 : 0) << ',';
        put_double(os, r.mean_signal_cover);
        os << ',' << r.outlier_landmarks << ',' << r.cloud_hash << '\n';
    }
}

namespace {

// Methods are distinguished by tag plus parameters so sweep grids stay
// apart; no commas, the id lands in CSV fields.
std::string method_id(const trial_record& r) {
    if (r.method != "support_weighted" && r.method != "fixed_step") return r.method;
    std::ostringstream ss;
    ss << r.method << "(a=" << r.alpha_max << ";t=" << r.tau << ")";
    return ss.str();
}

using setting_key = std::tuple<std::string, std::string, int>;  // dataset, noise, budget
using pair_key = std::tuple<std::string, std::string, int, int>;

struct method_group {
    std::map<pair_key, const trial_record*> by_pair;
    std::vector<const trial_record*> records;
};

std::map<std::string, method_group> group_by_method(const std::vector<trial_record>& records) {
    std::map<std::string, method_group> groups;
    for (const trial_record& r : records) {
        method_group& g = groups[method_id(r)];
        g.by_pair[{r.dataset, r.noise, r.budget, r.trial}] = &r;
        g.records.push_back(&r);
    }
    return groups;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace

std::vector<paired_stats> compute_paired_stats(const std::vector<trial_record>& records,
                                               const std::string& baseline,
                                               std::uint64_t stats_seed) {
    if (records.empty()) throw std::invalid_argument("empty record set");
    std::map<std::string, method_group> groups = group_by_method(records);
    auto base_it = groups.find(baseline);
    if (base_it == groups.end())
        throw std::invalid_argument("baseline method absent from records: " + baseline);
    const method_group& base = base_it->second;

    std::vector<paired_stats> out;
    for (const auto& [name, group] : groups) {
        if (name == baseline) continue;

        // matched pairs in deterministic (setting, trial) order
        std::vector<const trial_record*> mine, theirs;
        for (const auto& [key, rec] : group.by_pair) {
            auto it = base.by_pair.find(key);
            if (it == base.by_pair.end()) continue;
            mine.push_back(rec);
            theirs.push_back(it->second);
        }
        if (mine.empty()) continue;

        for (const std::string& metric : {std::string("mean_signal_cover"), std::string("accuracy")}) {
            const bool is_cover = metric == "mean_signal_cover";
            std::vector<double> diffs;
            int wins = 0, losses = 0;
            for (std::size_t i = 0; i < mine.size(); ++i) {
                double a = is_cover ? mine[i]->mean_signal_cover
                                    : static_cast<double>(mine[i]->h1_count_correct);
                double b = is_cover ? theirs[i]->mean_signal_cover
                                    : static_cast<double>(theirs[i]->h1_count_correct);
                diffs.push_back(a - b);
                // lower is better for cover, higher for accuracy
                if (is_cover ? a < b : a > b) ++wins;
                if (is_cover ? a > b : a < b) ++losses;
            }

            paired_stats ps;
            ps.metric = metric;
            ps.method = name;
            ps.baseline = baseline;
            ps.n_pairs = static_cast<int>(diffs.size());
            ps.mean_diff = mean_of(diffs);
            std::uint64_t seed = mix_seed(mix_seed(stats_seed, name), metric);
            auto [lo, hi] = bootstrap_mean_ci(diffs, 10000, seed);
            ps.ci_lo = lo;
            ps.ci_hi = hi;
            ps.wilcoxon_p = wilcoxon_signed_rank(diffs);
            ps.discordant_wins = wins;
            ps.discordant_losses = losses;
            ps.discordance_p = exact_discordance_test(wins, losses);

            // setting-level wins
            std::map<setting_key, std::pair<std::vector<double>, std::vector<double>>> per_setting;
            for (std::size_t i = 0; i < mine.size(); ++i) {
                setting_key key{mine[i]->dataset, mine[i]->noise, mine[i]->budget};
                double a = is_cover ? mine[i]->mean_signal_cover
                                    : static_cast<double>(mine[i]->h1_count_correct);
                double b = is_cover ? theirs[i]->mean_signal_cover
                                    : static_cast<double>(theirs[i]->h1_count_correct);
                per_setting[key].first.push_back(a);
                per_setting[key].second.push_back(b);
            }
            for (const auto& [key, ab] : per_setting) {
                double ma = mean_of(ab.first), mb = mean_of(ab.second);
                if (is_cover ? ma < mb : ma > mb) ++ps.settings_won;
            }
            ps.settings_total = static_cast<int>(per_setting.size());
            out.push_back(std::move(ps));
        }
    }
    return out;
}

namespace {

struct aggregate_row {
    std::string method;
    double accuracy = 0.0, cover = 0.0, outliers = 0.0, top1 = 0.0, bottleneck = 0.0;
    int count = 0;
};

std::vector<aggregate_row> aggregate_rows(const std::vector<trial_record>& records) {
    std::map<std::string, aggregate_row> rows;
    for (const trial_record& r : records) {
        aggregate_row& row = rows[method_id(r)];
        row.method = method_id(r);
        row.accuracy += r.h1_count_correct;
        row.cover += r.mean_signal_cover;
        row.outliers += r.outlier_landmarks;
        row.top1 += r.top1_life;
        row.bottleneck += r.trimmed_bottleneck;
        row.count += 1;
    }
    std::vector<aggregate_row> out;
    for (auto& [name, row] : rows) {
        double n = row.count;
        row.accuracy /= n;
        row.cover /= n;
        row.outliers /= n;
        row.top1 /= n;
        row.bottleneck /= n;
        out.push_back(row);
    }
    return out;
}

void write_aggregate_csv(std::ostream& os, const std::vector<trial_record>& records) {
    os << "Method,Accuracy,Mean cover,Outlier lmks,Top-1 life,Trimmed bottleneck\n";
    for (const aggregate_row& row : aggregate_rows(records)) {
        os << row.method << ',';
        put_double(os, row.accuracy);
        os << ',';
        put_double(os, row.cover);
        os << ',';
        put_double(os, row.outliers);
        os << ',';
        put_double(os, row.top1);
        os << ',';
        put_double(os, row.bottleneck);
        os << '\n';
    }
}

struct acc_cover {
    double acc_sum = 0.0, cover_sum = 0.0;
    int count = 0;
    double acc() const { return count ? acc_sum / count : 0.0; }
    double cover() const { return count ? cover_sum / count : 0.0; }
};

// Maxmin versus support-weighted tables, resolved by an arbitrary grouping key.
template <typename KeyFn>
void write_two_method_breakdown(std::ostream& os, const std::vector<trial_record>& records,
                                const std::string& key_header, KeyFn key_fn) {
    std::map<std::string, std::pair<acc_cover, acc_cover>> groups;
    for (const trial_record& r : records) {
        if (r.method != "maxmin" && r.method != "support_weighted") continue;
        auto& entry = groups[key_fn(r)];
        acc_cover& slot = (r.method == "maxmin") ? entry.first : entry.second;
        slot.acc_sum += r.h1_count_correct;
        slot.cover_sum += r.mean_signal_cover;
        slot.count += 1;
    }
    os << key_header << ",Maxmin acc,Support-weighted acc,Maxmin cover,Support-weighted cover,"
          "Cover gain\n";
    for (const auto& [key, entry] : groups) {
        const acc_cover& mm = entry.first;
        const acc_cover& sw = entry.second;
        double gain = mm.cover() > 0.0 ? 100.0 * (mm.cover() - sw.cover()) / mm.cover() : 0.0;
        os << key << ',';
        put_double(os, mm.acc());
        os << ',';
        put_double(os, sw.acc());
        os << ',';
        put_double(os, mm.cover());
        os << ',';
        put_double(os, sw.cover());
        os << ',';
        put_double(os, gain);
        os << '\n';
    }
}

void write_long_csv(std::ostream& os, const std::vector<trial_record>& records) {
    os << "dataset,noise,budget,trial,method,metric,value\n";
    auto row = [&os](const trial_record& r, const char* metric, double value) {
        os << r.dataset << ',' << r.noise << ',' << r.budget << ',' << r.trial << ','
           << method_id(r) << ',' << metric << ',';
        put_double(os, value);
        os << '\n';
    };
    for (const trial_record& r : records) {
        row(r, "h1_count", r.h1_count);
        row(r, "h1_count_correct", r.h1_count_correct);
        row(r, "top1_life", r.top1_life);
        row(r, "top2_life", r.top2_life);
        row(r, "life_ratio", r.life_ratio);
        row(r, "trimmed_bottleneck", r.trimmed_bottleneck);
        row(r, "outlier_landmarks", r.outlier_landmarks);
        row(r, "mean_signal_cover", r.mean_signal_cover);
        row(r, "simplex_count", static_cast<double>(r.simplex_count));
    }
}

nlohmann::json stats_to_json(const std::vector<paired_stats>& stats) {
    nlohmann::json arr = nlohmann::json::array();
    for (const paired_stats& ps : stats) {
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
    }
    return arr;
}

}  // namespace

void aggregate_and_report(const std::vector<trial_record>& records, const std::string& out_dir,
                          std::uint64_t stats_seed, const std::string& benchmark_name) {
    if (records.empty()) throw std::invalid_argument("empty record set");
    std::filesystem::create_directories(out_dir);
    auto open = [&out_dir](const std::string& name) {
        std::ofstream os(out_dir + "/" + name, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + out_dir + "/" + name);
        return os;
    };

    {
        std::ofstream os = open("records.csv");
        write_records_csv(os, records);
    }
    {
        std::ofstream os = open("timings.csv");
        write_timings_csv(os, records);
    }
    {
        std::ofstream os = open("aggregate.csv");
        write_aggregate_csv(os, records);
    }
    {
        std::ofstream os = open("breakdown_dataset_noise.csv");
        write_two_method_breakdown(os, records, "Dataset,Noise", [](const trial_record& r) {
            return r.dataset + "," + r.noise;
        });
    }
    {
        std::ofstream os = open("breakdown_budget.csv");
        write_two_method_breakdown(os, records, "Benchmark,m", [&](const trial_record& r) {
            return benchmark_name + "," + std::to_string(r.budget);
        });
    }
    {
        std::ofstream os = open("records_long.csv");
        write_long_csv(os, records);
    }

    bool has_maxmin = std::any_of(records.begin(), records.end(),
                                  [](const trial_record& r) { return r.method == "maxmin"; });
    if (has_maxmin) {
        std::vector<paired_stats> stats = compute_paired_stats(records, "maxmin", stats_seed);
        std::ofstream os = open("paired_stats.json");
        os << stats_to_json(stats).dump(2) << '\n';
    }
}

}  // namespace depthmark
