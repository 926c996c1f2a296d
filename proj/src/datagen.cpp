#include "depthmark/datagen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace depthmark {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct box {
    vec3 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()};
    vec3 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
            -std::numeric_limits<double>::infinity()};

    void absorb(const vec3& p) {
        lo.x = std::min(lo.x, p.x); hi.x = std::max(hi.x, p.x);
        lo.y = std::min(lo.y, p.y); hi.y = std::max(hi.y, p.y);
        lo.z = std::min(lo.z, p.z); hi.z = std::max(hi.z, p.z);
    }
};

box signal_box(const point_cloud& cloud) {
    box b;
    for (std::size_t i = 0; i < cloud.points.size(); ++i)
        if (cloud.labels[i] == point_label::signal) b.absorb(cloud.points[i]);
    return b;
}

box inflate(const box& b, double factor) {
    box out;
    auto grow = [factor](double lo, double hi, double& olo, double& ohi) {
        double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo) * factor;
        olo = c - h;
        ohi = c + h;
    };
    grow(b.lo.x, b.hi.x, out.lo.x, out.hi.x);
    grow(b.lo.y, b.hi.y, out.lo.y, out.hi.y);
    grow(b.lo.z, b.hi.z, out.lo.z, out.hi.z);
    return out;
}

vec3 uniform_in(const box& b, rng& gen, int dim) {
    vec3 p;
    p.x = gen.uniform(b.lo.x, b.hi.x);
    p.y = gen.uniform(b.lo.y, b.hi.y);
    p.z = (dim == 3) ? gen.uniform(b.lo.z, b.hi.z) : 0.0;
    return p;
}

void circle_points(point_cloud& cloud, int count, const vec3& center, double sigma, rng& gen) {
    for (int i = 0; i < count; ++i) {
        double theta = gen.uniform(0.0, 2.0 * kPi);
        double r = 1.0 + sigma * gen.gaussian();
        cloud.points.push_back({center.x + r * std::cos(theta), center.y + r * std::sin(theta), 0.0});
        cloud.labels.push_back(point_label::signal);
    }
}

}  // namespace

std::string family_name(dataset_family f) {
    switch (f) {
        case dataset_family::circle: return "circle";
        case dataset_family::two_circles: return "two_circles";
        case dataset_family::figure_eight: return "figure_eight";
        case dataset_family::torus: return "torus";
        case dataset_family::silhouette: return "silhouette";
    }
    throw std::invalid_argument("unknown family");
}

std::string contamination_name(contamination_model c) {
    switch (c) {
        case contamination_model::clean: return "clean";
        case contamination_model::uniform_box: return "uniform";
        case contamination_model::clustered: return "cluster";
    }
    throw std::invalid_argument("unknown contamination model");
}

dataset_family family_from_name(const std::string& s) {
    if (s == "circle") return dataset_family::circle;
    if (s == "two_circles") return dataset_family::two_circles;
    if (s == "figure_eight") return dataset_family::figure_eight;
    if (s == "torus") return dataset_family::torus;
    if (s == "silhouette") return dataset_family::silhouette;
    throw std::invalid_argument("unknown family: " + s);
}

contamination_model contamination_from_name(const std::string& s) {
    if (s == "clean") return contamination_model::clean;
    if (s == "uniform") return contamination_model::uniform_box;
    if (s == "cluster") return contamination_model::clustered;
    throw std::invalid_argument("unknown contamination model: " + s);
}

int default_target_h1(dataset_family f) {
    switch (f) {
        case dataset_family::circle: return 1;
        case dataset_family::two_circles: return 2;
        case dataset_family::figure_eight: return 2;
        case dataset_family::torus: return 2;
        case dataset_family::silhouette: return 1;
    }
    throw std::invalid_argument("unknown family");
}

void add_uniform_outliers(point_cloud& cloud, int count, rng& gen) {
    if (count <= 0) return;
    box b = inflate(signal_box(cloud), 1.25);
    for (int i = 0; i < count; ++i) {
        cloud.points.push_back(uniform_in(b, gen, cloud.dim));
        cloud.labels.push_back(point_label::outlier);
    }
}

void add_cluster_outliers(point_cloud& cloud, int count, rng& gen) {
    if (count <= 0) return;
    box b = inflate(signal_box(cloud), 1.25);
    const int clusters = 3;
    std::vector<vec3> centers;
    for (int c = 0; c < clusters; ++c) centers.push_back(uniform_in(b, gen, cloud.dim));
    int base = count / clusters, rem = count % clusters;
    for (int c = 0; c < clusters; ++c) {
        int nc = base + (c < rem ? 1 : 0);
        for (int i = 0; i < nc; ++i) {
            vec3 p = centers[c];
            p.x += 0.05 * gen.gaussian();
            p.y += 0.05 * gen.gaussian();
            if (cloud.dim == 3) p.z += 0.05 * gen.gaussian();
            cloud.points.push_back(p);
            cloud.labels.push_back(point_label::outlier);
        }
    }
}

point_cloud generate(const dataset_spec& spec) {
    if (spec.n_signal <= 0) throw std::invalid_argument("n_signal must be positive");
    if (spec.outlier_fraction < 0.0) throw std::invalid_argument("outlier_fraction negative");

    rng gen(spec.rng_seed);
    point_cloud cloud;
    cloud.dim = (spec.family == dataset_family::torus) ? 3 : 2;

    switch (spec.family) {
        case dataset_family::circle:
            circle_points(cloud, spec.n_signal, {0.0, 0.0, 0.0}, spec.noise_sigma, gen);
            break;
        case dataset_family::two_circles: {
            int left = (spec.n_signal + 1) / 2;
            circle_points(cloud, left, {-1.5, 0.0, 0.0}, spec.noise_sigma, gen);
            circle_points(cloud, spec.n_signal - left, {1.5, 0.0, 0.0}, spec.noise_sigma, gen);
            break;
        }
        case dataset_family::figure_eight: {
            // circles of radius 1 tangent at the origin
            int left = (spec.n_signal + 1) / 2;
            circle_points(cloud, left, {-1.0, 0.0, 0.0}, spec.noise_sigma, gen);
            circle_points(cloud, spec.n_signal - left, {1.0, 0.0, 0.0}, spec.noise_sigma, gen);
            break;
        }
        case dataset_family::torus: {
            const double R = spec.torus_major, r = spec.torus_minor;
            for (int i = 0; i < spec.n_signal; ++i) {
                double theta = gen.uniform(0.0, 2.0 * kPi);
                double phi = gen.uniform(0.0, 2.0 * kPi);
                vec3 normal{std::cos(phi) * std::cos(theta), std::cos(phi) * std::sin(theta),
                            std::sin(phi)};
                vec3 p{(R + r * std::cos(phi)) * std::cos(theta),
                       (R + r * std::cos(phi)) * std::sin(theta), r * std::sin(phi)};
                double step = spec.noise_sigma * gen.gaussian();
                cloud.points.push_back(p + step * normal);
                cloud.labels.push_back(point_label::signal);
            }
            break;
        }
        case dataset_family::silhouette:
            throw std::invalid_argument("silhouette clouds come from load_silhouette_pgm");
    }

    if (spec.contamination != contamination_model::clean) {
        int n_out = static_cast<int>(std::llround(spec.outlier_fraction * spec.n_signal));
        if (spec.contamination == contamination_model::uniform_box)
            add_uniform_outliers(cloud, n_out, gen);
        else
            add_cluster_outliers(cloud, n_out, gen);
    }
    cloud.validate();
    return cloud;
}

point_cloud normalize(const point_cloud& cloud) {
    cloud.validate();
    vec3 centroid{0.0, 0.0, 0.0};
    int n_signal = 0;
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        if (cloud.labels[i] != point_label::signal) continue;
        centroid = centroid + cloud.points[i];
        ++n_signal;
    }
    if (n_signal == 0) throw std::invalid_argument("no signal points");
    centroid = (1.0 / n_signal) * centroid;

    box b = signal_box(cloud);
    double side = std::max(b.hi.x - b.lo.x, b.hi.y - b.lo.y);
    if (cloud.dim == 3) side = std::max(side, b.hi.z - b.lo.z);
    double scale = (side > 0.0) ? 2.0 / side : 1.0;

    point_cloud out = cloud;
    for (vec3& p : out.points) p = scale * (p - centroid);
    return out;
}

namespace {

struct pgm_image {
    int width = 0, height = 0, maxval = 0;
    std::vector<int> pixels;  // row-major

    int at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
};

int next_header_token(std::istream& is) {
    // skips whitespace and '#' comments
    for (;;) {
        int c = is.peek();
        if (c == '#') {
            std::string line;
            std::getline(is, line);
        } else if (std::isspace(c)) {
            is.get();
        } else {
            break;
        }
    }
    int value = 0;
    if (!(is >> value)) throw std::runtime_error("truncated PGM header");
    return value;
}

pgm_image read_pgm(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open PGM file: " + path);

    std::string magic;
    is >> magic;
    if (magic != "P2" && magic != "P5") throw std::runtime_error("unsupported PGM magic: " + magic);

    pgm_image img;
    img.width = next_header_token(is);
    img.height = next_header_token(is);
    img.maxval = next_header_token(is);
    if (img.width <= 0 || img.height <= 0 || img.maxval <= 0 || img.maxval > 65535)
        throw std::runtime_error("bad PGM dimensions");

    std::size_t n = static_cast<std::size_t>(img.width) * img.height;
    img.pixels.resize(n);
    if (magic == "P2") {
        for (std::size_t i = 0; i < n; ++i)
            if (!(is >> img.pixels[i])) throw std::runtime_error("truncated PGM data");
    } else {
        is.get();  // single whitespace after maxval
        if (img.maxval < 256) {
            std::vector<unsigned char> raw(n);
            is.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
            if (static_cast<std::size_t>(is.gcount()) != n)
                throw std::runtime_error("truncated PGM data");
            for (std::size_t i = 0; i < n; ++i) img.pixels[i] = raw[i];
        } else {
            std::vector<unsigned char> raw(n * 2);
            is.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n * 2));
            if (static_cast<std::size_t>(is.gcount()) != static_cast<std::streamsize>(n * 2))
                throw std::runtime_error("truncated PGM data");
            for (std::size_t i = 0; i < n; ++i) img.pixels[i] = (raw[2 * i] << 8) | raw[2 * i + 1];
        }
    }
    return img;
}

}  // namespace

point_cloud load_silhouette_pgm(const std::string& path, int n_boundary, std::uint64_t rng_seed) {
    if (n_boundary <= 0) throw std::invalid_argument("n_boundary must be positive");
    pgm_image img = read_pgm(path);

    auto foreground = [&img](int row, int col) {
        if (row < 0 || row >= img.height || col < 0 || col >= img.width) return false;
        return 2 * img.at(row, col) > img.maxval;
    };

    bool any_fg = false;
    std::vector<std::pair<int, int>> boundary;
    for (int row = 0; row < img.height; ++row) {
        for (int col = 0; col < img.width; ++col) {
            if (!foreground(row, col)) continue;
            any_fg = true;
            if (!foreground(row - 1, col) || !foreground(row + 1, col) ||
                !foreground(row, col - 1) || !foreground(row, col + 1))
                boundary.emplace_back(row, col);
        }
    }
    if (!any_fg) throw std::runtime_error("empty foreground");
    if (static_cast<int>(boundary.size()) < n_boundary)
        throw std::runtime_error("fewer boundary pixels than requested");

    rng gen(rng_seed);
    std::vector<int> pick(boundary.size());
    std::iota(pick.begin(), pick.end(), 0);
    for (int t = 0; t < n_boundary; ++t)
        std::swap(pick[t], pick[t + static_cast<std::size_t>(gen.below(pick.size() - t))]);
    pick.resize(n_boundary);
    std::sort(pick.begin(), pick.end());

    point_cloud cloud;
    cloud.dim = 2;
    for (int i : pick) {
        auto [row, col] = boundary[i];
        cloud.points.push_back({static_cast<double>(col), static_cast<double>(img.height - 1 - row), 0.0});
        cloud.labels.push_back(point_label::signal);
    }
    return normalize(cloud);
}

namespace {

void write_double(std::ostream& os, double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    os.write(buf, ptr - buf);
    (void)ec;
}

}  // namespace

void write_cloud_csv(std::ostream& os, const point_cloud& cloud) {
    os << (cloud.dim == 3 ? "x,y,z,label" : "x,y,label") << '\n';
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const vec3& p = cloud.points[i];
        write_double(os, p.x);
        os << ',';
        write_double(os, p.y);
        if (cloud.dim == 3) {
            os << ',';
            write_double(os, p.z);
        }
        os << ',' << (cloud.labels[i] == point_label::signal ? "signal" : "outlier") << '\n';
    }
}

point_cloud read_cloud_csv(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw std::runtime_error("empty cloud CSV");
    point_cloud cloud;
    if (header == "x,y,label")
        cloud.dim = 2;
    else if (header == "x,y,z,label")
        cloud.dim = 3;
    else
        throw std::runtime_error("bad cloud CSV header: " + header);

    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tok;
        vec3 p;
        std::getline(ss, tok, ',');
        p.x = std::stod(tok);
        std::getline(ss, tok, ',');
        p.y = std::stod(tok);
        if (cloud.dim == 3) {
            std::getline(ss, tok, ',');
            p.z = std::stod(tok);
        }
        if (!std::getline(ss, tok, ',')) throw std::runtime_error("missing label: " + line);
        cloud.points.push_back(p);
        if (tok == "signal")
            cloud.labels.push_back(point_label::signal);
        else if (tok == "outlier")
            cloud.labels.push_back(point_label::outlier);
        else
            throw std::runtime_error("bad label: " + tok);
    }
    cloud.validate();
    return cloud;
}

std::vector<manifest_entry> read_manifest(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open manifest: " + path);
    std::vector<manifest_entry> entries;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        manifest_entry e;
        if (!(ss >> e.path >> e.shape_class)) throw std::runtime_error("bad manifest line: " + line);
        ss >> e.target_h1;  // optional, defaults to 1
        entries.push_back(e);
    }
    if (entries.empty()) throw std::runtime_error("empty manifest: " + path);
    return entries;
}

}  // namespace depthmark
