#pragma once

#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace depthmark {

struct vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline vec3 operator+(const vec3& a, const vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline vec3 operator-(const vec3& a, const vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline vec3 operator*(double s, const vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
inline bool operator==(const vec3& a, const vec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }

inline double dot(const vec3& a, const vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// z-component of the cross product; the planar orientation test.
inline double cross2(const vec3& a, const vec3& b) { return a.x * b.y - a.y * b.x; }

inline vec3 cross(const vec3& a, const vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double squared_norm(const vec3& a) { return dot(a, a); }
inline double norm(const vec3& a) { return std::sqrt(squared_norm(a)); }
inline double dist(const vec3& a, const vec3& b) { return norm(a - b); }

enum class point_label : std::uint8_t { signal, outlier };

// Finite labeled point set in R^2 or R^3. z stays 0 when dim == 2.
struct point_cloud {
    std::vector<vec3> points;
    std::vector<point_label> labels;
    int dim = 2;

    std::size_t size() const { return points.size(); }

    void validate() const {
        if (points.empty()) throw std::invalid_argument("empty point set");
        if (labels.size() != points.size())
            throw std::invalid_argument("labels and points differ in length");
        if (dim != 2 && dim != 3) throw std::invalid_argument("dimension must be 2 or 3");
        for (const vec3& p : points) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
                throw std::invalid_argument("non-finite coordinate");
            if (dim == 2 && p.z != 0.0) throw std::invalid_argument("dimension mismatch");
        }
    }

    int signal_count() const {
        int c = 0;
        for (point_label l : labels) c += (l == point_label::signal);
        return c;
    }
};

// splitmix64; the single PRNG used everywhere so runs replay bit-for-bit.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class rng {
public:
    explicit rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // rejection keeps the draw unbiased
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // standard normal via Box-Muller with a cached spare
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// FNV-1a over raw bytes; used to fingerprint generated clouds.
inline std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ull) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t hash_cloud(const point_cloud& cloud) {
    std::uint64_t h = fnv1a(cloud.points.data(), cloud.points.size() * sizeof(vec3));
    h = fnv1a(cloud.labels.data(), cloud.labels.size() * sizeof(point_label), h);
    h = fnv1a(&cloud.dim, sizeof(cloud.dim), h);
    return h;
}

// Deterministic seed derivation: trial seed = mix of master seed and trial coordinates.
inline std::uint64_t mix_seed(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    std::uint64_t s = h;
    return splitmix64(s);
}

inline std::uint64_t mix_seed(std::uint64_t h, std::string_view s) {
    return mix_seed(h, fnv1a(s.data(), s.size()));
}

}  // namespace depthmark
