#include "depthmark/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>

namespace depthmark {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t simplex_key(const std::array<int, 4>& verts) {
    std::uint64_t k = 0;
    for (int i = 0; i < 4; ++i) {
        std::uint64_t v = verts[i] < 0 ? 0xffffull : static_cast<std::uint64_t>(verts[i]);
        k = (k << 16) | v;
    }
    return k;
}

// Symmetric difference of two ascending index lists (column addition in GF(2)).
void add_column(std::vector<int>& target, const std::vector<int>& source, std::vector<int>& scratch) {
    scratch.clear();
    std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                  std::back_inserter(scratch));
    target.swap(scratch);
}

}  // namespace

persistence_diagram compute_persistence(const filtration& f) {
    const int n = static_cast<int>(f.simplices.size());
    if (f.vertex_count > 0xfffe) throw std::invalid_argument("vertex id out of range");

    std::unordered_map<std::uint64_t, int> index_of;
    index_of.reserve(static_cast<std::size_t>(n) * 2);
    for (int j = 0; j < n; ++j) {
        const simplex& s = f.simplices[j];
        if (j > 0 && s.value < f.simplices[j - 1].value)
            throw std::invalid_argument("not a filtration");
        index_of.emplace(simplex_key(s.verts), j);
    }

    // Boundary columns: facet indices, ascending. Faces must already be present.
    std::vector<std::vector<int>> columns(n);
    for (int j = 0; j < n; ++j) {
        const simplex& s = f.simplices[j];
        if (s.dim == 0) continue;
        std::vector<int>& col = columns[j];
        for (int drop = 0; drop <= s.dim; ++drop) {
            std::array<int, 4> facet{-1, -1, -1, -1};
            int w = 0;
            for (int k = 0; k <= s.dim; ++k)
                if (k != drop) facet[w++] = s.verts[k];
            auto it = index_of.find(simplex_key(facet));
            if (it == index_of.end() || it->second >= j ||
                f.simplices[it->second].value > s.value)
                throw std::invalid_argument("not a filtration");
            col.push_back(it->second);
        }
        std::sort(col.begin(), col.end());
    }

    std::vector<int> owner(n, -1);  // pivot row -> column index holding it
    std::vector<char> is_creator(n, 0);
    std::vector<char> killed(n, 0);
    persistence_diagram diagram;
    std::vector<int> scratch;

    for (int j = 0; j < n; ++j) {
        std::vector<int>& col = columns[j];
        while (!col.empty() && owner[col.back()] >= 0) add_column(col, columns[owner[col.back()]], scratch);
        if (col.empty()) {
            is_creator[j] = 1;
            continue;
        }
        int low = col.back();
        owner[low] = j;
        killed[low] = 1;
        double birth = f.simplices[low].value;
        double death = f.simplices[j].value;
        if (death > birth) diagram.bars.push_back({f.simplices[low].dim, birth, death});
    }
    for (int j = 0; j < n; ++j)
        if (is_creator[j] && !killed[j])
            diagram.bars.push_back({f.simplices[j].dim, f.simplices[j].value, kInf});

    return diagram;
}

int thresholded_count(const persistence_diagram& d, int dim, double tau_life) {
    if (!(tau_life > 0.0)) throw std::invalid_argument("lifetime threshold must be positive");
    int c = 0;
    for (const bar& b : d.bars)
        c += (b.dim == dim && std::isfinite(b.death) && b.death - b.birth >= tau_life);
    return c;
}

std::vector<double> top_lifetimes(const persistence_diagram& d, int dim, int k) {
    std::vector<double> lifetimes;
    for (const bar& b : d.bars)
        if (b.dim == dim && std::isfinite(b.death)) lifetimes.push_back(b.death - b.birth);
    std::sort(lifetimes.rbegin(), lifetimes.rend());
    lifetimes.resize(static_cast<std::size_t>(k), 0.0);
    return lifetimes;
}

double lifetime_ratio(const persistence_diagram& d, int dim) {
    std::vector<double> top = top_lifetimes(d, dim, 2);
    if (top[1] == 0.0) return kInf;
    return top[0] / top[1];
}

namespace {

struct matcher {
    // Left side: bars of A then nb diagonal slots; right side: bars of B then
    // na diagonal slots. Feasible at lambda iff a perfect matching exists.
    int na, nb;
    const std::vector<bar>*a, *b;
    double lambda;

    bool edge(int l, int r) const {
        bool l_diag = l >= na, r_diag = r >= nb;
        if (l_diag && r_diag) return true;
        if (l_diag) return 0.5 * ((*b)[r].death - (*b)[r].birth) <= lambda;
        if (r_diag) return 0.5 * ((*a)[l].death - (*a)[l].birth) <= lambda;
        double c = std::max(std::abs((*a)[l].birth - (*b)[r].birth),
                            std::abs((*a)[l].death - (*b)[r].death));
        return c <= lambda;
    }

    bool try_augment(int l, std::vector<int>& match_r, std::vector<char>& visited) {
        for (int r = 0; r < nb + na; ++r) {
            if (visited[r] || !edge(l, r)) continue;
            visited[r] = 1;
            if (match_r[r] < 0 || try_augment(match_r[r], match_r, visited)) {
                match_r[r] = l;
                return true;
            }
        }
        return false;
    }

    bool feasible() {
        std::vector<int> match_r(nb + na, -1);
        for (int l = 0; l < na + nb; ++l) {
            std::vector<char> visited(nb + na, 0);
            if (!try_augment(l, match_r, visited)) return false;
        }
        return true;
    }
};

std::vector<bar> trimmed_bars(const persistence_diagram& d, int dim, double trim) {
    std::vector<bar> out;
    for (const bar& b : d.bars)
        if (b.dim == dim && std::isfinite(b.death) && b.death - b.birth >= trim) out.push_back(b);
    return out;
}

}  // namespace

double bottleneck_trimmed(const persistence_diagram& a, const persistence_diagram& b, int dim,
                          double trim) {
    if (trim < 0.0) throw std::invalid_argument("trim must be nonnegative");
    std::vector<bar> ba = trimmed_bars(a, dim, trim);
    std::vector<bar> bb = trimmed_bars(b, dim, trim);
    if (ba.empty() && bb.empty()) return 0.0;

    std::vector<double> candidates{0.0};
    for (const bar& x : ba) candidates.push_back(0.5 * (x.death - x.birth));
    for (const bar& y : bb) candidates.push_back(0.5 * (y.death - y.birth));
    for (const bar& x : ba)
        for (const bar& y : bb)
            candidates.push_back(std::max(std::abs(x.birth - y.birth), std::abs(x.death - y.death)));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    matcher m{static_cast<int>(ba.size()), static_cast<int>(bb.size()), &ba, &bb, 0.0};
    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        m.lambda = candidates[mid];
        if (m.feasible())
            hi = mid;
        else
            lo = mid + 1;
    }
    return candidates[lo];
}

void write_diagram(std::ostream& os, const persistence_diagram& d) {
    for (const bar& b : d.bars) {
        os << b.dim << ' ' << b.birth << ' ';
        if (std::isfinite(b.death))
            os << b.death;
        else
            os << "inf";
        os << '\n';
    }
}

persistence_diagram read_diagram(std::istream& is) {
    persistence_diagram d;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        bar b;
        std::string death;
        if (!(ss >> b.dim >> b.birth >> death)) throw std::runtime_error("bad diagram line: " + line);
        b.death = (death == "inf") ? kInf : std::stod(death);
        d.bars.push_back(b);
    }
    return d;
}

}  // namespace depthmark
