#include "oracles/persistence_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace depthmark::oracle {

namespace {

struct bitset_column {
    std::vector<std::uint64_t> words;

    explicit bitset_column(std::size_t bits) : words((bits + 63) / 64, 0) {}

    void set(std::size_t i) { words[i / 64] |= (1ull << (i % 64)); }

    bool empty() const {
        for (std::uint64_t w : words)
            if (w) return false;
        return true;
    }

    int highest() const {
        for (std::size_t wi = words.size(); wi-- > 0;) {
            if (!words[wi]) continue;
            return static_cast<int>(wi * 64 + 63 - __builtin_clzll(words[wi]));
        }
        return -1;
    }

    void operator^=(const bitset_column& other) {
        for (std::size_t i = 0; i < words.size(); ++i) words[i] ^= other.words[i];
    }
};

}  // namespace

persistence_diagram naive_persistence_oracle(const filtration& f) {
    const std::size_t n = f.simplices.size();

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&f](int a, int b) {
        const simplex& sa = f.simplices[a];
        const simplex& sb = f.simplices[b];
        if (sa.value != sb.value) return sa.value < sb.value;
        if (sa.dim != sb.dim) return sa.dim < sb.dim;
        return sa.verts > sb.verts;  // reversed tie-break versus production order
    });
    std::vector<int> position(n);
    for (std::size_t i = 0; i < n; ++i) position[order[i]] = static_cast<int>(i);

    std::map<std::array<int, 4>, int> pos_of_verts;
    for (std::size_t i = 0; i < n; ++i) pos_of_verts[f.simplices[order[i]].verts] = static_cast<int>(i);

    std::vector<bitset_column> columns;
    columns.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const simplex& s = f.simplices[order[i]];
        bitset_column col(n);
        for (int drop = 0; s.dim > 0 && drop <= s.dim; ++drop) {
            std::array<int, 4> facet{-1, -1, -1, -1};
            int w = 0;
            for (int k = 0; k <= s.dim; ++k)
                if (k != drop) facet[w++] = s.verts[k];
            col.set(static_cast<std::size_t>(pos_of_verts.at(facet)));
        }
        columns.push_back(std::move(col));
    }

    std::vector<int> owner(n, -1);
    std::vector<char> creator(n, 0), killed(n, 0);
    persistence_diagram diagram;
    for (std::size_t j = 0; j < n; ++j) {
        bitset_column& col = columns[j];
        int low = col.highest();
        while (low >= 0 && owner[low] >= 0) {
            col ^= columns[owner[low]];
            low = col.highest();
        }
        if (low < 0) {
            creator[j] = 1;
            continue;
        }
        owner[low] = static_cast<int>(j);
        killed[low] = 1;
        double birth = f.simplices[order[low]].value;
        double death = f.simplices[order[j]].value;
        if (death > birth) diagram.bars.push_back({f.simplices[order[low]].dim, birth, death});
    }
    for (std::size_t j = 0; j < n; ++j)
        if (creator[j] && !killed[j])
            diagram.bars.push_back({f.simplices[order[j]].dim, f.simplices[order[j]].value,
                                    std::numeric_limits<double>::infinity()});
    return diagram;
}

bool same_diagram(const persistence_diagram& a, const persistence_diagram& b) {
    auto key = [](const bar& x) { return std::make_tuple(x.dim, x.birth, x.death); };
    std::vector<bar> sa = a.bars, sb = b.bars;
    auto lt = [&key](const bar& x, const bar& y) { return key(x) < key(y); };
    std::sort(sa.begin(), sa.end(), lt);
    std::sort(sb.begin(), sb.end(), lt);
    if (sa.size() != sb.size()) return false;
    for (std::size_t i = 0; i < sa.size(); ++i)
        if (key(sa[i]) != key(sb[i])) return false;
    return true;
}

bool euler_consistent(const filtration& f, const persistence_diagram& d, double t) {
    long long chi_complex = 0;
    for (const simplex& s : f.simplices)
        if (s.value <= t) chi_complex += (s.dim % 2 == 0) ? 1 : -1;

    long long chi_bars = 0;
    for (const bar& b : d.bars)
        if (b.birth <= t && t < b.death) chi_bars += (b.dim % 2 == 0) ? 1 : -1;
    return chi_complex == chi_bars;
}

}  // namespace depthmark::oracle
