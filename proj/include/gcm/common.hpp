#ifndef GCM_COMMON_HPP
#define GCM_COMMON_HPP

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcm {

// Accumulates axiom violations; empty means valid.
struct Report {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    void add(std::string msg) { violations.push_back(std::move(msg)); }
    void merge(const Report& other, const std::string& prefix = "");
    std::string str() const;
};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BoundExceeded : Error {
    using Error::Error;
};
struct DepthInsufficient : Error {
    using Error::Error;
};
struct OracleIncomplete : Error {
    using Error::Error;
};
struct NotSupported : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct SchemaError : Error {
    using Error::Error;
};
struct NotEquivariant : Error {
    int element, point;
    NotEquivariant(int t, int y, const std::string& msg) : Error(msg), element(t), point(y) {}
};
struct NotCoOrbital : Error {
    using Error::Error;
};
struct Mismatch : Error {
    std::string witness;
    Mismatch(const std::string& msg, std::string w) : Error(msg), witness(std::move(w)) {}
};

class UnionFind {
public:
    explicit UnionFind(int n = 0) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int add() {
        parent_.push_back((int)parent_.size());
        return (int)parent_.size() - 1;
    }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    // the smaller root survives, so class roots are least members
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
        return true;
    }
    int size() const { return (int)parent_.size(); }

private:
    std::vector<int> parent_;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep);

// all relabelings that sort points by color and permute within color classes
template <typename F>
void for_each_color_relabeling(const std::vector<int>& color, F&& visit) {
    int n = (int)color.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return color[a] < color[b]; });
    std::vector<std::pair<int, int>> blocks;
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && color[order[j]] == color[order[i]]) ++j;
        blocks.push_back({i, j});
        i = j;
    }
    std::vector<int> slots = order;
    std::function<void(size_t)> rec = [&](size_t b) {
        if (b == blocks.size()) {
            std::vector<int> perm(n);
            for (int k = 0; k < n; ++k) perm[slots[k]] = k;
            visit(perm);
            return;
        }
        auto [lo, hi] = blocks[b];
        std::sort(slots.begin() + lo, slots.begin() + hi);
        do {
            rec(b + 1);
        } while (std::next_permutation(slots.begin() + lo, slots.begin() + hi));
    };
    rec(0);
}

}  // namespace gcm

#endif
