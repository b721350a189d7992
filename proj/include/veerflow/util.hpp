#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vf {

// Tagged error. The tag is a stable identifier from the rule registry
// (see README); messages are free-form.
struct Error : std::runtime_error {
    std::string tag;
    Error(std::string tag_, const std::string& msg)
        : std::runtime_error(tag_ + ": " + msg), tag(std::move(tag_)) {}
};

[[noreturn]] inline void fail(const std::string& tag, const std::string& msg) {
    throw Error(tag, msg);
}

inline void require(bool ok, const std::string& tag, const std::string& msg) {
    if (!ok) fail(tag, msg);
}

// Deterministic splitmix64 generator; all randomized code routes through this
// so runs are reproducible from the seed.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [0, n)
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }
    int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1))); }
    bool coin() { return next() & 1; }
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n = 0) : parent(n) { for (int i = 0; i < n; ++i) parent[i] = i; }
    int find(int a) {
        while (parent[a] != a) { parent[a] = parent[parent[a]]; a = parent[a]; }
        return a;
    }
    bool unite(int a, int b) {
        a = find(a); b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        return true;
    }
    // relabel classes as 0..k-1 in order of first appearance; returns class of each element
    std::vector<int> classes(int* count = nullptr) {
        std::vector<int> cls(parent.size(), -1);
        int k = 0;
        for (size_t i = 0; i < parent.size(); ++i) {
            int r = find(static_cast<int>(i));
            if (cls[r] < 0) cls[r] = k++;
            cls[i] = cls[r];
        }
        if (count) *count = k;
        return cls;
    }
};

// Union-find with a Z/2 weight on each edge, for orientability-style 2-colorings.
struct ParityUnionFind {
    std::vector<int> parent;
    std::vector<uint8_t> par;  // parity relative to parent
    bool consistent = true;
    explicit ParityUnionFind(int n = 0) : parent(n), par(n, 0) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    std::pair<int, int> find(int a) {
        int p = 0;
        while (parent[a] != a) { p ^= par[a]; a = parent[a]; }
        return {a, p};
    }
    // assert parity(a) xor parity(b) == rel
    void relate(int a, int b, int rel) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) {
            if ((pa ^ pb) != rel) consistent = false;
            return;
        }
        if (ra > rb) { std::swap(ra, rb); std::swap(pa, pb); }
        parent[rb] = ra;
        par[rb] = static_cast<uint8_t>(pa ^ pb ^ rel);
    }
};

}  // namespace vf
