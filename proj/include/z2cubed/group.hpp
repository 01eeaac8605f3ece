#pragma once
// The group Z2 x Z2 x Z2: its diagonal action on R^3, orbits and isotropy,
// the Cayley permutation generators on 8 cells, and the torus action
// (permutation + diagonal phase shift) with the isotropy table on T^8.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace z2cubed {

inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double pi = std::numbers::pi;

// Canonical angle representative in [0, 2pi).
inline double wrap_angle(double a) {
    a = std::fmod(a, two_pi);
    if (a < 0) a += two_pi;
    // fmod can return two_pi-eps rounding to two_pi after the add
    if (a >= two_pi) a -= two_pi;
    return a;
}

// Distance on the circle between two angles.
inline double angle_dist(double a, double b) {
    double d = std::fabs(wrap_angle(a) - wrap_angle(b));
    return std::min(d, two_pi - d);
}

// ---------------------------------------------------------------------------
// Group elements and the action on R^3

struct GroupElement {
    int kappa = 1, zeta = 1, xi = 1; // each exactly +1 or -1

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

inline GroupElement group_identity() { return {1, 1, 1}; }

inline GroupElement group_product(const GroupElement& g, const GroupElement& h) {
    return {g.kappa * h.kappa, g.zeta * h.zeta, g.xi * h.xi};
}

inline const std::array<GroupElement, 8>& all_group_elements() {
    static const std::array<GroupElement, 8> elems = [] {
        std::array<GroupElement, 8> e{};
        int idx = 0;
        for (int k : {1, -1})
            for (int z : {1, -1})
                for (int x : {1, -1}) e[idx++] = GroupElement{k, z, x};
        return e;
    }();
    return elems;
}

using Vec3 = std::array<double, 3>;

inline Vec3 act_on_R3(const GroupElement& g, const Vec3& p) {
    return {g.kappa * p[0], g.zeta * p[1], g.xi * p[2]};
}

// Orbit of a point under the 8-element group (exact coordinate comparison).
inline std::vector<Vec3> orbit(const Vec3& p) {
    std::vector<Vec3> pts;
    for (const auto& g : all_group_elements()) {
        Vec3 q = act_on_R3(g, p);
        bool seen = false;
        for (const auto& r : pts)
            if (r == q) { seen = true; break; }
        if (!seen) pts.push_back(q);
    }
    return pts;
}

// Elements fixing p exactly.
inline std::vector<GroupElement> isotropy(const Vec3& p) {
    std::vector<GroupElement> sub;
    for (const auto& g : all_group_elements())
        if (act_on_R3(g, p) == p) sub.push_back(g);
    return sub;
}

// ---------------------------------------------------------------------------
// Cayley permutations on the 8 cells

struct Permutation8 {
    std::array<int, 8> image{0, 1, 2, 3, 4, 5, 6, 7};

    int operator()(int i) const { return image[static_cast<size_t>(i)]; }
    friend bool operator==(const Permutation8&, const Permutation8&) = default;
};

inline Permutation8 perm_identity() { return {}; }

// (s*t)(i) = s(t(i))
inline Permutation8 compose(const Permutation8& s, const Permutation8& t) {
    Permutation8 r;
    for (int i = 0; i < 8; ++i) r.image[i] = s(t(i));
    return r;
}

inline bool is_involution(const Permutation8& s) {
    return compose(s, s) == perm_identity();
}

struct CayleyGenerators {
    Permutation8 a, b, c;
};

// a = (0 3)(1 2)(4 7)(5 6), b = (0 4)(1 5)(2 6)(3 7), c = (0 1)(2 3)(4 5)(6 7)
inline CayleyGenerators cayley_generators() {
    CayleyGenerators g;
    g.a.image = {3, 2, 1, 0, 7, 6, 5, 4};
    g.b.image = {4, 5, 6, 7, 0, 1, 2, 3};
    g.c.image = {1, 0, 3, 2, 5, 4, 7, 6};
    return g;
}

// Named permutations built from the generators, for table verification.
inline Permutation8 perm_from_word(const std::string& word) {
    auto g = cayley_generators();
    Permutation8 r = perm_identity();
    for (char ch : word) {
        if (ch == 'a') r = compose(r, g.a);
        else if (ch == 'b') r = compose(r, g.b);
        else if (ch == 'c') r = compose(r, g.c);
        // '1' or anything else: identity factor
    }
    return r;
}

// ---------------------------------------------------------------------------
// Torus action on T^8: permute coordinates and shift every phase

struct TorusElement {
    Permutation8 perm;
    double shift = 0.0; // radians
};

using Theta8 = std::array<double, 8>;

inline Theta8 torus_action(const TorusElement& g, const Theta8& th) {
    Theta8 out;
    for (int i = 0; i < 8; ++i) out[i] = wrap_angle(th[g.perm(i)] + g.shift);
    return out;
}

// ---------------------------------------------------------------------------
// Isotropy table for the (group x S^1) action on T^8

// One entry of a fixed-point pattern: constant + optional free parameter.
struct PatternEntry {
    double constant = 0.0; // 0 or pi
    int free_index = -1;   // -1: none; otherwise index of the free phase phi_j
};

struct IsotropyRecord {
    std::string name;                     // subgroup label as printed
    std::array<PatternEntry, 8> pattern;  // fixed-point subspace pattern
    int dimension = 0;                    // printed dim
    std::vector<std::pair<std::string, double>> printed_generators; // (word, shift)
    std::vector<std::pair<std::string, double>> computed_generators; // actual stabilizer (non-identity)
    bool pattern_invariant = false;       // pattern fixed by computed stabilizer
    bool dimension_ok = false;            // free-parameter count == printed dim
    bool printed_generators_ok = false;   // every printed generator fixes the pattern
    std::string note;
};

inline Theta8 instantiate_pattern(const std::array<PatternEntry, 8>& pat,
                                  const std::array<double, 3>& phi) {
    Theta8 th;
    for (int i = 0; i < 8; ++i) {
        double v = pat[i].constant;
        if (pat[i].free_index >= 0) v += phi[static_cast<size_t>(pat[i].free_index)];
        th[i] = wrap_angle(v);
    }
    return th;
}

inline int pattern_free_count(const std::array<PatternEntry, 8>& pat) {
    int maxidx = -1;
    for (const auto& e : pat) maxidx = std::max(maxidx, e.free_index);
    return maxidx + 1;
}

inline bool fixes_pattern(const TorusElement& g, const std::array<PatternEntry, 8>& pat,
                          int samples, std::mt19937& rng, double tol = 1e-12) {
    std::uniform_real_distribution<double> uni(0.0, two_pi);
    int nfree = pattern_free_count(pat);
    int reps = nfree == 0 ? 1 : samples * nfree;
    for (int s = 0; s < reps; ++s) {
        std::array<double, 3> phi{0, 0, 0};
        for (int j = 0; j < nfree; ++j) phi[static_cast<size_t>(j)] = uni(rng);
        Theta8 th = instantiate_pattern(pat, phi);
        Theta8 im = torus_action(g, th);
        for (int i = 0; i < 8; ++i)
            if (angle_dist(im[i], th[i]) > tol) return false;
    }
    return true;
}

// The 9 table rows as printed (patterns with the bare-symbol entries read as 0).
inline std::vector<IsotropyRecord> isotropy_table_rows() {
    auto C = [](double c) { return PatternEntry{c, -1}; };
    auto F = [](int j, double off = 0.0) { return PatternEntry{off, j}; };
    std::vector<IsotropyRecord> rows;
    rows.push_back({"Z2xZ2xZ2", {C(0), C(0), C(0), C(0), C(0), C(0), C(0), C(0)}, 0,
                    {{"a", 0}, {"b", 0}, {"c", 0}}, {}, false, false, false, ""});
    rows.push_back({"(Z2xZ2xZ2)^a", {C(0), C(0), C(0), C(0), C(pi), C(pi), C(pi), C(pi)}, 0,
                    {{"a", pi}, {"1", pi}, {"1", pi}}, {}, false, false, false, ""});
    rows.push_back({"(Z2xZ2xZ2)^b", {C(0), C(pi), C(0), C(pi), C(0), C(pi), C(0), C(pi)}, 0,
                    {{"1", pi}, {"b", pi}, {"1", pi}}, {}, false, false, false, ""});
    rows.push_back({"(Z2xZ2xZ2)^c", {C(0), C(0), C(pi), C(pi), C(0), C(0), C(pi), C(pi)}, 0,
                    {{"1", pi}, {"1", pi}, {"c", pi}}, {}, false, false, false, ""});
    rows.push_back({"(Z2xZ2)^a", {C(pi), C(pi), F(0), F(0), C(0), C(0), C(0), C(0)}, 1,
                    {{"a", pi}}, {}, false, false, false, ""});
    rows.push_back({"(Z2xZ2)^b", {C(pi), F(0), C(pi), F(0), C(0), C(0), C(0), C(0)}, 1,
                    {{"b", pi}}, {}, false, false, false, ""});
    rows.push_back({"(Z2xZ2)^c", {F(0), F(0), C(pi), C(pi), C(0), C(0), C(0), C(0)}, 1,
                    {{"ab", pi}}, {}, false, false, false, ""});
    rows.push_back({"Z2", {C(0), F(0), C(0), F(0), F(1), F(2), F(1), F(2)}, 3,
                    {{"a", 0}}, {}, false, false, false, ""});
    rows.push_back({"Z2~", {C(0), F(0), C(pi), F(0, pi), F(1), F(2), F(1, pi), F(2, pi)}, 3,
                    {{"a", pi}}, {}, false, false, false, ""});
    return rows;
}

// For every table row: compute the actual stabilizer of the pattern within
// {8 permutations} x {shift 0, pi}, verify pattern invariance and dimension,
// and check the printed generators for fidelity.
inline std::vector<IsotropyRecord> verify_isotropy_table(int samples_per_param = 100,
                                                         unsigned seed = 12345) {
    std::mt19937 rng(seed);
    const std::array<std::string, 8> words = {"1", "a", "b", "c", "ab", "ac", "bc", "abc"};
    auto rows = isotropy_table_rows();
    for (auto& row : rows) {
        row.computed_generators.clear();
        for (const auto& w : words) {
            for (double shift : {0.0, pi}) {
                if (w == "1" && shift == 0.0) continue; // identity, omit
                TorusElement g{perm_from_word(w), shift};
                if (fixes_pattern(g, row.pattern, samples_per_param, rng))
                    row.computed_generators.emplace_back(w, shift);
            }
        }
        // Pattern invariance: every computed stabilizer element fixes it (by
        // construction), and the stabilizer is nontrivial for every row.
        row.pattern_invariant = !row.computed_generators.empty();
        row.dimension_ok = pattern_free_count(row.pattern) == row.dimension;
        row.printed_generators_ok = true;
        for (const auto& [w, shift] : row.printed_generators) {
            TorusElement g{perm_from_word(w), shift};
            if (!fixes_pattern(g, row.pattern, samples_per_param, rng)) {
                row.printed_generators_ok = false;
                row.note += (row.note.empty() ? "" : "; ") + std::string("printed generator (") +
                            w + "," + (shift == 0.0 ? "0" : "pi") + ") does not fix the pattern";
            }
        }
        if (!row.printed_generators_ok && !row.computed_generators.empty()) {
            row.note += "; pattern is fixed by";
            for (const auto& [w, shift] : row.computed_generators)
                row.note += " (" + w + "," + (shift == 0.0 ? "0" : "pi") + ")";
        }
    }
    return rows;
}

} // namespace z2cubed
